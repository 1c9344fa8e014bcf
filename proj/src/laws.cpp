#include "tangles/laws.hpp"

#include <random>

namespace tangles {

namespace {

PointSet implies(const PointSet& a, const PointSet& b) {
    return a.complement() | b;
}

PointSet iff(const PointSet& a, const PointSet& b) {
    return (a & b) | (a.complement() & b.complement());
}

LawReport pass(const char* law) { return LawReport{law, true, std::nullopt}; }

LawReport fail(const char* law, LawWitness witness) {
    return LawReport{law, false, std::move(witness)};
}

std::uint64_t fnv1a(const char* text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (; *text != '\0'; ++text) {
        h ^= static_cast<unsigned char>(*text);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::mt19937_64 sweep_rng(const SubsetStrategy& strategy, const char* law) {
    return std::mt19937_64(strategy.seed ^ fnv1a(law));
}

PointSet draw_subset(std::mt19937_64& rng, int n) {
    PointSet s(n);
    for (int x = 0; x < n; x += 64) {
        const std::uint64_t word = rng();
        for (int b = 0; b < 64 && x + b < n; ++b) {
            if ((word >> b) & 1) s = s.with(x + b);
        }
    }
    return s;
}

bool exhaustive(const QuasiOrder& order, const SubsetStrategy& strategy) {
    return order.size() <= strategy.exhaustive_limit;
}

std::vector<PointSet> full_pool(const QuasiOrder& order) {
    return subsets_of(PointSet::full(order.size()));
}

/// Families of one or two distinct pool members, singletons first.
std::vector<std::vector<PointSet>> family_pool(
    const std::vector<PointSet>& pool) {
    std::vector<std::vector<PointSet>> out;
    for (const auto& g : pool) out.push_back({g});
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
            out.push_back({pool[i], pool[j]});
        }
    }
    return out;
}

std::vector<PointSet> draw_family(std::mt19937_64& rng, int n) {
    std::vector<PointSet> sets;
    const int size = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < size; ++i) sets.push_back(draw_subset(rng, n));
    return sets;
}

} // namespace

// ── Report formatting ───────────────────────────────────────────────────

std::string LawWitness::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        out += "order" + (orders.size() > 1 ? std::to_string(i) : "") + ":";
        const QuasiOrder& q = orders[i];
        for (int x = 0; x < q.size(); ++x) {
            for (int y : q.successors(x).members()) {
                if (x != y) out += " " + std::to_string(x) + ">" +
                                   std::to_string(y);
            }
        }
        out += " (" + std::to_string(q.size()) + " points)\n";
    }
    for (std::size_t i = 0; i < families.size(); ++i) {
        out += "gamma" + (families.size() > 1 ? std::to_string(i) : "") + ":";
        for (const auto& g : families[i]) out += " " + g.to_string();
        out += "\n";
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
        out += "set" + (sets.size() > 1 ? std::to_string(i) : "") + ": " +
               sets[i].to_string() + "\n";
    }
    if (!mapping.empty()) {
        out += "map:";
        for (std::size_t x = 0; x < mapping.size(); ++x) {
            out += " " + std::to_string(x) + ">" + std::to_string(mapping[x]);
        }
        out += "\n";
    }
    if (!detail.empty()) out += detail + "\n";
    return out;
}

std::string LawReport::to_string() const {
    std::string out = law + (passed ? " PASS" : " FAIL");
    if (!passed && witness.has_value()) {
        out += "\n" + witness->to_string();
    }
    return out;
}

// ── Point checkers ──────────────────────────────────────────────────────

LawReport check_kuratowski_at(const QuasiOrder& order, const PointSet& a,
                              const PointSet& b) {
    const int n = order.size();
    const PointSet ca = closure(order, a);
    const PointSet cb = closure(order, b);

    const char* broken = nullptr;
    if (closure(order, a | b) != (ca | cb)) broken = "additivity";
    else if (!closure(order, PointSet(n)).is_empty()) broken = "normality";
    else if (!a.is_subset_of(ca)) broken = "inflation";
    else if (closure(order, ca) != ca) broken = "idempotence";

    if (broken == nullptr) return pass("kuratowski");
    return fail("kuratowski",
                LawWitness{{order}, {}, {a, b}, {}, broken});
}

LawReport check_ic_meet(const QuasiOrder& order, const PointSet& a,
                        const PointSet& b) {
    const PointSet lhs = interior(order, a) & closure(order, b);
    if (lhs.is_subset_of(closure(order, a & b))) return pass("ic_meet");
    return fail("ic_meet", LawWitness{{order}, {}, {a, b}, {}, ""});
}

LawReport check_fix(const QuasiOrder& order, const GammaFamily& gamma) {
    const PointSet t = tangle_gfp(order, gamma);
    if (t.is_subset_of(gamma_step(order, gamma, t))) return pass("fix");
    return fail("fix", LawWitness{{order}, {gamma.sets()}, {}, {}, ""});
}

LawReport check_ind(const QuasiOrder& order, const GammaFamily& gamma,
                    const PointSet& a) {
    const PointSet lhs =
        interior(order, implies(a, gamma_step(order, gamma, a))) & a;
    if (lhs.is_subset_of(tangle_gfp(order, gamma))) return pass("ind");
    return fail("ind", LawWitness{{order}, {gamma.sets()}, {a}, {}, ""});
}

LawReport check_closed_tangle(const QuasiOrder& order,
                              const GammaFamily& gamma) {
    const PointSet t = tangle_gfp(order, gamma);
    if (closure(order, t) == t) return pass("closed_tangle");
    return fail("closed_tangle", LawWitness{{order}, {gamma.sets()}, {}, {}, ""});
}

LawReport check_congruence(const QuasiOrder& order,
                           const std::vector<PointSet>& gamma,
                           const std::vector<PointSet>& gamma_prime) {
    if (gamma.size() != gamma_prime.size()) {
        throw input_error("congruence requires families of equal length");
    }
    PointSet guard = PointSet::full(order.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        guard &= interior(order, iff(gamma[i], gamma_prime[i]));
    }
    const PointSet t = tangle_gfp(order, GammaFamily(gamma));
    const PointSet t_prime = tangle_gfp(order, GammaFamily(gamma_prime));
    if (guard.is_subset_of(interior(order, iff(t, t_prime)))) {
        return pass("congruence");
    }
    return fail("congruence",
                LawWitness{{order}, {gamma, gamma_prime}, {}, {}, ""});
}

// ── Sweep drivers ───────────────────────────────────────────────────────

LawReport check_kuratowski(const QuasiOrder& order,
                           const SubsetStrategy& strategy) {
    if (exhaustive(order, strategy)) {
        for (const auto& a : full_pool(order)) {
            for (const auto& b : full_pool(order)) {
                LawReport r = check_kuratowski_at(order, a, b);
                if (!r.passed) return r;
            }
        }
        return pass("kuratowski");
    }
    auto rng = sweep_rng(strategy, "kuratowski");
    for (int i = 0; i < strategy.samples; ++i) {
        LawReport r = check_kuratowski_at(order, draw_subset(rng, order.size()),
                                          draw_subset(rng, order.size()));
        if (!r.passed) return r;
    }
    return pass("kuratowski");
}

LawReport sweep_ic_meet(const QuasiOrder& order,
                        const SubsetStrategy& strategy) {
    if (exhaustive(order, strategy)) {
        for (const auto& a : full_pool(order)) {
            for (const auto& b : full_pool(order)) {
                LawReport r = check_ic_meet(order, a, b);
                if (!r.passed) return r;
            }
        }
        return pass("ic_meet");
    }
    auto rng = sweep_rng(strategy, "ic_meet");
    for (int i = 0; i < strategy.samples; ++i) {
        LawReport r = check_ic_meet(order, draw_subset(rng, order.size()),
                                    draw_subset(rng, order.size()));
        if (!r.passed) return r;
    }
    return pass("ic_meet");
}

LawReport sweep_fix(const QuasiOrder& order, const SubsetStrategy& strategy) {
    if (exhaustive(order, strategy)) {
        for (const auto& fam : family_pool(full_pool(order))) {
            LawReport r = check_fix(order, GammaFamily(fam));
            if (!r.passed) return r;
        }
        return pass("fix");
    }
    auto rng = sweep_rng(strategy, "fix");
    for (int i = 0; i < strategy.samples; ++i) {
        LawReport r =
            check_fix(order, GammaFamily(draw_family(rng, order.size())));
        if (!r.passed) return r;
    }
    return pass("fix");
}

LawReport sweep_ind(const QuasiOrder& order, const SubsetStrategy& strategy) {
    if (exhaustive(order, strategy)) {
        const auto pool = full_pool(order);
        for (const auto& fam : family_pool(pool)) {
            const GammaFamily gamma(fam);
            const PointSet t = tangle_gfp(order, gamma);
            for (const auto& a : pool) {
                const PointSet lhs =
                    interior(order, implies(a, gamma_step(order, gamma, a))) & a;
                if (!lhs.is_subset_of(t)) {
                    return fail("ind",
                                LawWitness{{order}, {gamma.sets()}, {a}, {}, ""});
                }
            }
        }
        return pass("ind");
    }
    auto rng = sweep_rng(strategy, "ind");
    for (int i = 0; i < strategy.samples; ++i) {
        LawReport r = check_ind(order, GammaFamily(draw_family(rng, order.size())),
                                draw_subset(rng, order.size()));
        if (!r.passed) return r;
    }
    return pass("ind");
}

LawReport sweep_closed_tangle(const QuasiOrder& order,
                              const SubsetStrategy& strategy) {
    if (exhaustive(order, strategy)) {
        for (const auto& fam : family_pool(full_pool(order))) {
            LawReport r = check_closed_tangle(order, GammaFamily(fam));
            if (!r.passed) return r;
        }
        return pass("closed_tangle");
    }
    auto rng = sweep_rng(strategy, "closed_tangle");
    for (int i = 0; i < strategy.samples; ++i) {
        LawReport r = check_closed_tangle(
            order, GammaFamily(draw_family(rng, order.size())));
        if (!r.passed) return r;
    }
    return pass("closed_tangle");
}

LawReport sweep_congruence(const QuasiOrder& order,
                           const SubsetStrategy& strategy) {
    if (exhaustive(order, strategy)) {
        // Same instantiation order as calling check_congruence on paired
        // singletons and then paired two-element lists, with the guards
        // and tangles hoisted out of the inner loops.
        const auto pool = full_pool(order);
        const std::size_t p = pool.size();

        std::vector<PointSet> guard1(p * p);
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = 0; j < p; ++j) {
                guard1[i * p + j] = interior(order, iff(pool[i], pool[j]));
            }
        }
        std::vector<PointSet> t1(p);
        for (std::size_t i = 0; i < p; ++i) {
            t1[i] = tangle_gfp(order, GammaFamily({pool[i]}));
        }
        std::vector<PointSet> t2(p * p);
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = i; j < p; ++j) {
                t2[i * p + j] = t2[j * p + i] =
                    tangle_gfp(order, GammaFamily({pool[i], pool[j]}));
            }
        }

        for (std::size_t g = 0; g < p; ++g) {
            for (std::size_t h = 0; h < p; ++h) {
                const PointSet& guard = guard1[g * p + h];
                if (guard.is_empty()) continue;
                if (!guard.is_subset_of(interior(order, iff(t1[g], t1[h])))) {
                    return fail("congruence",
                                LawWitness{{order}, {{pool[g]}, {pool[h]}}, {},
                                           {}, ""});
                }
            }
        }
        for (std::size_t g1 = 0; g1 < p; ++g1) {
            for (std::size_t g2 = 0; g2 < p; ++g2) {
                for (std::size_t h1 = 0; h1 < p; ++h1) {
                    const PointSet& outer = guard1[g1 * p + h1];
                    if (outer.is_empty()) continue;
                    for (std::size_t h2 = 0; h2 < p; ++h2) {
                        const PointSet guard = outer & guard1[g2 * p + h2];
                        if (guard.is_empty()) continue;
                        const PointSet rhs = interior(
                            order, iff(t2[g1 * p + g2], t2[h1 * p + h2]));
                        if (!guard.is_subset_of(rhs)) {
                            return fail(
                                "congruence",
                                LawWitness{{order},
                                           {{pool[g1], pool[g2]},
                                            {pool[h1], pool[h2]}},
                                           {},
                                           {},
                                           ""});
                        }
                    }
                }
            }
        }
        return pass("congruence");
    }
    auto rng = sweep_rng(strategy, "congruence");
    for (int i = 0; i < strategy.samples; ++i) {
        const int len = 1 + static_cast<int>(rng() % 2);
        std::vector<PointSet> g, h;
        for (int k = 0; k < len; ++k) {
            g.push_back(draw_subset(rng, order.size()));
            h.push_back(draw_subset(rng, order.size()));
        }
        LawReport r = check_congruence(order, g, h);
        if (!r.passed) return r;
    }
    return pass("congruence");
}

std::vector<LawReport> check_all_laws(const QuasiOrder& order,
                                      const SubsetStrategy& strategy) {
    return {check_kuratowski(order, strategy), sweep_ic_meet(order, strategy),
            sweep_fix(order, strategy),        sweep_ind(order, strategy),
            sweep_closed_tangle(order, strategy),
            sweep_congruence(order, strategy)};
}

LawReport replay(const LawReport& report) {
    if (!report.witness.has_value()) {
        throw input_error("report for " + report.law + " has no witness");
    }
    const LawWitness& w = *report.witness;
    if (w.orders.empty()) {
        throw input_error("witness for " + report.law + " lacks an order");
    }
    const QuasiOrder& order = w.orders.front();
    if (report.law == "kuratowski") {
        return check_kuratowski_at(order, w.sets.at(0), w.sets.at(1));
    }
    if (report.law == "ic_meet") {
        return check_ic_meet(order, w.sets.at(0), w.sets.at(1));
    }
    if (report.law == "fix") {
        return check_fix(order, GammaFamily(w.families.at(0)));
    }
    if (report.law == "ind") {
        return check_ind(order, GammaFamily(w.families.at(0)), w.sets.at(0));
    }
    if (report.law == "closed_tangle") {
        return check_closed_tangle(order, GammaFamily(w.families.at(0)));
    }
    if (report.law == "congruence") {
        return check_congruence(order, w.families.at(0), w.families.at(1));
    }
    throw input_error("cannot replay unknown law " + report.law);
}

} // namespace tangles
