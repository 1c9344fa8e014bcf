// Release gate for the toolkit.  Eleven end-to-end checks, each printing
// one PASS/FAIL line with the instance counts it covered.  The process
// exits 0 only if every check passes, so CI can hang a red light on it.

#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tangles/algebra.hpp"
#include "tangles/constructions.hpp"
#include "tangles/kernel.hpp"
#include "tangles/laws.hpp"
#include "tangles/logic.hpp"
#include "tangles/model_io.hpp"

using namespace tangles;

namespace {

// ---------------------------------------------------------------- helpers

QuasiOrder random_order(std::mt19937_64& rng, int n, double density) {
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (x != y && (rng() >> 11) * 0x1.0p-53 < density) {
                edges.emplace_back(x, y);
            }
        }
    }
    return QuasiOrder::from_edges(n, edges);
}

/// Every family of one or two distinct subsets of an n-point carrier.
std::vector<GammaFamily> small_families(int n) {
    const std::vector<PointSet> subs = subsets_of(PointSet::full(n));
    std::vector<GammaFamily> out;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        out.push_back(GammaFamily({subs[i]}));
        for (std::size_t j = i + 1; j < subs.size(); ++j) {
            out.push_back(GammaFamily({subs[i], subs[j]}));
        }
    }
    return out;
}

/// Collapse every cluster of `order` onto one point.
BoundedMorphism cluster_quotient(const QuasiOrder& order) {
    const std::vector<Cluster> cs = clusters(order);
    std::vector<int> to_cluster(static_cast<std::size_t>(order.size()), -1);
    for (std::size_t c = 0; c < cs.size(); ++c) {
        for (int x : cs[c].members.members()) {
            to_cluster[static_cast<std::size_t>(x)] = static_cast<int>(c);
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t a = 0; a < cs.size(); ++a) {
        for (std::size_t b = 0; b < cs.size(); ++b) {
            if (a != b && order.reaches(cs[a].members.least(),
                                        cs[b].members.least())) {
                edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
            }
        }
    }
    return BoundedMorphism{
        order, QuasiOrder::from_edges(static_cast<int>(cs.size()), edges),
        to_cluster};
}

/// Map the chain 0..len-1 onto the chain 0..cut-1 by clamping.
BoundedMorphism chain_collapse(int len, int cut) {
    std::vector<std::pair<int, int>> long_edges;
    std::vector<std::pair<int, int>> short_edges;
    for (int i = 0; i + 1 < len; ++i) long_edges.emplace_back(i, i + 1);
    for (int i = 0; i + 1 < cut; ++i) short_edges.emplace_back(i, i + 1);
    std::vector<int> map;
    for (int i = 0; i < len; ++i) map.push_back(std::min(i, cut - 1));
    return BoundedMorphism{QuasiOrder::from_edges(len, long_edges),
                           QuasiOrder::from_edges(cut, short_edges),
                           std::move(map)};
}

Formula random_formula(std::mt19937_64& rng, int depth) {
    static const char* names[] = {"p", "q", "r", "s"};
    const int choice =
        depth == 0 ? static_cast<int>(rng() % 3) : static_cast<int>(rng() % 11);
    switch (choice) {
        case 0: return Formula::bot();
        case 1: return Formula::top();
        case 2: return Formula::var(names[rng() % 4]);
        case 3: return Formula::negation(random_formula(rng, depth - 1));
        case 4:
            return Formula::conjunction(random_formula(rng, depth - 1),
                                        random_formula(rng, depth - 1));
        case 5:
            return Formula::disjunction(random_formula(rng, depth - 1),
                                        random_formula(rng, depth - 1));
        case 6:
            return Formula::implication(random_formula(rng, depth - 1),
                                        random_formula(rng, depth - 1));
        case 7:
            return Formula::equivalence(random_formula(rng, depth - 1),
                                        random_formula(rng, depth - 1));
        case 8: return Formula::diamond(random_formula(rng, depth - 1));
        case 9: return Formula::box(random_formula(rng, depth - 1));
        default: {
            std::vector<Formula> members;
            const int count = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < count; ++i) {
                members.push_back(random_formula(rng, depth - 1));
            }
            return Formula::tangle(std::move(members));
        }
    }
}

/// True when `f` evaluates to the full carrier on every model with at most
/// `max_points` points, enumerating frames and valuations directly.
bool valid_everywhere(const Formula& f, int max_points) {
    const std::vector<std::string> vars = f.variables();
    for (int n = 1; n <= max_points; ++n) {
        for (const QuasiOrder& ord : enumerate_quasiorders(n)) {
            const std::uint64_t combos = std::uint64_t{1}
                                         << (static_cast<std::uint64_t>(n) *
                                             vars.size());
            for (std::uint64_t combo = 0; combo < combos; ++combo) {
                Model m{ord, {}};
                for (std::size_t v = 0; v < vars.size(); ++v) {
                    const std::uint64_t shift =
                        static_cast<std::uint64_t>(n) * (vars.size() - 1 - v);
                    m.valuation.emplace(
                        vars[v],
                        PointSet::from_mask(
                            n, (combo >> shift) &
                                   ((std::uint64_t{1} << n) - 1)));
                }
                if (!is_valid_in(f, m)) return false;
            }
        }
    }
    return true;
}

/// All ways to partition points 0..n-1, as block lists.
std::vector<std::vector<PointSet>> all_partitions(int n) {
    std::vector<std::vector<PointSet>> out;
    std::vector<int> label(static_cast<std::size_t>(n), 0);
    const std::function<void(int, int)> go = [&](int at, int used) {
        if (at == n) {
            std::vector<PointSet> blocks(static_cast<std::size_t>(used),
                                         PointSet(n));
            for (int i = 0; i < n; ++i) {
                auto& block = blocks[static_cast<std::size_t>(
                    label[static_cast<std::size_t>(i)])];
                block = block.with(i);
            }
            out.push_back(std::move(blocks));
            return;
        }
        for (int g = 0; g <= used && g < n; ++g) {
            label[static_cast<std::size_t>(at)] = g;
            go(at + 1, std::max(used, g + 1));
        }
    };
    go(0, 0);
    return out;
}

// ------------------------------------------------------------- the checks

bool routes_agree_and_closed(std::string& note, bool check_closure) {
    long families = 0;
    long mismatches = 0;
    for (int n = 1; n <= 4; ++n) {
        const std::vector<GammaFamily> fams = small_families(n);
        for (const QuasiOrder& ord : enumerate_quasiorders(n)) {
            for (const GammaFamily& gamma : fams) {
                ++families;
                const PointSet a = tangle_gfp(ord, gamma);
                if (check_closure) {
                    if (!(closure(ord, a) == a)) ++mismatches;
                } else {
                    const PointSet b = tangle_scc(ord, gamma);
                    const PointSet c = tangle_oracle(ord, gamma);
                    if (!(a == b && b == c)) ++mismatches;
                }
            }
        }
    }
    note = std::to_string(families) + " order/family instances, " +
           std::to_string(mismatches) + " mismatches";
    return mismatches == 0;
}

bool law_sweeps(std::string& note) {
    long failures = 0;
    long swept = 0;
    for (int n = 1; n <= 3; ++n) {
        for (const QuasiOrder& ord : enumerate_quasiorders(n)) {
            ++swept;
            for (const LawReport& r : check_all_laws(ord, SubsetStrategy{})) {
                if (!r.passed) ++failures;
            }
        }
    }
    std::mt19937_64 rng(11111);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const double density = 0.1 + (rng() >> 11) * 0x1.0p-53 * 0.5;
        const QuasiOrder ord = random_order(rng, n, density);
        SubsetStrategy strategy;
        strategy.samples = 60;
        strategy.seed = rng();
        ++swept;
        for (const LawReport& r : check_all_laws(ord, strategy)) {
            if (!r.passed) ++failures;
        }
    }
    note = std::to_string(swept) + " relations swept, " +
           std::to_string(failures) + " law failures";
    return failures == 0;
}

bool duality_round_trip(std::string& note) {
    long orders = 0;
    long broken = 0;
    for (int n = 1; n <= 4; ++n) {
        for (const QuasiOrder& ord : enumerate_quasiorders(n)) {
            ++orders;
            if (!(table_to_order(order_to_table(ord)) == ord)) ++broken;
        }
    }
    note = std::to_string(orders) + " orders, " + std::to_string(broken) +
           " broken round-trips";
    return broken == 0;
}

bool connectedness_and_roots(std::string& note) {
    long checked = 0;
    long bad = 0;
    for (int n = 1; n <= 4; ++n) {
        for (const QuasiOrder& ord : enumerate_quasiorders(n)) {
            ++checked;
            if (is_well_connected(ord) != is_point_generated(ord)) ++bad;
        }
    }
    long tangles = 0;
    for (int n = 1; n <= 3; ++n) {
        for (const QuasiOrder& ord : enumerate_quasiorders(n)) {
            const Model rooted = add_root(Model{ord, {}});
            if (point_generator(rooted.order) != n) ++bad;

            std::vector<int> olds;
            for (int i = 0; i < n; ++i) olds.push_back(i);
            const PointSet old_carrier = PointSet::of(n + 1, olds);
            if (!is_open(rooted.order, old_carrier)) ++bad;

            const RelativizedModel back = relativize(rooted, old_carrier);
            if (!(back.model.order == ord)) ++bad;
            for (const GammaFamily& gamma : small_families(n)) {
                ++tangles;
                std::vector<PointSet> lifted;
                for (const PointSet& g : gamma.sets()) {
                    lifted.push_back(PointSet::of(n + 1, g.members()));
                }
                const PointSet above =
                    tangle_gfp(rooted.order, GammaFamily(lifted));
                PointSet cut(n);
                for (int i = 0; i < n; ++i) {
                    if (above.contains(i)) cut = cut.with(i);
                }
                if (!(tangle_gfp(ord, gamma) == cut)) ++bad;
                if (!(tangle_gfp(back.model.order, gamma) ==
                      tangle_gfp(ord, gamma)))
                    ++bad;
            }
        }
    }
    note = std::to_string(checked) + " equivalences, " +
           std::to_string(tangles) + " root/cut tangles, " +
           std::to_string(bad) + " defects";
    return bad == 0;
}

bool morphisms_preserve_tangles(std::string& note) {
    std::mt19937_64 rng(22222);
    long morphisms = 0;
    long families = 0;
    long bad = 0;
    while (morphisms < 500) {
        BoundedMorphism m =
            (morphisms % 2 == 0)
                ? cluster_quotient(random_order(
                      rng, 2 + static_cast<int>(rng() % 5),
                      0.2 + (rng() >> 11) * 0x1.0p-53 * 0.4))
                : chain_collapse(2 + static_cast<int>(rng() % 5),
                                 1 + static_cast<int>(rng() % 2));
        if (!check_bounded_morphism(m).passed) {
            ++bad;
            ++morphisms;
            continue;
        }
        ++morphisms;
        const int k = m.codomain.size();
        std::vector<PointSet> pool;
        for (int i = 0; i < 6; ++i) {
            pool.push_back(PointSet::from_mask(k, rng()));
        }
        std::vector<GammaFamily> fams;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            fams.push_back(GammaFamily({pool[i]}));
            for (std::size_t j = i + 1; j < pool.size(); ++j) {
                fams.push_back(GammaFamily({pool[i], pool[j]}));
            }
        }
        for (const GammaFamily& gamma : fams) {
            ++families;
            if (!check_hom_preserves_tangle(m, gamma).passed) ++bad;
        }
    }
    note = std::to_string(morphisms) + " morphisms x " +
           std::to_string(families) + " families, " + std::to_string(bad) +
           " defects";
    return bad == 0;
}

bool relativized_laws(std::string& note) {
    long cuts = 0;
    long bad = 0;
    for (int n = 1; n <= 4; ++n) {
        for (const QuasiOrder& ord : enumerate_quasiorders(n)) {
            for (const PointSet& alpha : subsets_of(PointSet::full(n))) {
                if (!is_open(ord, alpha)) continue;
                const RelativizedModel cut =
                    relativize(Model{ord, {}}, alpha);
                if (cut.model.order.size() == 0) continue;
                ++cuts;
                if (!sweep_fix(cut.model.order, SubsetStrategy{}).passed) {
                    ++bad;
                }
                if (!sweep_ind(cut.model.order, SubsetStrategy{}).passed) {
                    ++bad;
                }
            }
        }
    }
    note = std::to_string(cuts) + " open cuts, " + std::to_string(bad) +
           " law failures";
    return bad == 0;
}

bool chain_witnesses(std::string& note) {
    long bad = 0;
    const Formula both = Formula::tangle(
        {Formula::var("q"), Formula::negation(Formula::var("q"))});
    for (int m = 1; m <= 16; ++m) {
        if (!sigma_witness(m).overall) ++bad;
        if (!eval(both, chain_model(m)).is_empty()) ++bad;
    }
    note = "16 chain lengths, " + std::to_string(bad) + " defects";
    return bad == 0;
}

bool axiom_soundness(std::string& note) {
    const std::vector<Formula> pool = [] {
        std::vector<Formula> fs;
        const Formula p = Formula::var("p");
        const Formula q = Formula::var("q");
        const Formula r = Formula::var("r");
        fs.push_back(p);
        fs.push_back(q);
        fs.push_back(r);
        fs.push_back(Formula::bot());
        fs.push_back(Formula::top());
        fs.push_back(Formula::negation(p));
        fs.push_back(Formula::conjunction(p, q));
        fs.push_back(Formula::disjunction(p, q));
        fs.push_back(Formula::implication(p, q));
        fs.push_back(Formula::equivalence(p, q));
        fs.push_back(Formula::diamond(p));
        fs.push_back(Formula::box(p));
        fs.push_back(Formula::tangle({p}));
        fs.push_back(Formula::tangle({p, q}));
        fs.push_back(Formula::tangle({q, Formula::negation(q)}));
        fs.push_back(Formula::implication(Formula::box(p), p));
        fs.push_back(Formula::diamond(Formula::conjunction(p, q)));
        fs.push_back(Formula::box(Formula::disjunction(p, q)));
        fs.push_back(Formula::tangle({Formula::diamond(p), q}));
        fs.push_back(Formula::negation(Formula::diamond(p)));
        return fs;
    }();

    std::vector<Formula> instances;
    for (const Formula& a : pool) {
        instances.push_back(axiom_t(a));
        instances.push_back(axiom_four(a));
        instances.push_back(axiom_fix({a}, a));
        for (const Formula& b : pool) {
            instances.push_back(axiom_k(a, b));
            instances.push_back(axiom_ind({a}, b));
        }
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
            instances.push_back(axiom_fix({pool[i], pool[j]}, pool[i]));
            instances.push_back(axiom_fix({pool[i], pool[j]}, pool[j]));
            for (std::size_t f = 0; f < 5; ++f) {
                instances.push_back(axiom_ind({pool[i], pool[j]}, pool[f]));
            }
        }
    }

    long bad = 0;
    for (const Formula& inst : instances) {
        if (!valid_everywhere(inst, 3)) ++bad;
        if (countermodel_search(inst, 3).has_value()) ++bad;
    }

    // The non-theorem: found, two points, and the hit replays.
    const Formula non_theorem = parse_formula("<>p -> []p");
    const auto hit = countermodel_search(non_theorem, 3);
    if (!hit) {
        ++bad;
    } else {
        if (hit->model.order.size() != 2) ++bad;
        if (is_valid_in(non_theorem, hit->model)) ++bad;
        if (eval(non_theorem, hit->model).contains(hit->falsified_at)) ++bad;
        const Model reloaded = parse_model_text(model_to_text(hit->model));
        if (eval(non_theorem, reloaded).contains(hit->falsified_at)) ++bad;
        const auto second = countermodel_search(non_theorem, 3);
        if (!second || !(second->model.order == hit->model.order) ||
            second->falsified_at != hit->falsified_at) {
            ++bad;
        }
    }

    note = std::to_string(instances.size()) + " axiom instances, " +
           std::to_string(bad) + " defects";
    return bad == 0;
}

bool closure_extension(std::string& note) {
    long views = 0;
    long bad = 0;
    for (int n = 1; n <= 4; ++n) {
        const std::vector<std::vector<PointSet>> partitions =
            all_partitions(n);
        const std::vector<PointSet> subs = subsets_of(PointSet::full(n));
        for (const QuasiOrder& ord : enumerate_quasiorders(n)) {
            for (const std::vector<PointSet>& blocks : partitions) {
                try {
                    const SubalgebraView v =
                        SubalgebraView::from_order(ord, blocks);
                    ++views;
                    for (const PointSet& e : v.elements()) {
                        if (!(upper_macneille(v, e) ==
                              v.closure_on_elements(e)))
                            ++bad;
                    }
                    if (!upper_macneille(v, PointSet(n)).is_empty()) ++bad;
                    for (const PointSet& b : subs) {
                        const PointSet cb = upper_macneille(v, b);
                        if (!b.is_subset_of(cb)) ++bad;
                        if (!(upper_macneille(v, cb) == cb)) ++bad;
                        for (const PointSet& c : subs) {
                            if (!(upper_macneille(v, b | c) ==
                                  (cb | upper_macneille(v, c))))
                                ++bad;
                        }
                    }
                } catch (const representation_error&) {
                    // This partition's blocks do not close up under the
                    // ambient closure; it generates no view to test.
                }
            }
        }
    }
    note = std::to_string(views) + " closed views, " + std::to_string(bad) +
           " operator defects";
    return bad == 0;
}

bool parser_round_trip(std::string& note) {
    std::mt19937_64 rng(33333);
    long bad = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const Formula f = random_formula(rng, 1 + static_cast<int>(rng() % 6));
        const std::string text = f.to_string();
        try {
            if (!(parse_formula(text) == f)) ++bad;
        } catch (const parse_error&) {
            ++bad;
        }
    }
    note = "10000 formulas, " + std::to_string(bad) + " round-trip breaks";
    return bad == 0;
}

} // namespace

int main() {
    struct Check {
        const char* name;
        std::function<bool(std::string&)> go;
    };
    const std::vector<Check> checks = {
        {"tangle routes agree (gfp = scc = oracle)",
         [](std::string& s) { return routes_agree_and_closed(s, false); }},
        {"law sweeps hold exhaustively and at random",
         [](std::string& s) { return law_sweeps(s); }},
        {"tangles are closed sets",
         [](std::string& s) { return routes_agree_and_closed(s, true); }},
        {"closure tables and orders are inverse views",
         [](std::string& s) { return duality_round_trip(s); }},
        {"well-connected = point-generated; roots relativize back",
         [](std::string& s) { return connectedness_and_roots(s); }},
        {"bounded morphisms preserve tangles",
         [](std::string& s) { return morphisms_preserve_tangles(s); }},
        {"open cuts satisfy the tangle laws",
         [](std::string& s) { return relativized_laws(s); }},
        {"alternation witnesses hold along chains",
         [](std::string& s) { return chain_witnesses(s); }},
        {"axiom instances hold; countermodel search is honest",
         [](std::string& s) { return axiom_soundness(s); }},
        {"the upper extension is a closure operator",
         [](std::string& s) { return closure_extension(s); }},
        {"parse and print invert each other",
         [](std::string& s) { return parser_round_trip(s); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        std::string detail;
        const bool ok = checks[i].go(detail);
        if (!ok) ++failed;
        std::printf("[%2zu/11] %-55s %s  (%s)\n", i + 1, checks[i].name,
                    ok ? "PASS" : "FAIL", detail.c_str());
        std::fflush(stdout);
    }
    if (failed > 0) {
        std::printf("%d of 11 checks failed\n", failed);
        return 1;
    }
    std::printf("all 11 checks passed\n");
    return 0;
}
