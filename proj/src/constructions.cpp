#include "tangles/constructions.hpp"

#include <map>
#include <random>

namespace tangles {

Model chain_model(int m) {
    if (m < 1) throw input_error("chain model needs m >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < m; ++i) edges.emplace_back(i, i + 1);
    Model model{QuasiOrder::from_edges(m + 1, edges), {}};
    PointSet odds(m + 1);
    for (int i = 0; i <= m; ++i) {
        model.valuation.emplace("p" + std::to_string(i),
                                PointSet(m + 1).with(i));
        if (i % 2 == 1) odds = odds.with(i);
    }
    model.valuation.emplace("q", odds);
    return model;
}

WitnessReport sigma_witness(int m) {
    const Model model = chain_model(m);
    const Formula q = Formula::var("q");

    WitnessReport report;
    report.m = m;
    report.p0_holds = eval(Formula::var("p0"), model).contains(0);

    report.step_holds.reserve(m);
    bool steps_ok = true;
    for (int n = 0; n < m; ++n) {
        const Formula marked = n % 2 == 0 ? q : Formula::negation(q);
        const Formula guard = Formula::box(Formula::implication(
            Formula::var("p" + std::to_string(n)),
            Formula::diamond(Formula::conjunction(
                Formula::var("p" + std::to_string(n + 1)), marked))));
        const bool holds = eval(guard, model).contains(0);
        report.step_holds.push_back(holds);
        steps_ok = steps_ok && holds;
    }

    const Formula split = Formula::tangle({q, Formula::negation(q)});
    report.zero_outside_tangle = !eval(split, model).contains(0);

    report.overall = report.p0_holds && steps_ok && report.zero_outside_tangle;
    return report;
}

Model add_root(const Model& model) {
    const int n = model.order.size();
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < n; ++x) {
        for (int y : model.order.successors(x).members()) {
            edges.emplace_back(x, y);
        }
    }
    for (int y = 0; y < n; ++y) edges.emplace_back(n, y);

    Model out{QuasiOrder::from_edges(n + 1, edges), {}};
    for (const auto& [name, set] : model.valuation) {
        out.valuation.emplace(name, PointSet::of(n + 1, set.members()));
    }
    return out;
}

std::vector<QuasiOrder> enumerate_quasiorders(int n) {
    if (n < 1) throw input_error("enumeration needs at least one point");
    if (n > 5) {
        throw bound_error("quasi-order enumeration is bounded at 5 points");
    }

    std::vector<std::pair<int, int>> slots;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (x != y) slots.emplace_back(x, y);
        }
    }

    std::map<std::vector<std::uint64_t>, QuasiOrder> seen;
    std::vector<std::pair<int, int>> edges;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size());
         ++mask) {
        edges.clear();
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if ((mask >> i) & 1) edges.push_back(slots[i]);
        }
        QuasiOrder q = QuasiOrder::from_edges(n, edges);
        auto key = q.canonical_key();
        seen.emplace(std::move(key), std::move(q));
    }

    std::vector<QuasiOrder> out;
    out.reserve(seen.size());
    for (auto& [key, q] : seen) out.push_back(std::move(q));
    return out;
}

QuasiOrder random_quasiorder(int n, std::uint64_t seed, double edge_density) {
    if (n < 1) throw input_error("random quasi-order needs at least one point");
    if (!(edge_density >= 0.0 && edge_density <= 1.0)) {
        throw input_error("edge density must lie in [0, 1]");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (u < edge_density) edges.emplace_back(x, y);
        }
    }
    return QuasiOrder::from_edges(n, edges);
}

} // namespace tangles
