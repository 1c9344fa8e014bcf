#pragma once

// Ready-made models and generators: labeled chains with an alternating
// marking, root extensions, and exhaustive or seeded enumeration of
// quasi-orders.

#include <cstdint>
#include <vector>

#include "tangles/logic.hpp"

namespace tangles {

/// The chain 0 < 1 < ... < m (so closure looks downward), with named
/// subsets p0..pm for the singletons and q for the odd positions.
/// Requires m >= 1.
Model chain_model(int m);

struct WitnessReport {
    int m = 0;
    bool p0_holds = false;               // 0 lies in p0
    std::vector<bool> step_holds;        // 0 satisfies each guard a_n, n < m
    bool zero_outside_tangle = false;    // 0 avoids the tangle of {q, ~q}
    bool overall = false;
};

/// Evaluates, on chain_model(m), the guards
///
///   a_n = [](p_n -> <>(p_{n+1} & q))     for even n
///   a_n = [](p_n -> <>(p_{n+1} & ~q))    for odd n
///
/// and reports whether point 0 satisfies p0 and every guard while
/// staying outside the tangle of {q, ~q}.  The guards thread the point
/// 0 along the whole chain, yet no finite tangle ever captures it.
WitnessReport sigma_witness(int m);

/// Adds a fresh root that reaches every point.  Old points keep their
/// edges and valuation memberships; the root joins no valuation set.
Model add_root(const Model& model);

/// Every reflexive transitive relation on n labeled points, each
/// exactly once, ordered by packed relation matrix.  The counts for
/// n = 1..5 are 1, 4, 29, 355, 6942; larger n is refused.
std::vector<QuasiOrder> enumerate_quasiorders(int n);

/// Deterministic seeded generator.  Each ordered pair (x, y) with
/// x != y, visited row-major, receives an edge when the next draw from
/// a mt19937_64 seeded with `seed` (scaled to [0, 1) using the top 53
/// bits) falls below edge_density; the relation is then closed
/// reflexively and transitively.  Density 0 gives the identity,
/// density 1 the single all-points cluster.
QuasiOrder random_quasiorder(int n, std::uint64_t seed, double edge_density);

} // namespace tangles
