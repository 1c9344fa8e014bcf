#pragma once

// Equational laws of closure algebras and their tangle expansions, run
// against concrete quasi-orders.
//
// Each law comes in two layers.  The point checkers (check_*) test one
// explicit instantiation and report a witness when it fails.  The sweep
// drivers quantify over instantiations: exhaustively over all subsets
// when the carrier is small, otherwise over a deterministic seeded
// sample.  A failing report can always be fed back through replay() to
// reproduce the failure from its witness alone.
//
// On genuine quasi-orders every law holds; failures only arise from
// relations injected through QuasiOrder::unchecked_from_rows.

#include <optional>
#include <string>
#include <vector>

#include "tangles/kernel.hpp"

namespace tangles {

/// How a sweep driver picks its instantiations.  Carriers of at most
/// `exhaustive_limit` points are swept over every subset in every
/// argument slot; larger carriers get `samples` tuples drawn from a
/// generator seeded with `seed` mixed with the law name.
struct SubsetStrategy {
    int exhaustive_limit = 5;
    int samples = 200;
    std::uint64_t seed = 0;
};

/// The data needed to reproduce one failing instantiation.
struct LawWitness {
    std::vector<QuasiOrder> orders;
    std::vector<std::vector<PointSet>> families;
    std::vector<PointSet> sets;
    std::vector<int> mapping;
    std::string detail;

    std::string to_string() const;
};

struct LawReport {
    std::string law;
    bool passed = false;
    std::optional<LawWitness> witness;

    std::string to_string() const;
};

// ── Point checkers ──────────────────────────────────────────────────────

/// Additivity, normality, inflation and idempotence of closure at one
/// pair of sets.
LawReport check_kuratowski_at(const QuasiOrder& order, const PointSet& a,
                              const PointSet& b);

/// interior(a) & closure(b) <= closure(a & b).
LawReport check_ic_meet(const QuasiOrder& order, const PointSet& a,
                        const PointSet& b);

/// The tangle is a post-fixed point: tangle <= gamma_step(tangle).
LawReport check_fix(const QuasiOrder& order, const GammaFamily& gamma);

/// Induction: interior(a -> gamma_step(a)) & a <= tangle.
LawReport check_ind(const QuasiOrder& order, const GammaFamily& gamma,
                    const PointSet& a);

/// The tangle is closed.
LawReport check_closed_tangle(const QuasiOrder& order,
                              const GammaFamily& gamma);

/// Congruence: families that agree everywhere locally have tangles that
/// agree in the same sense.  `gamma` and `gamma_prime` are paired by
/// position and must have equal nonzero lengths.
LawReport check_congruence(const QuasiOrder& order,
                           const std::vector<PointSet>& gamma,
                           const std::vector<PointSet>& gamma_prime);

// ── Sweep drivers ───────────────────────────────────────────────────────

LawReport check_kuratowski(const QuasiOrder& order,
                           const SubsetStrategy& strategy = {});
LawReport sweep_ic_meet(const QuasiOrder& order,
                        const SubsetStrategy& strategy = {});
LawReport sweep_fix(const QuasiOrder& order,
                    const SubsetStrategy& strategy = {});
LawReport sweep_ind(const QuasiOrder& order,
                    const SubsetStrategy& strategy = {});
LawReport sweep_closed_tangle(const QuasiOrder& order,
                              const SubsetStrategy& strategy = {});
LawReport sweep_congruence(const QuasiOrder& order,
                           const SubsetStrategy& strategy = {});

/// All six laws, in the fixed order kuratowski, ic_meet, fix, ind,
/// closed_tangle, congruence.
std::vector<LawReport> check_all_laws(const QuasiOrder& order,
                                      const SubsetStrategy& strategy = {});

/// Re-runs the failed instantiation recorded in a report's witness.
/// Throws input_error when the report has no witness or names an
/// unknown law.
LawReport replay(const LawReport& report);

} // namespace tangles
