#pragma once

// Finite point sets, quasi-orders, and the tangled closure operators
// built on them.
//
// A quasi-order (S, R) with R reflexive and transitive induces a closure
// operator on subsets of S:
//
//     closure(a) = { x : x R y for some y in a }
//
// (the Alexandroff closure; open sets are exactly the R-up-sets).  For a
// nonempty family of subsets Gamma, the tangled closure is the largest
// set a with  a <= closure(g & a)  for every g in Gamma.  Three routes
// compute it here: greatest-fixed-point iteration, a cluster (strongly
// connected component) analysis, and a brute-force enumeration kept as a
// cross-check for small carriers.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "tangles/errors.hpp"

namespace tangles {

// ── PointSet ────────────────────────────────────────────────────────────

/// A subset of a fixed finite carrier {0, ..., n-1}, stored as a bit
/// vector.  All Boolean operations require both operands to share the
/// carrier size and throw input_error otherwise.
class PointSet {
public:
    PointSet() = default;

    /// Empty set over a carrier of `carrier_size` points.
    explicit PointSet(int carrier_size);

    PointSet(int carrier_size, std::initializer_list<int> members);

    static PointSet empty(int carrier_size) { return PointSet(carrier_size); }
    static PointSet full(int carrier_size);
    static PointSet of(int carrier_size, std::span<const int> members);

    /// Builds the subset of {0,...,n-1} whose membership bits are the low
    /// n bits of `mask`.  Requires carrier_size <= 64.
    static PointSet from_mask(int carrier_size, std::uint64_t mask);

    int carrier_size() const { return n_; }
    bool contains(int x) const;
    int count() const;
    bool is_empty() const;
    std::vector<int> members() const;

    /// Lowest member, or -1 when empty.
    int least() const;

    bool is_subset_of(const PointSet& other) const;
    bool intersects(const PointSet& other) const;

    PointSet operator|(const PointSet& other) const;
    PointSet operator&(const PointSet& other) const;
    PointSet operator-(const PointSet& other) const;
    PointSet complement() const;

    PointSet& operator|=(const PointSet& other);
    PointSet& operator&=(const PointSet& other);

    /// Copy with one extra member / one member removed.
    PointSet with(int x) const;
    PointSet without(int x) const;

    bool operator==(const PointSet& other) const = default;

    /// Total order used wherever a canonical arrangement of sets is
    /// needed (gamma normalization, deterministic iteration).
    int compare(const PointSet& other) const;
    bool operator<(const PointSet& other) const { return compare(other) < 0; }

    /// "{0, 2, 5}" with members ascending; "{}" when empty.
    std::string to_string() const;

private:
    void check_same_carrier(const PointSet& other) const;

    // One word covers carriers up to 64 points without touching the
    // heap; larger carriers spill into allocated storage.
    using Words = boost::container::small_vector<std::uint64_t, 1>;

    int n_ = 0;
    Words words_;
};

/// All subsets of `base`, in mask order over its member list.  Refuses
/// bases with more than `max_bits` members (the result has 2^|base|
/// entries).
std::vector<PointSet> subsets_of(const PointSet& base, int max_bits = 20);

// ── QuasiOrder ──────────────────────────────────────────────────────────

/// A reflexive, transitive relation on {0, ..., n-1}.  Construction from
/// an edge list takes the reflexive-transitive closure, so every value
/// built that way satisfies the invariants by construction.
class QuasiOrder {
public:
    /// Identity relation (the discrete quasi-order).
    explicit QuasiOrder(int size);

    static QuasiOrder from_edges(int size,
                                 std::span<const std::pair<int, int>> edges);
    static QuasiOrder from_edges(
        int size, std::initializer_list<std::pair<int, int>> edges);

    /// Adopts `rows` verbatim without closing them.  Exists so the law
    /// checkers can be pointed at a deliberately broken relation in
    /// diagnostics and tests; everything else should construct through
    /// the closing constructors.
    static QuasiOrder unchecked_from_rows(std::vector<PointSet> rows);

    int size() const { return static_cast<int>(rows_.size()); }
    bool reaches(int x, int y) const;

    /// R(x) = { y : x R y } as a set over the carrier.
    const PointSet& successors(int x) const;

    bool is_reflexive_transitive() const;

    bool operator==(const QuasiOrder& other) const = default;

    /// Relation bits packed row-major; lexicographic comparison of keys
    /// gives the canonical enumeration order for same-size orders.
    std::vector<std::uint64_t> canonical_key() const;

private:
    QuasiOrder() = default;

    std::vector<PointSet> rows_;
};

// ── Clusters ────────────────────────────────────────────────────────────

/// A maximal set of mutually reachable points.
struct Cluster {
    PointSet members;

    bool operator==(const Cluster& other) const = default;
};

/// Decomposes the carrier into clusters, ordered by least member.
std::vector<Cluster> clusters(const QuasiOrder& order);

// ── GammaFamily ─────────────────────────────────────────────────────────

/// A nonempty family of subsets of a common carrier, kept sorted and
/// deduplicated so that equal families compare equal.
class GammaFamily {
public:
    explicit GammaFamily(std::vector<PointSet> sets);
    GammaFamily(std::initializer_list<PointSet> sets);

    const std::vector<PointSet>& sets() const { return sets_; }
    int carrier_size() const { return sets_.front().carrier_size(); }

    bool operator==(const GammaFamily& other) const = default;

private:
    std::vector<PointSet> sets_;
};

// ── Operators ───────────────────────────────────────────────────────────

/// closure(a) = { x : successors(x) meets a }.
PointSet closure(const QuasiOrder& order, const PointSet& a);

/// interior(a) = complement of closure of complement.
PointSet interior(const QuasiOrder& order, const PointSet& a);

bool is_closed(const QuasiOrder& order, const PointSet& a);
bool is_open(const QuasiOrder& order, const PointSet& a);

/// One step of the tangle map: intersection over g in gamma of
/// closure(g & a).
PointSet gamma_step(const QuasiOrder& order, const GammaFamily& gamma,
                    const PointSet& a);

/// Greatest fixed point of gamma_step, found by iterating down from the
/// full carrier.  This is the reference algorithm.
PointSet tangle_gfp(const QuasiOrder& order, const GammaFamily& gamma);

/// Same value through cluster analysis: the set of points that can reach
/// a cluster meeting every member of gamma.
PointSet tangle_scc(const QuasiOrder& order, const GammaFamily& gamma);

/// Brute force: union of all post-fixed points, found by enumerating
/// every subset of the carrier.  Only for small carriers; throws
/// bound_error when order.size() > max_points.
PointSet tangle_oracle(const QuasiOrder& order, const GammaFamily& gamma,
                       int max_points = 12);

} // namespace tangles
