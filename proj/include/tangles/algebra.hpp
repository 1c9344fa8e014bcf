#pragma once

#include <optional>
#include <vector>

#include "tangles/kernel.hpp"
#include "tangles/laws.hpp"
#include "tangles/logic.hpp"

namespace tangles {

/// A finite closure algebra given by what closure does to each atom.
/// atom_closure[x] records the closure of the singleton {x}; by additivity
/// that determines closure on every subset.
struct ClosureTable {
    int atom_count = 0;
    std::vector<PointSet> atom_closure;

    /// Throws representation_error unless the table is well shaped, each
    /// atom lies in its own closure, and membership y in the closure of x
    /// drags the whole closure of y along (the axioms that make the table a
    /// closure operator rather than arbitrary data).
    void validate() const;
};

/// Reads the table as a reachability relation: x reaches y exactly when x
/// lies in the closure of {y}.  Validates the table first.  The result is
/// reflexive and transitive precisely because the table axioms hold, and
/// closure over the result agrees with the table on every subset.
QuasiOrder table_to_order(const ClosureTable& table);

/// Inverse direction: tabulate the closure of each singleton.
ClosureTable order_to_table(const QuasiOrder& order);

/// Least point whose successors cover the whole carrier, if one exists.
std::optional<int> point_generator(const QuasiOrder& order);
bool is_point_generated(const QuasiOrder& order);

/// No two nonempty sets have disjoint closures.  By additivity it is enough
/// to look at singletons pairwise.  On finite carriers this coincides with
/// being point-generated.
bool is_well_connected(const QuasiOrder& order);

/// A model cut down to an open subset of another model's carrier, with the
/// surviving points renumbered 0..k-1.  parent_index maps each new point
/// back to the point it came from.
struct RelativizedModel {
    Model model;
    std::vector<int> parent_index;
};

/// Restricts a model to the open set alpha.  Closure and tangles inside the
/// restriction agree with "intersect alpha with the ambient value", which is
/// what makes open sets the right cutting surfaces; the constructor verifies
/// the closure half of that claim atom by atom.  alpha may be empty.
/// Throws precondition_error when alpha is not open.
RelativizedModel relativize(const Model& m, const PointSet& alpha);

/// A point map between two finite frames.  map[x] is the codomain point
/// assigned to domain point x.  When the forth and back conditions hold,
/// taking preimages of codomain subsets is a homomorphism of the associated
/// closure algebras (and, on finite carriers, preserves tangles too).
struct BoundedMorphism {
    QuasiOrder domain;
    QuasiOrder codomain;
    std::vector<int> map;
};

/// The induced algebra map: all domain points sent into `codomain_set`.
PointSet preimage(const BoundedMorphism& m, const PointSet& codomain_set);

/// Checks totality/surjectivity plus the forth condition (edges map to
/// edges) and the back condition (every edge out of an image point lifts).
/// Malformed shapes (wrong map length, out-of-range entries) are input
/// errors; genuine condition failures come back as a failed report.
LawReport check_bounded_morphism(const BoundedMorphism& m);

/// For a valid bounded morphism, the preimage of the codomain tangle of
/// `gamma` must equal the domain tangle of the pointwise preimages.  The
/// family lives over the codomain.  Throws precondition_error when the
/// morphism itself does not check out.
LawReport check_hom_preserves_tangle(const BoundedMorphism& m,
                                     const GammaFamily& gamma);

/// A Boolean subalgebra of the powerset of a finite carrier, generated by a
/// partition into blocks, carrying its own closure defined on elements
/// (= unions of blocks).  Closure data is stored per block; additivity
/// extends it to all elements.
class SubalgebraView {
public:
    /// Validates that the blocks partition the carrier, every block closure
    /// is again an element, blocks sit inside their closures, and closing
    /// twice adds nothing.  Violations throw representation_error.
    SubalgebraView(int carrier_size, std::vector<PointSet> blocks,
                   std::vector<PointSet> block_closures);

    /// Builds the view whose closure is the ambient Alexandroff closure of
    /// the order.  Requires every block closure to be a union of blocks;
    /// otherwise the family is not closed under the operator and the
    /// constructor throws representation_error.
    static SubalgebraView from_order(const QuasiOrder& order,
                                     std::vector<PointSet> blocks);

    int carrier_size() const { return carrier_; }
    const std::vector<PointSet>& blocks() const { return blocks_; }

    bool is_element(const PointSet& a) const;

    /// Closure of an element, computed block by block.  Throws input_error
    /// when `a` is not an element of the subalgebra.
    PointSet closure_on_elements(const PointSet& a) const;

    /// Smallest element containing `b`: the union of every block that
    /// touches it.
    PointSet least_element_containing(const PointSet& b) const;

    /// All elements in block-mask order (2^k of them for k blocks).
    std::vector<PointSet> elements() const;

private:
    int carrier_;
    std::vector<PointSet> blocks_;
    std::vector<PointSet> block_closure_;
};

/// Extends the subalgebra closure to arbitrary subsets from above: the
/// intersection of the closures of every element lying over `b`.  The
/// result is again a closure operator on the full powerset and agrees with
/// closure_on_elements whenever `b` is an element.
PointSet upper_macneille(const SubalgebraView& v, const PointSet& b);

/// One successful split of an open set alpha: open_parts are the opens
/// whose closure overflow equals the shared residue, residual_parts are the
/// remaining parts whose closures each equal that residue exactly.
struct DissectWitness {
    std::vector<PointSet> open_parts;
    std::vector<PointSet> residual_parts;
};

/// Searches every partition of the nonempty open set alpha into r + s
/// nonempty parts, r of them required open, for the closure conditions
///   closure(open_i)  - open_i = residue   for each open part,
///   closure(resid_j)           = residue   for each residual part,
/// where residue = closure(alpha) minus the union of the open parts.
/// Partitions are enumerated in restricted-growth order with parts labeled
/// by first occurrence, slot choices lexicographically; the first witness
/// wins, so results are reproducible.  Empty or non-open alpha is a
/// precondition error; r + s > 4 or a carrier over 8 points is a bound
/// error.
std::optional<DissectWitness> dissect_witness_search(const QuasiOrder& order,
                                                     const PointSet& alpha,
                                                     int r, int s);

} // namespace tangles
