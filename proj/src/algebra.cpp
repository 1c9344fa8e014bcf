#include "tangles/algebra.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "tangles/errors.hpp"

namespace tangles {

namespace {

std::string point_list(const PointSet& s) { return s.to_string(); }

} // namespace

void ClosureTable::validate() const {
    if (atom_count < 0) {
        throw representation_error("closure table has a negative atom count");
    }
    if (static_cast<int>(atom_closure.size()) != atom_count) {
        throw representation_error(
            "closure table lists " + std::to_string(atom_closure.size()) +
            " atom closures for " + std::to_string(atom_count) + " atoms");
    }
    for (int x = 0; x < atom_count; ++x) {
        if (atom_closure[x].carrier_size() != atom_count) {
            throw representation_error(
                "closure of atom " + std::to_string(x) +
                " lives on the wrong carrier");
        }
        if (!atom_closure[x].contains(x)) {
            throw representation_error("atom " + std::to_string(x) +
                                       " is missing from its own closure");
        }
    }
    for (int x = 0; x < atom_count; ++x) {
        for (int y : atom_closure[x].members()) {
            if (!atom_closure[y].is_subset_of(atom_closure[x])) {
                throw representation_error(
                    "closing twice grows the closure of atom " +
                    std::to_string(x) + ": atom " + std::to_string(y) +
                    " brings in " + point_list(atom_closure[y]));
            }
        }
    }
}

QuasiOrder table_to_order(const ClosureTable& table) {
    table.validate();
    const int n = table.atom_count;
    std::vector<PointSet> rows(static_cast<std::size_t>(n), PointSet(n));
    for (int y = 0; y < n; ++y) {
        for (int x : table.atom_closure[y].members()) {
            rows[x] |= PointSet(n, {y});
        }
    }
    QuasiOrder order = QuasiOrder::unchecked_from_rows(std::move(rows));
    if (!order.is_reflexive_transitive()) {
        throw representation_error(
            "validated closure table produced a broken order");
    }
    return order;
}

ClosureTable order_to_table(const QuasiOrder& order) {
    ClosureTable table;
    table.atom_count = order.size();
    table.atom_closure.reserve(order.size());
    for (int y = 0; y < order.size(); ++y) {
        table.atom_closure.push_back(
            closure(order, PointSet(order.size(), {y})));
    }
    return table;
}

std::optional<int> point_generator(const QuasiOrder& order) {
    const PointSet everything = PointSet::full(order.size());
    for (int x = 0; x < order.size(); ++x) {
        if (order.successors(x) == everything) return x;
    }
    return std::nullopt;
}

bool is_point_generated(const QuasiOrder& order) {
    return point_generator(order).has_value();
}

bool is_well_connected(const QuasiOrder& order) {
    const int n = order.size();
    std::vector<PointSet> atom(static_cast<std::size_t>(n), PointSet(n));
    for (int x = 0; x < n; ++x) {
        atom[x] = closure(order, PointSet(n, {x}));
    }
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            if (!atom[x].intersects(atom[y])) return false;
        }
    }
    return true;
}

RelativizedModel relativize(const Model& m, const PointSet& alpha) {
    const int n = m.order.size();
    if (alpha.carrier_size() != n) {
        throw input_error("alpha lives on a different carrier than the model");
    }
    if (!is_open(m.order, alpha)) {
        throw precondition_error("alpha must be open to relativize: " +
                                 alpha.to_string());
    }

    const std::vector<int> members = alpha.members();
    const int k = static_cast<int>(members.size());

    std::vector<PointSet> rows;
    rows.reserve(members.size());
    for (int i = 0; i < k; ++i) {
        PointSet row(k);
        for (int j = 0; j < k; ++j) {
            if (m.order.reaches(members[i], members[j])) row = row.with(j);
        }
        rows.push_back(std::move(row));
    }
    QuasiOrder sub = QuasiOrder::unchecked_from_rows(std::move(rows));

    // The cut is only correct if closing inside the restriction matches
    // "close outside, then intersect with alpha".  Additivity reduces the
    // claim to atoms, so check it there.
    for (int i = 0; i < k; ++i) {
        const PointSet inside = closure(sub, PointSet(k, {i}));
        const PointSet outside =
            closure(m.order, PointSet(n, {members[i]})) & alpha;
        PointSet reindexed(k);
        for (int j = 0; j < k; ++j) {
            if (outside.contains(members[j])) reindexed = reindexed.with(j);
        }
        if (!(inside == reindexed)) {
            throw std::logic_error(
                "restriction closure disagrees with the relativized closure");
        }
    }

    RelativizedModel out{Model{std::move(sub), {}}, members};
    for (const auto& [name, points] : m.valuation) {
        PointSet cut(k);
        for (int i = 0; i < k; ++i) {
            if (points.contains(members[i])) cut = cut.with(i);
        }
        out.model.valuation.emplace(name, std::move(cut));
    }
    return out;
}

PointSet preimage(const BoundedMorphism& m, const PointSet& codomain_set) {
    if (static_cast<int>(m.map.size()) != m.domain.size()) {
        throw input_error("morphism map must assign every domain point");
    }
    if (codomain_set.carrier_size() != m.codomain.size()) {
        throw input_error("set lives on a different carrier than the codomain");
    }
    PointSet out(m.domain.size());
    for (int x = 0; x < m.domain.size(); ++x) {
        const int image = m.map[static_cast<std::size_t>(x)];
        if (image < 0 || image >= m.codomain.size()) {
            throw input_error("morphism map leaves the codomain at point " +
                              std::to_string(x));
        }
        if (codomain_set.contains(image)) out = out.with(x);
    }
    return out;
}

LawReport check_bounded_morphism(const BoundedMorphism& m) {
    if (static_cast<int>(m.map.size()) != m.domain.size()) {
        throw input_error("morphism map must assign every domain point");
    }
    for (int x = 0; x < m.domain.size(); ++x) {
        const int image = m.map[static_cast<std::size_t>(x)];
        if (image < 0 || image >= m.codomain.size()) {
            throw input_error("morphism map leaves the codomain at point " +
                              std::to_string(x));
        }
    }

    LawReport report;
    report.law = "bounded_morphism";
    report.passed = true;

    const auto fail = [&](std::string detail) {
        LawWitness witness;
        witness.orders = {m.domain, m.codomain};
        witness.mapping = m.map;
        witness.detail = std::move(detail);
        report.passed = false;
        report.witness = std::move(witness);
    };

    PointSet hit(m.codomain.size());
    for (int x = 0; x < m.domain.size(); ++x) {
        hit = hit.with(m.map[static_cast<std::size_t>(x)]);
    }
    if (!(hit == PointSet::full(m.codomain.size()))) {
        fail("map is not onto: codomain points " +
             hit.complement().to_string() + " have no preimage");
        return report;
    }

    for (int x = 0; x < m.domain.size(); ++x) {
        for (int y = 0; y < m.domain.size(); ++y) {
            if (!m.domain.reaches(x, y)) continue;
            const int fx = m.map[static_cast<std::size_t>(x)];
            const int fy = m.map[static_cast<std::size_t>(y)];
            if (!m.codomain.reaches(fx, fy)) {
                fail("forth fails: " + std::to_string(x) + " reaches " +
                     std::to_string(y) + " but " + std::to_string(fx) +
                     " does not reach " + std::to_string(fy));
                return report;
            }
        }
    }

    for (int x = 0; x < m.domain.size(); ++x) {
        const int fx = m.map[static_cast<std::size_t>(x)];
        for (int z = 0; z < m.codomain.size(); ++z) {
            if (!m.codomain.reaches(fx, z)) continue;
            bool lifted = false;
            for (int y = 0; y < m.domain.size() && !lifted; ++y) {
                if (m.domain.reaches(x, y) &&
                    m.map[static_cast<std::size_t>(y)] == z) {
                    lifted = true;
                }
            }
            if (!lifted) {
                fail("back fails: " + std::to_string(fx) + " reaches " +
                     std::to_string(z) + " but no successor of " +
                     std::to_string(x) + " maps there");
                return report;
            }
        }
    }
    return report;
}

LawReport check_hom_preserves_tangle(const BoundedMorphism& m,
                                     const GammaFamily& gamma) {
    const LawReport base = check_bounded_morphism(m);
    if (!base.passed) {
        throw precondition_error(
            "not a bounded morphism: " +
            (base.witness ? base.witness->detail : std::string("unknown")));
    }
    if (gamma.carrier_size() != m.codomain.size()) {
        throw input_error("family lives on a different carrier than the "
                          "codomain");
    }

    std::vector<PointSet> pulled;
    pulled.reserve(gamma.sets().size());
    for (const PointSet& g : gamma.sets()) {
        pulled.push_back(preimage(m, g));
    }

    const PointSet of_tangle = preimage(m, tangle_gfp(m.codomain, gamma));
    const PointSet tangle_of = tangle_gfp(m.domain, GammaFamily(pulled));

    LawReport report;
    report.law = "hom_preserves_tangle";
    report.passed = of_tangle == tangle_of;
    if (!report.passed) {
        LawWitness witness;
        witness.orders = {m.domain, m.codomain};
        witness.families = {gamma.sets()};
        witness.sets = {of_tangle, tangle_of};
        witness.mapping = m.map;
        witness.detail = "preimage of the tangle is " +
                         of_tangle.to_string() +
                         " but the tangle of the preimages is " +
                         tangle_of.to_string();
        report.witness = std::move(witness);
    }
    return report;
}

SubalgebraView::SubalgebraView(int carrier_size, std::vector<PointSet> blocks,
                               std::vector<PointSet> block_closures)
    : carrier_(carrier_size),
      blocks_(std::move(blocks)),
      block_closure_(std::move(block_closures)) {
    if (carrier_ < 0) {
        throw representation_error("carrier size must be nonnegative");
    }
    if (block_closure_.size() != blocks_.size()) {
        throw representation_error("need exactly one closure per block");
    }

    PointSet covered(carrier_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].carrier_size() != carrier_ ||
            block_closure_[i].carrier_size() != carrier_) {
            throw representation_error("block " + std::to_string(i) +
                                       " lives on the wrong carrier");
        }
        if (blocks_[i].is_empty()) {
            throw representation_error("blocks must be nonempty");
        }
        if (covered.intersects(blocks_[i])) {
            throw representation_error("blocks overlap at " +
                                       (covered & blocks_[i]).to_string());
        }
        covered |= blocks_[i];
    }
    if (!(covered == PointSet::full(carrier_))) {
        throw representation_error("blocks do not cover the carrier; " +
                                   covered.complement().to_string() +
                                   " is missed");
    }

    // Canonical block order: by least member.  Keeps element masks and
    // everything derived from them reproducible.
    std::vector<std::size_t> perm(blocks_.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return blocks_[a].least() < blocks_[b].least();
    });
    std::vector<PointSet> sorted_blocks;
    std::vector<PointSet> sorted_closures;
    sorted_blocks.reserve(perm.size());
    sorted_closures.reserve(perm.size());
    for (std::size_t i : perm) {
        sorted_blocks.push_back(blocks_[i]);
        sorted_closures.push_back(block_closure_[i]);
    }
    blocks_ = std::move(sorted_blocks);
    block_closure_ = std::move(sorted_closures);

    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (!is_element(block_closure_[i])) {
            throw representation_error(
                "closure of block " + std::to_string(i) + " is " +
                block_closure_[i].to_string() +
                ", which is not a union of blocks");
        }
        if (!blocks_[i].is_subset_of(block_closure_[i])) {
            throw representation_error("block " + std::to_string(i) +
                                       " escapes its own closure");
        }
    }
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        PointSet twice(carrier_);
        for (std::size_t j = 0; j < blocks_.size(); ++j) {
            if (blocks_[j].is_subset_of(block_closure_[i])) {
                twice |= block_closure_[j];
            }
        }
        if (!(twice == block_closure_[i])) {
            throw representation_error(
                "closing block " + std::to_string(i) +
                " twice grows it: " + block_closure_[i].to_string() +
                " then " + twice.to_string());
        }
    }
}

SubalgebraView SubalgebraView::from_order(const QuasiOrder& order,
                                          std::vector<PointSet> blocks) {
    std::vector<PointSet> closures;
    closures.reserve(blocks.size());
    for (const PointSet& block : blocks) {
        closures.push_back(closure(order, block));
    }
    return SubalgebraView(order.size(), std::move(blocks),
                          std::move(closures));
}

bool SubalgebraView::is_element(const PointSet& a) const {
    if (a.carrier_size() != carrier_) return false;
    return least_element_containing(a) == a;
}

PointSet SubalgebraView::closure_on_elements(const PointSet& a) const {
    if (!is_element(a)) {
        throw input_error("not an element of the subalgebra: " +
                          a.to_string());
    }
    PointSet out(carrier_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].is_subset_of(a)) out |= block_closure_[i];
    }
    return out;
}

PointSet SubalgebraView::least_element_containing(const PointSet& b) const {
    if (b.carrier_size() != carrier_) {
        throw input_error("set lives on a different carrier than the view");
    }
    PointSet out(carrier_);
    for (const PointSet& block : blocks_) {
        if (block.intersects(b)) out |= block;
    }
    return out;
}

std::vector<PointSet> SubalgebraView::elements() const {
    if (blocks_.size() > 20) {
        throw bound_error("too many blocks to enumerate elements");
    }
    std::vector<PointSet> out;
    out.reserve(std::size_t{1} << blocks_.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << blocks_.size());
         ++mask) {
        PointSet e(carrier_);
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if ((mask >> i) & 1) e |= blocks_[i];
        }
        out.push_back(std::move(e));
    }
    return out;
}

PointSet upper_macneille(const SubalgebraView& v, const PointSet& b) {
    const PointSet least = v.least_element_containing(b);

    std::vector<PointSet> spare;
    for (const PointSet& block : v.blocks()) {
        if (!block.intersects(least)) spare.push_back(block);
    }
    if (spare.size() > 20) {
        throw bound_error("too many blocks to scan the elements over b");
    }

    // Meet of the closures of every element above b.  The first element
    // visited is the least one, so the accumulator starts there.
    PointSet acc = v.closure_on_elements(least);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << spare.size());
         ++mask) {
        PointSet above = least;
        for (std::size_t i = 0; i < spare.size(); ++i) {
            if ((mask >> i) & 1) above |= spare[i];
        }
        acc &= v.closure_on_elements(above);
    }
    return acc;
}

namespace {

/// Walks every partition of `items` into exactly `parts` nonempty groups,
/// in restricted-growth order (item 0 always in group 0; each later item
/// joins an existing group or opens the next one).  Calls visit with the
/// groups; stops early when visit returns true.
bool each_partition(const std::vector<int>& items, int parts,
                    std::vector<int>& label,
                    const std::function<bool(const std::vector<int>&)>& visit) {
    const std::size_t at = label.size();
    int used = 0;
    for (int l : label) used = std::max(used, l + 1);
    if (at == items.size()) {
        return used == parts && visit(label);
    }
    const int remaining = static_cast<int>(items.size() - at);
    for (int g = 0; g <= used && g < parts; ++g) {
        // Groups not opened yet all need an item from what is left.
        const int opened = std::max(used, g + 1);
        if (parts - opened > remaining - 1) continue;
        label.push_back(g);
        if (each_partition(items, parts, label, visit)) return true;
        label.pop_back();
    }
    return false;
}

} // namespace

std::optional<DissectWitness> dissect_witness_search(const QuasiOrder& order,
                                                     const PointSet& alpha,
                                                     int r, int s) {
    if (alpha.carrier_size() != order.size()) {
        throw input_error("alpha lives on a different carrier than the order");
    }
    if (r < 0 || s < 0) {
        throw input_error("part counts must be nonnegative");
    }
    if (r + s > 4) {
        throw bound_error("searching more than 4 parts is not supported");
    }
    if (order.size() > 8) {
        throw bound_error("dissection search is limited to 8 points");
    }
    if (alpha.is_empty()) {
        throw precondition_error("alpha must be nonempty");
    }
    if (!is_open(order, alpha)) {
        throw precondition_error("alpha must be open: " + alpha.to_string());
    }

    const int parts = r + s;
    const std::vector<int> items = alpha.members();
    if (parts == 0 || parts > static_cast<int>(items.size())) {
        return std::nullopt;
    }

    const int n = order.size();
    const PointSet closed_alpha = closure(order, alpha);

    std::optional<DissectWitness> found;
    std::vector<int> label;
    label.reserve(items.size());

    each_partition(items, parts, label, [&](const std::vector<int>& labels) {
        std::vector<PointSet> part(static_cast<std::size_t>(parts),
                                   PointSet(n));
        for (std::size_t i = 0; i < items.size(); ++i) {
            part[static_cast<std::size_t>(labels[i])] =
                part[static_cast<std::size_t>(labels[i])].with(items[i]);
        }
        std::vector<PointSet> closed;
        std::vector<bool> open_flag;
        closed.reserve(part.size());
        open_flag.reserve(part.size());
        for (const PointSet& p : part) {
            closed.push_back(closure(order, p));
            open_flag.push_back(is_open(order, p));
        }

        // Choose which r of the parts play the open role, smallest index
        // sets first.
        std::vector<int> combo(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) combo[static_cast<std::size_t>(i)] = i;
        while (true) {
            bool ok = true;
            PointSet open_union(n);
            for (int c : combo) {
                if (!open_flag[static_cast<std::size_t>(c)]) ok = false;
                open_union |= part[static_cast<std::size_t>(c)];
            }
            if (ok) {
                const PointSet residue = closed_alpha - open_union;
                std::vector<bool> is_open_slot(part.size(), false);
                for (int c : combo) {
                    is_open_slot[static_cast<std::size_t>(c)] = true;
                }
                for (std::size_t i = 0; i < part.size() && ok; ++i) {
                    if (is_open_slot[i]) {
                        ok = (closed[i] - part[i]) == residue;
                    } else {
                        ok = closed[i] == residue;
                    }
                }
                if (ok) {
                    DissectWitness w;
                    for (std::size_t i = 0; i < part.size(); ++i) {
                        (is_open_slot[i] ? w.open_parts : w.residual_parts)
                            .push_back(part[i]);
                    }
                    found = std::move(w);
                    return true;
                }
            }
            // Advance the combination lexicographically.
            int i = r - 1;
            while (i >= 0 &&
                   combo[static_cast<std::size_t>(i)] == parts - r + i) {
                --i;
            }
            if (i < 0) break;
            ++combo[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < r; ++j) {
                combo[static_cast<std::size_t>(j)] =
                    combo[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
        return false;
    });

    return found;
}

} // namespace tangles
