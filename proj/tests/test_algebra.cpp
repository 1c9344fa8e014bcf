#include "doctest.h"

#include <random>
#include <vector>

#include "tangles/algebra.hpp"
#include "tangles/constructions.hpp"

using namespace tangles;

namespace {

QuasiOrder chain3() { return QuasiOrder::from_edges(3, {{0, 1}, {1, 2}}); }

QuasiOrder cluster2() { return QuasiOrder::from_edges(2, {{0, 1}, {1, 0}}); }

/// Collapse every cluster of `order` to one codomain point.  Always a
/// bounded morphism: mutual reachability inside a cluster supplies the
/// lifts the back condition asks for.
BoundedMorphism cluster_quotient(const QuasiOrder& order) {
    const std::vector<Cluster> cs = clusters(order);
    const int n = order.size();
    std::vector<int> to_cluster(static_cast<std::size_t>(n), -1);
    for (std::size_t c = 0; c < cs.size(); ++c) {
        for (int x : cs[c].members.members()) {
            to_cluster[static_cast<std::size_t>(x)] = static_cast<int>(c);
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t a = 0; a < cs.size(); ++a) {
        for (std::size_t b = 0; b < cs.size(); ++b) {
            if (a == b) continue;
            if (order.reaches(cs[a].members.least(), cs[b].members.least())) {
                edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
            }
        }
    }
    return BoundedMorphism{
        order, QuasiOrder::from_edges(static_cast<int>(cs.size()), edges),
        to_cluster};
}

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

} // namespace

TEST_CASE("closure tables and orders are two views of the same thing") {
    ClosureTable ident;
    ident.atom_count = 2;
    ident.atom_closure = {PointSet(2, {0}), PointSet(2, {1})};
    CHECK(table_to_order(ident) == QuasiOrder(2));

    ClosureTable slope;
    slope.atom_count = 2;
    slope.atom_closure = {PointSet(2, {0}), PointSet(2, {0, 1})};
    const QuasiOrder r = table_to_order(slope);
    CHECK(r.reaches(0, 0));
    CHECK(r.reaches(0, 1));
    CHECK(r.reaches(1, 1));
    CHECK_FALSE(r.reaches(1, 0));

    const ClosureTable back = order_to_table(cluster2());
    CHECK(back.atom_closure[0] == PointSet::full(2));
    CHECK(back.atom_closure[1] == PointSet::full(2));
    CHECK(order_to_table(QuasiOrder(3)).atom_closure[2] == PointSet(3, {2}));
}

TEST_CASE("table and order round-trip on every small carrier") {
    for (int n = 1; n <= 4; ++n) {
        for (const QuasiOrder& ord : enumerate_quasiorders(n)) {
            const ClosureTable t = order_to_table(ord);
            CHECK(table_to_order(t) == ord);

            // Additivity: the table determines closure on all subsets.
            for (const PointSet& a : subsets_of(PointSet::full(n))) {
                PointSet built(n);
                for (int y : a.members()) built |= t.atom_closure[y];
                CHECK(closure(ord, a) == built);
            }
        }
    }
}

TEST_CASE("broken closure tables are rejected") {
    ClosureTable t;
    t.atom_count = 2;
    t.atom_closure = {PointSet(2, {0})};
    CHECK_THROWS_AS(table_to_order(t), representation_error);

    t.atom_closure = {PointSet(3, {0}), PointSet(3, {1})};
    CHECK_THROWS_AS(table_to_order(t), representation_error);

    t.atom_closure = {PointSet(2, {1}), PointSet(2, {1})};
    CHECK_THROWS_AS(t.validate(), representation_error);

    ClosureTable sneaky;
    sneaky.atom_count = 3;
    sneaky.atom_closure = {PointSet(3, {0, 1}), PointSet(3, {1, 2}),
                           PointSet(3, {2})};
    CHECK_THROWS_AS(sneaky.validate(), representation_error);
}

TEST_CASE("point generation picks the least generator") {
    CHECK(point_generator(chain3()) == 0);
    CHECK(point_generator(cluster2()) == 0);
    CHECK_FALSE(point_generator(QuasiOrder(2)).has_value());
    CHECK(is_point_generated(QuasiOrder(1)));

    const Model rooted = add_root(chain_model(2));
    CHECK(point_generator(rooted.order) == 3);
}

TEST_CASE("well-connectedness coincides with point generation") {
    CHECK(is_well_connected(chain3()));
    CHECK_FALSE(is_well_connected(QuasiOrder(2)));
    for (int n = 1; n <= 4; ++n) {
        for (const QuasiOrder& ord : enumerate_quasiorders(n)) {
            CHECK(is_well_connected(ord) == is_point_generated(ord));
        }
    }
}

TEST_CASE("relativizing to an open set restricts the order") {
    Model m{chain3(), {{"p", PointSet(3, {0, 2})}}};
    const RelativizedModel cut = relativize(m, PointSet(3, {1, 2}));

    CHECK(cut.model.order.size() == 2);
    CHECK(cut.model.order.reaches(0, 1));
    CHECK_FALSE(cut.model.order.reaches(1, 0));
    CHECK(cut.parent_index == std::vector<int>{1, 2});
    CHECK(cut.model.valuation.at("p") == PointSet(2, {1}));

    // Closing {2} inside the cut matches alpha ∩ ambient closure of {2}:
    // both name the parent points {1, 2}.
    CHECK(closure(cut.model.order, PointSet(2, {1})) == PointSet::full(2));
    CHECK((closure(m.order, PointSet(3, {2})) & PointSet(3, {1, 2})) ==
          PointSet(3, {1, 2}));
}

TEST_CASE("relativization edge cases") {
    Model m{chain3(), {{"p", PointSet(3, {0})}}};

    const RelativizedModel whole = relativize(m, PointSet::full(3));
    CHECK(whole.model.order == m.order);
    CHECK(whole.model.valuation.at("p") == m.valuation.at("p"));
    CHECK(whole.parent_index == std::vector<int>{0, 1, 2});

    const RelativizedModel none = relativize(m, PointSet(3));
    CHECK(none.model.order.size() == 0);
    CHECK(none.parent_index.empty());

    CHECK_THROWS_AS(relativize(m, PointSet(3, {0})), precondition_error);
    CHECK_THROWS_AS(relativize(m, PointSet(3, {1})), precondition_error);
    CHECK_THROWS_AS(relativize(m, PointSet(4, {1})), input_error);
}

TEST_CASE("cut models keep their tangles and laws") {
    std::mt19937_64 rng(5150);
    int cuts_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const QuasiOrder ord = random_order(rng, n, 0.3);

        // Successor sets are always open; union a couple for variety.
        PointSet alpha = ord.successors(static_cast<int>(rng() % n));
        alpha |= ord.successors(static_cast<int>(rng() % n));
        Model m{ord, {}};
        const RelativizedModel cut = relativize(m, alpha);
        const int k = cut.model.order.size();
        if (k == 0) continue;
        ++cuts_seen;

        // Tangles of families drawn inside alpha agree with the ambient
        // tangle intersected with alpha.
        for (int round = 0; round < 4; ++round) {
            PointSet g1(n);
            PointSet g2(n);
            for (int x : alpha.members()) {
                if (rng() & 1) g1 = g1.with(x);
                if (rng() & 1) g2 = g2.with(x);
            }
            PointSet h1(k);
            PointSet h2(k);
            for (int i = 0; i < k; ++i) {
                if (g1.contains(cut.parent_index[static_cast<std::size_t>(i)]))
                    h1 = h1.with(i);
                if (g2.contains(cut.parent_index[static_cast<std::size_t>(i)]))
                    h2 = h2.with(i);
            }
            const PointSet inside =
                tangle_gfp(cut.model.order, GammaFamily({h1, h2}));
            const PointSet outside =
                tangle_gfp(ord, GammaFamily({g1, g2})) & alpha;
            PointSet expect(k);
            for (int i = 0; i < k; ++i) {
                if (outside.contains(
                        cut.parent_index[static_cast<std::size_t>(i)]))
                    expect = expect.with(i);
            }
            CHECK(inside == expect);
        }

        // And the cut order satisfies the tangle laws on its own terms.
        SubsetStrategy s;
        s.samples = 20;
        s.seed = rng();
        CHECK(sweep_fix(cut.model.order, s).passed);
        CHECK(sweep_ind(cut.model.order, s).passed);
    }
    CHECK(cuts_seen > 100);
}

TEST_CASE("bounded morphism checks accept the honest maps") {
    const QuasiOrder pt(1);

    BoundedMorphism ident{chain3(), chain3(), {0, 1, 2}};
    CHECK(check_bounded_morphism(ident).passed);

    BoundedMorphism squash_cluster{cluster2(), pt, {0, 0}};
    CHECK(check_bounded_morphism(squash_cluster).passed);

    BoundedMorphism squash_chain{QuasiOrder::from_edges(2, {{0, 1}}), pt,
                                 {0, 0}};
    CHECK(check_bounded_morphism(squash_chain).passed);

    // Two unrelated points onto one: back holds because each point lifts
    // through itself.
    BoundedMorphism squash_discrete{QuasiOrder(2), pt, {0, 0}};
    CHECK(check_bounded_morphism(squash_discrete).passed);
}

TEST_CASE("bounded morphism checks name what broke") {
    const QuasiOrder two_chain = QuasiOrder::from_edges(2, {{0, 1}});

    BoundedMorphism not_onto{QuasiOrder(1), QuasiOrder(2), {0}};
    const LawReport r1 = check_bounded_morphism(not_onto);
    CHECK_FALSE(r1.passed);
    CHECK(r1.witness->detail.find("onto") != std::string::npos);

    BoundedMorphism flip{two_chain, two_chain, {1, 0}};
    const LawReport r2 = check_bounded_morphism(flip);
    CHECK_FALSE(r2.passed);
    CHECK(r2.witness->detail.find("forth") != std::string::npos);
    CHECK(r2.witness->mapping == std::vector<int>{1, 0});

    BoundedMorphism no_lift{QuasiOrder(2), two_chain, {0, 1}};
    const LawReport r3 = check_bounded_morphism(no_lift);
    CHECK_FALSE(r3.passed);
    CHECK(r3.witness->detail.find("back") != std::string::npos);

    BoundedMorphism short_map{QuasiOrder(2), QuasiOrder(1), {0}};
    CHECK_THROWS_AS(check_bounded_morphism(short_map), input_error);
    BoundedMorphism stray{QuasiOrder(1), QuasiOrder(1), {4}};
    CHECK_THROWS_AS(check_bounded_morphism(stray), input_error);
}

TEST_CASE("preimages of tangles are tangles of preimages") {
    BoundedMorphism squash{cluster2(), QuasiOrder(1), {0, 0}};
    CHECK(check_hom_preserves_tangle(squash,
                                     GammaFamily({PointSet(1, {0})}))
              .passed);

    // A singleton family reduces the claim to plain closure preservation.
    BoundedMorphism ident{chain3(), chain3(), {0, 1, 2}};
    for (const PointSet& g : subsets_of(PointSet::full(3))) {
        if (g.is_empty()) continue;
        CHECK(check_hom_preserves_tangle(ident, GammaFamily({g})).passed);
    }

    BoundedMorphism broken{QuasiOrder(2), QuasiOrder(2), {0, 0}};
    CHECK_THROWS_AS(
        check_hom_preserves_tangle(broken, GammaFamily({PointSet(2, {0})})),
        precondition_error);
    BoundedMorphism squash2{cluster2(), QuasiOrder(1), {0, 0}};
    CHECK_THROWS_AS(
        check_hom_preserves_tangle(squash2, GammaFamily({PointSet(2, {0})})),
        input_error);
}

TEST_CASE("cluster quotients preserve tangles across random orders") {
    std::mt19937_64 rng(90210);
    for (int trial = 0; trial < 250; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const QuasiOrder ord = random_order(rng, n, 0.35);
        const BoundedMorphism q = cluster_quotient(ord);
        REQUIRE(check_bounded_morphism(q).passed);

        const int k = q.codomain.size();
        std::vector<PointSet> fam;
        fam.push_back(PointSet::from_mask(k, rng()));
        if (rng() & 1) fam.push_back(PointSet::from_mask(k, rng()));
        CHECK(check_hom_preserves_tangle(q, GammaFamily(fam)).passed);
    }
}

TEST_CASE("subalgebra views validate their data") {
    const SubalgebraView v =
        SubalgebraView::from_order(chain3(), {PointSet(3, {0}),
                                              PointSet(3, {1, 2})});
    CHECK(v.carrier_size() == 3);
    CHECK(v.blocks().size() == 2);
    CHECK(v.is_element(PointSet(3)));
    CHECK(v.is_element(PointSet(3, {1, 2})));
    CHECK_FALSE(v.is_element(PointSet(3, {1})));
    CHECK(v.least_element_containing(PointSet(3, {1})) == PointSet(3, {1, 2}));
    CHECK(v.elements().size() == 4);
    CHECK(v.closure_on_elements(PointSet(3, {1, 2})) == PointSet::full(3));
    CHECK_THROWS_AS(v.closure_on_elements(PointSet(3, {1})), input_error);

    // {1} closes to {0, 1}, which no union of these blocks matches.
    CHECK_THROWS_AS(SubalgebraView::from_order(
                        chain3(), {PointSet(3, {1}), PointSet(3, {0, 2})}),
                    representation_error);

    CHECK_THROWS_AS(SubalgebraView(2, {PointSet(2, {0}), PointSet(2, {0, 1})},
                                   {PointSet(2, {0}), PointSet(2, {0, 1})}),
                    representation_error);
    CHECK_THROWS_AS(SubalgebraView(2, {PointSet(2, {0})}, {PointSet(2, {0})}),
                    representation_error);
    CHECK_THROWS_AS(SubalgebraView(2, {PointSet(2, {0}), PointSet(2, {1})},
                                   {PointSet(2, {1}), PointSet(2, {1})}),
                    representation_error);
    CHECK_THROWS_AS(
        SubalgebraView(3,
                       {PointSet(3, {0}), PointSet(3, {1}), PointSet(3, {2})},
                       {PointSet(3, {0, 1}), PointSet(3, {1, 2}),
                        PointSet(3, {2})}),
        representation_error);
}

TEST_CASE("the upper extension pins down the documented values") {
    const SubalgebraView v =
        SubalgebraView::from_order(chain3(), {PointSet(3, {0}),
                                              PointSet(3, {1, 2})});

    // {1} is not an element; the least element over it is {1,2}, whose
    // closure is everything.  The spatial closure {0,1} is strictly inside.
    CHECK(upper_macneille(v, PointSet(3, {1})) == PointSet::full(3));
    CHECK(closure(chain3(), PointSet(3, {1})) == PointSet(3, {0, 1}));

    CHECK(upper_macneille(v, PointSet(3)) == PointSet(3));
    for (const PointSet& e : v.elements()) {
        CHECK(upper_macneille(v, e) == v.closure_on_elements(e));
    }

    // On the all-singletons view the extension is the ambient closure.
    const SubalgebraView fine = SubalgebraView::from_order(
        chain3(), {PointSet(3, {0}), PointSet(3, {1}), PointSet(3, {2})});
    for (const PointSet& b : subsets_of(PointSet::full(3))) {
        CHECK(upper_macneille(fine, b) == closure(chain3(), b));
    }
}

TEST_CASE("the upper extension is a closure operator on random views") {
    std::mt19937_64 rng(777);
    int views = 0;
    for (int trial = 0; trial < 2000 && views < 150; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const QuasiOrder ord = random_order(rng, n, 0.3);

        // Random partition by random labels, compacted.
        std::vector<int> label(static_cast<std::size_t>(n));
        for (int& l : label) l = static_cast<int>(rng() % 3);
        std::vector<PointSet> blocks;
        for (int want = 0; want < 3; ++want) {
            PointSet b(n);
            for (int x = 0; x < n; ++x) {
                if (label[static_cast<std::size_t>(x)] == want) b = b.with(x);
            }
            if (!b.is_empty()) blocks.push_back(b);
        }

        SubalgebraView* made = nullptr;
        SubalgebraView holder(1, {PointSet(1, {0})}, {PointSet(1, {0})});
        try {
            holder = SubalgebraView::from_order(ord, blocks);
            made = &holder;
        } catch (const representation_error&) {
            continue; // family not closed under this order's closure
        }
        ++views;

        // Independent routes: the literal meet (implementation), the meet
        // over the full element list, and closure of the least element.
        for (int round = 0; round < 6; ++round) {
            const PointSet b = PointSet::from_mask(n, rng());
            const PointSet got = upper_macneille(*made, b);

            PointSet meet = PointSet::full(n);
            for (const PointSet& e : made->elements()) {
                if (b.is_subset_of(e)) meet &= made->closure_on_elements(e);
            }
            CHECK(got == meet);
            CHECK(got == made->closure_on_elements(
                             made->least_element_containing(b)));

            const PointSet c = PointSet::from_mask(n, rng());
            CHECK(b.is_subset_of(got));
            CHECK(upper_macneille(*made, b | c) ==
                  (got | upper_macneille(*made, c)));
            CHECK(upper_macneille(*made, got) == got);
        }
        CHECK(upper_macneille(*made, PointSet(n)).is_empty());
    }
    CHECK(views >= 50);
}

TEST_CASE("dissection search finds the pinned witnesses") {
    // One residual slot always succeeds with the whole set.
    const auto easy =
        dissect_witness_search(chain3(), PointSet::full(3), 0, 1);
    REQUIRE(easy.has_value());
    CHECK(easy->open_parts.empty());
    CHECK(easy->residual_parts == std::vector<PointSet>{PointSet::full(3)});

    const auto split =
        dissect_witness_search(cluster2(), PointSet::full(2), 0, 2);
    REQUIRE(split.has_value());
    CHECK(split->residual_parts ==
          std::vector<PointSet>{PointSet(2, {0}), PointSet(2, {1})});

    const auto blocked = dissect_witness_search(
        QuasiOrder::from_edges(2, {{0, 1}}), PointSet::full(2), 0, 2);
    CHECK_FALSE(blocked.has_value());

    // A cluster over a tail point: the tail splits off as the open part and
    // the cluster absorbs the residue.
    const QuasiOrder funnel =
        QuasiOrder::from_edges(3, {{1, 2}, {2, 1}, {1, 0}, {2, 0}});
    const auto mixed =
        dissect_witness_search(funnel, PointSet::full(3), 1, 1);
    REQUIRE(mixed.has_value());
    CHECK(mixed->open_parts == std::vector<PointSet>{PointSet(3, {0})});
    CHECK(mixed->residual_parts == std::vector<PointSet>{PointSet(3, {1, 2})});

    const auto again =
        dissect_witness_search(funnel, PointSet::full(3), 1, 1);
    CHECK(again->open_parts == mixed->open_parts);
    CHECK(again->residual_parts == mixed->residual_parts);
}

TEST_CASE("dissection search guards its inputs") {
    CHECK_THROWS_AS(dissect_witness_search(chain3(), PointSet(3), 0, 1),
                    precondition_error);
    CHECK_THROWS_AS(
        dissect_witness_search(chain3(), PointSet(3, {0}), 0, 1),
        precondition_error);
    CHECK_THROWS_AS(
        dissect_witness_search(chain3(), PointSet(4, {0}), 0, 1),
        input_error);
    CHECK_THROWS_AS(
        dissect_witness_search(chain3(), PointSet::full(3), -1, 1),
        input_error);
    CHECK_THROWS_AS(
        dissect_witness_search(chain3(), PointSet::full(3), 2, 3),
        bound_error);
    CHECK_THROWS_AS(dissect_witness_search(QuasiOrder(9), PointSet::full(9),
                                           0, 1),
                    bound_error);

    CHECK_FALSE(dissect_witness_search(chain3(), PointSet::full(3), 0, 0)
                    .has_value());
    CHECK_FALSE(dissect_witness_search(cluster2(), PointSet::full(2), 0, 3)
                    .has_value()); // more parts than points
}

TEST_CASE("dissection witnesses actually satisfy the conditions") {
    std::mt19937_64 rng(1844);
    int witnesses = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const QuasiOrder ord = random_order(rng, n, 0.3);
        PointSet alpha = ord.successors(static_cast<int>(rng() % n));
        if (alpha.is_empty()) continue;
        const int r = static_cast<int>(rng() % 2);
        const int s = 1 + static_cast<int>(rng() % 2);
        const auto w = dissect_witness_search(ord, alpha, r, s);
        if (!w) continue;
        ++witnesses;

        PointSet open_union(n);
        PointSet together(n);
        for (const PointSet& a : w->open_parts) {
            CHECK(is_open(ord, a));
            CHECK_FALSE(a.is_empty());
            open_union |= a;
            together |= a;
        }
        for (const PointSet& b : w->residual_parts) {
            CHECK_FALSE(b.is_empty());
            CHECK_FALSE(together.intersects(b));
            together |= b;
        }
        CHECK(together == alpha);
        CHECK(static_cast<int>(w->open_parts.size()) == r);
        CHECK(static_cast<int>(w->residual_parts.size()) == s);

        const PointSet residue = closure(ord, alpha) - open_union;
        for (const PointSet& a : w->open_parts) {
            CHECK((closure(ord, a) - a) == residue);
        }
        for (const PointSet& b : w->residual_parts) {
            CHECK(closure(ord, b) == residue);
        }
    }
    CHECK(witnesses > 60);
}
