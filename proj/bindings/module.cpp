// Python bindings for the tangles library.  The wrapper stays thin: C++
// types map to small Python classes, families of sets are plain lists of
// PointSet, and every library exception surfaces as a ValueError subclass.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "tangles/algebra.hpp"
#include "tangles/constructions.hpp"
#include "tangles/kernel.hpp"
#include "tangles/laws.hpp"
#include "tangles/logic.hpp"
#include "tangles/model_io.hpp"

namespace py = pybind11;
using namespace tangles;

namespace {

GammaFamily family_of(const std::vector<PointSet>& sets) {
    return GammaFamily(sets);
}

std::string point_set_repr(const PointSet& s) {
    std::string out = "PointSet(" + std::to_string(s.carrier_size()) + ", [";
    bool first = true;
    for (int x : s.members()) {
        if (!first) out += ", ";
        out += std::to_string(x);
        first = false;
    }
    return out + "])";
}

std::string order_repr(const QuasiOrder& o) {
    std::string out =
        "QuasiOrder.from_edges(" + std::to_string(o.size()) + ", [";
    bool first = true;
    for (int x = 0; x < o.size(); ++x) {
        for (int y = 0; y < o.size(); ++y) {
            if (x != y && o.reaches(x, y)) {
                if (!first) out += ", ";
                out += "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
                first = false;
            }
        }
    }
    return out + "])";
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite quasi-orders, their closure algebras, and tangled "
              "closure operators.";
    m.attr("__version__") = "0.1.0";

    // Exceptions.  Subclasses are registered after the base so their
    // translators run first and keep the hierarchy intact.
    auto input_exc =
        py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
    py::register_exception<bound_error>(m, "BoundError", input_exc.ptr());
    py::register_exception<representation_error>(m, "RepresentationError",
                                                 input_exc.ptr());
    py::register_exception<precondition_error>(m, "PreconditionError",
                                               input_exc.ptr());
    py::register_exception<parse_error>(m, "ParseError", input_exc.ptr());

    // ── Point sets ──────────────────────────────────────────────────────
    py::class_<PointSet>(m, "PointSet",
                         "A subset of the fixed carrier {0, ..., n-1}.")
        .def(py::init<int>(), py::arg("carrier_size"))
        .def(py::init([](int carrier_size, const std::vector<int>& members) {
                 return PointSet::of(carrier_size, members);
             }),
             py::arg("carrier_size"), py::arg("members"))
        .def_static("full", &PointSet::full, py::arg("carrier_size"))
        .def_static("from_mask", &PointSet::from_mask,
                    py::arg("carrier_size"), py::arg("mask"))
        .def_property_readonly("carrier_size", &PointSet::carrier_size)
        .def("contains", &PointSet::contains, py::arg("x"))
        .def("__contains__", &PointSet::contains)
        .def("count", &PointSet::count)
        .def("__len__", &PointSet::count)
        .def("is_empty", &PointSet::is_empty)
        .def("members", &PointSet::members)
        .def("least", &PointSet::least)
        .def("is_subset_of", &PointSet::is_subset_of, py::arg("other"))
        .def("intersects", &PointSet::intersects, py::arg("other"))
        .def("with_member", &PointSet::with, py::arg("x"))
        .def("without_member", &PointSet::without, py::arg("x"))
        .def("complement", &PointSet::complement)
        .def(py::self | py::self)
        .def(py::self & py::self)
        .def(py::self - py::self)
        .def("__invert__", &PointSet::complement)
        .def(py::self == py::self)
        .def(py::self < py::self)
        .def("__str__", &PointSet::to_string)
        .def("__repr__", &point_set_repr);

    m.def("subsets_of", &subsets_of, py::arg("base"), py::arg("max_bits") = 20,
          "All subsets of `base`, in mask order over its member list.");

    // ── Quasi-orders ────────────────────────────────────────────────────
    py::class_<QuasiOrder>(m, "QuasiOrder",
                           "A reflexive, transitive relation on "
                           "{0, ..., n-1}.  The plain constructor gives the "
                           "identity relation.")
        .def(py::init<int>(), py::arg("size"))
        .def_static(
            "from_edges",
            [](int size, const std::vector<std::pair<int, int>>& edges) {
                return QuasiOrder::from_edges(size, edges);
            },
            py::arg("size"), py::arg("edges"),
            "Reflexive-transitive closure of the given edge list.")
        .def("size", &QuasiOrder::size)
        .def("__len__", &QuasiOrder::size)
        .def("reaches", &QuasiOrder::reaches, py::arg("x"), py::arg("y"))
        .def(
            "successors",
            [](const QuasiOrder& o, int x) { return o.successors(x); },
            py::arg("x"), "R(x) as a PointSet over the carrier.")
        .def("is_reflexive_transitive", &QuasiOrder::is_reflexive_transitive)
        .def("canonical_key", &QuasiOrder::canonical_key)
        .def(py::self == py::self)
        .def("__repr__", &order_repr);

    m.def(
        "clusters",
        [](const QuasiOrder& order) {
            std::vector<PointSet> out;
            for (const Cluster& c : clusters(order)) out.push_back(c.members);
            return out;
        },
        py::arg("order"),
        "The maximal sets of mutually reachable points, ordered by least "
        "member.");

    // ── Closure and tangles ─────────────────────────────────────────────
    m.def("closure", &closure, py::arg("order"), py::arg("a"),
          "closure(a) = { x : successors(x) meets a }.");
    m.def("interior", &interior, py::arg("order"), py::arg("a"));
    m.def("is_open", &is_open, py::arg("order"), py::arg("a"));
    m.def("is_closed", &is_closed, py::arg("order"), py::arg("a"));
    m.def(
        "gamma_step",
        [](const QuasiOrder& o, const std::vector<PointSet>& gamma,
           const PointSet& a) { return gamma_step(o, family_of(gamma), a); },
        py::arg("order"), py::arg("gamma"), py::arg("a"),
        "Intersection over g in gamma of closure(g & a).");
    m.def(
        "tangle_gfp",
        [](const QuasiOrder& o, const std::vector<PointSet>& gamma) {
            return tangle_gfp(o, family_of(gamma));
        },
        py::arg("order"), py::arg("gamma"),
        "Tangled closure by greatest-fixed-point iteration (the reference "
        "algorithm).");
    m.def(
        "tangle_scc",
        [](const QuasiOrder& o, const std::vector<PointSet>& gamma) {
            return tangle_scc(o, family_of(gamma));
        },
        py::arg("order"), py::arg("gamma"),
        "Tangled closure through cluster analysis.");
    m.def(
        "tangle_oracle",
        [](const QuasiOrder& o, const std::vector<PointSet>& gamma,
           int max_points) {
            return tangle_oracle(o, family_of(gamma), max_points);
        },
        py::arg("order"), py::arg("gamma"), py::arg("max_points") = 12,
        "Brute-force tangled closure over every subset; small carriers "
        "only.");

    // ── Laws ────────────────────────────────────────────────────────────
    py::class_<SubsetStrategy>(m, "SubsetStrategy",
                               "How the sweep drivers pick instantiations.")
        .def(py::init([](int exhaustive_limit, int samples,
                         std::uint64_t seed) {
                 SubsetStrategy s;
                 s.exhaustive_limit = exhaustive_limit;
                 s.samples = samples;
                 s.seed = seed;
                 return s;
             }),
             py::arg("exhaustive_limit") = 5, py::arg("samples") = 200,
             py::arg("seed") = 0)
        .def_readwrite("exhaustive_limit", &SubsetStrategy::exhaustive_limit)
        .def_readwrite("samples", &SubsetStrategy::samples)
        .def_readwrite("seed", &SubsetStrategy::seed);

    py::class_<LawWitness>(m, "LawWitness",
                           "Everything needed to reproduce one failing "
                           "instantiation of a law.")
        .def_readonly("orders", &LawWitness::orders)
        .def_readonly("families", &LawWitness::families)
        .def_readonly("sets", &LawWitness::sets)
        .def_readonly("mapping", &LawWitness::mapping)
        .def_readonly("detail", &LawWitness::detail)
        .def("__str__", &LawWitness::to_string);

    py::class_<LawReport>(m, "LawReport")
        .def_readonly("law", &LawReport::law)
        .def_readonly("passed", &LawReport::passed)
        .def_readonly("witness", &LawReport::witness)
        .def("__bool__", [](const LawReport& r) { return r.passed; })
        .def("__str__", &LawReport::to_string)
        .def("__repr__", &LawReport::to_string);

    m.def("check_kuratowski_at", &check_kuratowski_at, py::arg("order"),
          py::arg("a"), py::arg("b"));
    m.def("check_ic_meet", &check_ic_meet, py::arg("order"), py::arg("a"),
          py::arg("b"));
    m.def(
        "check_fix",
        [](const QuasiOrder& o, const std::vector<PointSet>& gamma) {
            return check_fix(o, family_of(gamma));
        },
        py::arg("order"), py::arg("gamma"));
    m.def(
        "check_ind",
        [](const QuasiOrder& o, const std::vector<PointSet>& gamma,
           const PointSet& a) { return check_ind(o, family_of(gamma), a); },
        py::arg("order"), py::arg("gamma"), py::arg("a"));
    m.def(
        "check_closed_tangle",
        [](const QuasiOrder& o, const std::vector<PointSet>& gamma) {
            return check_closed_tangle(o, family_of(gamma));
        },
        py::arg("order"), py::arg("gamma"));
    m.def("check_congruence", &check_congruence, py::arg("order"),
          py::arg("gamma"), py::arg("gamma_prime"));
    m.def("check_kuratowski", &check_kuratowski, py::arg("order"),
          py::arg("strategy") = SubsetStrategy{});
    m.def("sweep_ic_meet", &sweep_ic_meet, py::arg("order"),
          py::arg("strategy") = SubsetStrategy{});
    m.def("sweep_fix", &sweep_fix, py::arg("order"),
          py::arg("strategy") = SubsetStrategy{});
    m.def("sweep_ind", &sweep_ind, py::arg("order"),
          py::arg("strategy") = SubsetStrategy{});
    m.def("sweep_closed_tangle", &sweep_closed_tangle, py::arg("order"),
          py::arg("strategy") = SubsetStrategy{});
    m.def("sweep_congruence", &sweep_congruence, py::arg("order"),
          py::arg("strategy") = SubsetStrategy{});
    m.def("check_all_laws", &check_all_laws, py::arg("order"),
          py::arg("strategy") = SubsetStrategy{},
          "All six laws in the fixed order kuratowski, ic_meet, fix, ind, "
          "closed_tangle, congruence.");
    m.def("replay", &replay, py::arg("report"),
          "Re-runs the failed instantiation recorded in a report's witness.");

    // ── Formulas and models ─────────────────────────────────────────────
    py::class_<Formula>(m, "Formula",
                        "A modal formula with diamond, box, and tangle "
                        "connectives.  Build with the static constructors or "
                        "parse_formula.")
        .def_static("bot", &Formula::bot)
        .def_static("top", &Formula::top)
        .def_static("var", &Formula::var, py::arg("name"))
        .def_static("negation", &Formula::negation, py::arg("f"))
        .def_static("conjunction", &Formula::conjunction, py::arg("lhs"),
                    py::arg("rhs"))
        .def_static("disjunction", &Formula::disjunction, py::arg("lhs"),
                    py::arg("rhs"))
        .def_static("implication", &Formula::implication, py::arg("lhs"),
                    py::arg("rhs"))
        .def_static("equivalence", &Formula::equivalence, py::arg("lhs"),
                    py::arg("rhs"))
        .def_static("diamond", &Formula::diamond, py::arg("f"))
        .def_static("box", &Formula::box, py::arg("f"))
        .def_static("tangle", &Formula::tangle, py::arg("members"))
        .def("variables", &Formula::variables,
             "Variable names, sorted and deduplicated.")
        .def(py::self == py::self)
        .def("__str__", &Formula::to_string)
        .def("__repr__", [](const Formula& f) {
            return "parse_formula('" + f.to_string() + "')";
        });

    m.def("parse_formula", &parse_formula, py::arg("text"));

    py::class_<Model>(m, "Model",
                      "A quasi-order with named subsets of its carrier.")
        .def(py::init([](QuasiOrder order,
                         std::map<std::string, PointSet> valuation) {
                 return Model{std::move(order), std::move(valuation)};
             }),
             py::arg("order"),
             py::arg("valuation") = std::map<std::string, PointSet>{})
        .def_readwrite("order", &Model::order)
        .def_readwrite("valuation", &Model::valuation)
        .def("__repr__", [](const Model& m_) {
            return "Model(points=" + std::to_string(m_.order.size()) +
                   ", valuation_names=" +
                   std::to_string(m_.valuation.size()) + ")";
        });

    m.def("evaluate", &eval, py::arg("formula"), py::arg("model"),
          "Denotation of a formula in a model, as a PointSet.");
    m.def("is_valid_in", &is_valid_in, py::arg("formula"), py::arg("model"),
          "True when the denotation is the whole carrier.");

    py::class_<Countermodel>(m, "Countermodel")
        .def_readonly("model", &Countermodel::model)
        .def_readonly("falsified_at", &Countermodel::falsified_at);

    m.def("countermodel_search", &countermodel_search, py::arg("formula"),
          py::arg("max_points"),
          "First model (deterministic enumeration) where the formula fails, "
          "with its least falsifying point; None if it holds everywhere in "
          "range.");

    m.def("axiom_k", &axiom_k, py::arg("phi"), py::arg("psi"));
    m.def("axiom_t", &axiom_t, py::arg("phi"));
    m.def("axiom_four", &axiom_four, py::arg("phi"));
    m.def("axiom_fix", &axiom_fix, py::arg("gamma"), py::arg("pick"));
    m.def("axiom_ind", &axiom_ind, py::arg("gamma"), py::arg("phi"));

    // ── Ready-made models and enumeration ───────────────────────────────
    m.def("chain_model", &chain_model, py::arg("m"),
          "The chain 0 < 1 < ... < m with p0..pm naming singletons and q "
          "the odd positions.");

    py::class_<WitnessReport>(m, "WitnessReport")
        .def_readonly("m", &WitnessReport::m)
        .def_readonly("p0_holds", &WitnessReport::p0_holds)
        .def_readonly("step_holds", &WitnessReport::step_holds)
        .def_readonly("zero_outside_tangle",
                      &WitnessReport::zero_outside_tangle)
        .def_readonly("overall", &WitnessReport::overall)
        .def("__bool__", [](const WitnessReport& r) { return r.overall; });

    m.def("sigma_witness", &sigma_witness, py::arg("m"),
          "Checks that point 0 of chain_model(m) satisfies every "
          "alternation guard yet avoids the tangle of {q, ~q}.");
    m.def("add_root", &add_root, py::arg("model"),
          "Adds a fresh root that reaches every point.");
    m.def("enumerate_quasiorders", &enumerate_quasiorders, py::arg("n"),
          "Every quasi-order on n labeled points, in canonical order.");
    m.def("random_quasiorder", &random_quasiorder, py::arg("n"),
          py::arg("seed"), py::arg("edge_density"),
          "Deterministic seeded random quasi-order.");

    // ── Algebra views ───────────────────────────────────────────────────
    py::class_<ClosureTable>(m, "ClosureTable",
                             "A closure algebra tabulated by what closure "
                             "does to each atom.")
        .def(py::init([](int atom_count, std::vector<PointSet> atom_closure) {
                 return ClosureTable{atom_count, std::move(atom_closure)};
             }),
             py::arg("atom_count"), py::arg("atom_closure"))
        .def_readwrite("atom_count", &ClosureTable::atom_count)
        .def_readwrite("atom_closure", &ClosureTable::atom_closure)
        .def("validate", &ClosureTable::validate);

    m.def("table_to_order", &table_to_order, py::arg("table"));
    m.def("order_to_table", &order_to_table, py::arg("order"));
    m.def("point_generator", &point_generator, py::arg("order"),
          "Least point whose successors cover the carrier, or None.");
    m.def("is_point_generated", &is_point_generated, py::arg("order"));
    m.def("is_well_connected", &is_well_connected, py::arg("order"));

    py::class_<RelativizedModel>(m, "RelativizedModel")
        .def_readonly("model", &RelativizedModel::model)
        .def_readonly("parent_index", &RelativizedModel::parent_index);

    m.def("relativize", &relativize, py::arg("model"), py::arg("alpha"),
          "Restricts a model to an open subset, renumbering the survivors.");

    py::class_<BoundedMorphism>(m, "BoundedMorphism",
                                "A point map between two frames; map[x] is "
                                "the codomain point assigned to x.")
        .def(py::init([](QuasiOrder domain, QuasiOrder codomain,
                         std::vector<int> map) {
                 return BoundedMorphism{std::move(domain), std::move(codomain),
                                        std::move(map)};
             }),
             py::arg("domain"), py::arg("codomain"), py::arg("map"))
        .def_readwrite("domain", &BoundedMorphism::domain)
        .def_readwrite("codomain", &BoundedMorphism::codomain)
        .def_readwrite("map", &BoundedMorphism::map);

    m.def("preimage", &preimage, py::arg("morphism"), py::arg("codomain_set"));
    m.def("check_bounded_morphism", &check_bounded_morphism,
          py::arg("morphism"));
    m.def(
        "check_hom_preserves_tangle",
        [](const BoundedMorphism& bm, const std::vector<PointSet>& gamma) {
            return check_hom_preserves_tangle(bm, family_of(gamma));
        },
        py::arg("morphism"), py::arg("gamma"),
        "For a valid bounded morphism, preimage of the codomain tangle "
        "equals the domain tangle of the preimages.");

    py::class_<SubalgebraView>(m, "SubalgebraView",
                               "A partition-generated Boolean subalgebra "
                               "carrying its own closure on elements.")
        .def(py::init<int, std::vector<PointSet>, std::vector<PointSet>>(),
             py::arg("carrier_size"), py::arg("blocks"),
             py::arg("block_closures"))
        .def_static("from_order", &SubalgebraView::from_order,
                    py::arg("order"), py::arg("blocks"))
        .def_property_readonly("carrier_size", &SubalgebraView::carrier_size)
        .def_property_readonly("blocks", &SubalgebraView::blocks)
        .def("is_element", &SubalgebraView::is_element, py::arg("a"))
        .def("closure_on_elements", &SubalgebraView::closure_on_elements,
             py::arg("a"))
        .def("least_element_containing",
             &SubalgebraView::least_element_containing, py::arg("b"))
        .def("elements", &SubalgebraView::elements);

    m.def("upper_macneille", &upper_macneille, py::arg("view"), py::arg("b"),
          "Extends the subalgebra closure to arbitrary subsets from above.");

    py::class_<DissectWitness>(m, "DissectWitness")
        .def_readonly("open_parts", &DissectWitness::open_parts)
        .def_readonly("residual_parts", &DissectWitness::residual_parts);

    m.def("dissect_witness_search", &dissect_witness_search, py::arg("order"),
          py::arg("alpha"), py::arg("r"), py::arg("s"),
          "First partition of the open set alpha into r open and s residual "
          "parts meeting the closure conditions, or None.");

    // ── Model files ─────────────────────────────────────────────────────
    m.def("parse_model_text", &parse_model_text, py::arg("text"));
    m.def("load_model", &load_model, py::arg("path"));
    m.def("model_to_text", &model_to_text, py::arg("model"));
}
