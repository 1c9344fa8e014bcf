#include "tangles/logic.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "tangles/constructions.hpp"

namespace tangles {

// ── Formula construction ────────────────────────────────────────────────

Formula Formula::make(Kind kind, std::string name, std::vector<Formula> kids) {
    return Formula(std::make_shared<const Node>(
        Node{kind, std::move(name), std::move(kids)}));
}

Formula Formula::bot() { return make(Kind::Bot, "", {}); }
Formula Formula::top() { return make(Kind::Top, "", {}); }

Formula Formula::var(std::string name) {
    const bool shaped =
        !name.empty() && std::isalpha(static_cast<unsigned char>(name[0])) &&
        std::all_of(name.begin() + 1, name.end(), [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
        });
    if (!shaped) {
        throw input_error("bad variable name '" + name + "'");
    }
    if (name == "bot" || name == "top") {
        throw input_error("variable name '" + name + "' is reserved");
    }
    return make(Kind::Var, std::move(name), {});
}

Formula Formula::negation(Formula f) {
    return make(Kind::Not, "", {std::move(f)});
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
    return make(Kind::And, "", {std::move(lhs), std::move(rhs)});
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
    return make(Kind::Or, "", {std::move(lhs), std::move(rhs)});
}

Formula Formula::implication(Formula lhs, Formula rhs) {
    return make(Kind::Imp, "", {std::move(lhs), std::move(rhs)});
}

Formula Formula::equivalence(Formula lhs, Formula rhs) {
    return make(Kind::Iff, "", {std::move(lhs), std::move(rhs)});
}

Formula Formula::diamond(Formula f) {
    return make(Kind::Dia, "", {std::move(f)});
}

Formula Formula::box(Formula f) { return make(Kind::Box, "", {std::move(f)}); }

Formula Formula::tangle(std::vector<Formula> members) {
    if (members.empty()) {
        throw input_error("tangle needs at least one member");
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return make(Kind::Tangle, "", std::move(members));
}

// ── Accessors ───────────────────────────────────────────────────────────

namespace {

[[noreturn]] void wrong_shape(const char* want) {
    throw input_error(std::string("formula does not have ") + want);
}

} // namespace

const std::string& Formula::var_name() const {
    if (node_->kind != Kind::Var) wrong_shape("a variable name");
    return node_->name;
}

const Formula& Formula::left() const {
    if (node_->kids.size() != 2) wrong_shape("two operands");
    return node_->kids[0];
}

const Formula& Formula::right() const {
    if (node_->kids.size() != 2) wrong_shape("two operands");
    return node_->kids[1];
}

const Formula& Formula::operand() const {
    if (node_->kids.size() != 1 || node_->kind == Kind::Tangle) {
        wrong_shape("a single operand");
    }
    return node_->kids[0];
}

const std::vector<Formula>& Formula::tangle_members() const {
    if (node_->kind != Kind::Tangle) wrong_shape("tangle members");
    return node_->kids;
}

std::vector<std::string> Formula::variables() const {
    std::set<std::string> names;
    std::vector<const Node*> stack = {node_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (n->kind == Kind::Var) names.insert(n->name);
        for (const Formula& kid : n->kids) stack.push_back(kid.node_.get());
    }
    return {names.begin(), names.end()};
}

int Formula::compare(const Formula& other) const {
    if (node_ == other.node_) return 0;
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (a.kind == Kind::Var) return a.name.compare(b.name);
    if (a.kids.size() != b.kids.size()) {
        return a.kids.size() < b.kids.size() ? -1 : 1;
    }
    for (std::size_t i = 0; i < a.kids.size(); ++i) {
        const int c = a.kids[i].compare(b.kids[i]);
        if (c != 0) return c;
    }
    return 0;
}

// ── Semantics ───────────────────────────────────────────────────────────

PointSet eval(const Formula& formula, const Model& model) {
    const int n = model.order.size();
    switch (formula.kind()) {
        case Formula::Kind::Bot:
            return PointSet(n);
        case Formula::Kind::Top:
            return PointSet::full(n);
        case Formula::Kind::Var: {
            const auto it = model.valuation.find(formula.var_name());
            if (it == model.valuation.end()) return PointSet(n);
            if (it->second.carrier_size() != n) {
                throw input_error("valuation for '" + formula.var_name() +
                                  "' does not match the carrier");
            }
            return it->second;
        }
        case Formula::Kind::Not:
            return eval(formula.operand(), model).complement();
        case Formula::Kind::And:
            return eval(formula.left(), model) & eval(formula.right(), model);
        case Formula::Kind::Or:
            return eval(formula.left(), model) | eval(formula.right(), model);
        case Formula::Kind::Imp:
            return eval(formula.left(), model).complement() |
                   eval(formula.right(), model);
        case Formula::Kind::Iff: {
            const PointSet l = eval(formula.left(), model);
            const PointSet r = eval(formula.right(), model);
            return (l & r) | (l.complement() & r.complement());
        }
        case Formula::Kind::Dia:
            return closure(model.order, eval(formula.operand(), model));
        case Formula::Kind::Box:
            return interior(model.order, eval(formula.operand(), model));
        case Formula::Kind::Tangle: {
            std::vector<PointSet> sets;
            sets.reserve(formula.tangle_members().size());
            for (const Formula& m : formula.tangle_members()) {
                sets.push_back(eval(m, model));
            }
            return tangle_gfp(model.order, GammaFamily(std::move(sets)));
        }
    }
    throw input_error("malformed formula node");
}

bool is_valid_in(const Formula& formula, const Model& model) {
    return eval(formula, model) == PointSet::full(model.order.size());
}

std::optional<Countermodel> countermodel_search(const Formula& formula,
                                                int max_points) {
    if (max_points < 1) {
        throw input_error("countermodel search needs at least one point");
    }
    if (max_points > 5) {
        throw bound_error("countermodel search enumerates frames with at "
                          "most 5 points");
    }
    const std::vector<std::string> vars = formula.variables();
    for (int n = 1; n <= max_points; ++n) {
        const std::uint64_t combos =
            std::uint64_t{1} << (static_cast<std::uint64_t>(n) * vars.size());
        for (const QuasiOrder& order : enumerate_quasiorders(n)) {
            for (std::uint64_t combo = 0; combo < combos; ++combo) {
                Model model{order, {}};
                std::uint64_t rest = combo;
                // First variable takes the most significant block, so
                // valuations advance lexicographically in sorted name
                // order.
                for (std::size_t v = vars.size(); v-- > 0;) {
                    model.valuation.emplace(
                        vars[vars.size() - 1 - v],
                        PointSet::from_mask(
                            n, (rest >> (v * n)) & ((std::uint64_t{1} << n) - 1)));
                    rest &= (std::uint64_t{1} << (v * n)) - 1;
                }
                const PointSet denotation = eval(formula, model);
                if (denotation != PointSet::full(n)) {
                    const int at = denotation.complement().least();
                    return Countermodel{std::move(model), at};
                }
            }
        }
    }
    return std::nullopt;
}

// ── Axiom schemes ───────────────────────────────────────────────────────

Formula axiom_k(Formula phi, Formula psi) {
    Formula premise = Formula::box(Formula::implication(phi, psi));
    return Formula::implication(
        std::move(premise),
        Formula::implication(Formula::box(std::move(phi)),
                             Formula::box(std::move(psi))));
}

Formula axiom_t(Formula phi) {
    return Formula::implication(phi, Formula::diamond(phi));
}

Formula axiom_four(Formula phi) {
    return Formula::implication(Formula::diamond(Formula::diamond(phi)),
                                Formula::diamond(phi));
}

Formula axiom_fix(std::vector<Formula> gamma, const Formula& pick) {
    Formula t = Formula::tangle(std::move(gamma));
    const auto& members = t.tangle_members();
    if (std::find(members.begin(), members.end(), pick) == members.end()) {
        throw input_error("picked formula is not a member of the family");
    }
    return Formula::implication(
        t, Formula::diamond(Formula::conjunction(pick, t)));
}

Formula axiom_ind(std::vector<Formula> gamma, Formula phi) {
    Formula t = Formula::tangle(std::move(gamma));
    std::optional<Formula> steps;
    for (const Formula& g : t.tangle_members()) {
        Formula step = Formula::diamond(Formula::conjunction(g, phi));
        steps = steps.has_value()
                    ? Formula::conjunction(std::move(*steps), std::move(step))
                    : std::move(step);
    }
    Formula premise = Formula::box(Formula::implication(phi, std::move(*steps)));
    return Formula::implication(
        std::move(premise), Formula::implication(std::move(phi), std::move(t)));
}

Formula axiom_instance(AxiomScheme scheme, const AxiomInstantiation& inst) {
    const auto letter = [&inst](const char* name) -> const Formula& {
        const auto it = inst.letters.find(name);
        if (it == inst.letters.end()) {
            throw input_error(std::string("missing letter '") + name +
                              "' in axiom instantiation");
        }
        return it->second;
    };
    const auto family = [&inst]() -> const std::vector<Formula>& {
        if (inst.gamma.empty()) {
            throw input_error("axiom instantiation needs a nonempty family");
        }
        return inst.gamma;
    };
    switch (scheme) {
        case AxiomScheme::K:
            return axiom_k(letter("phi"), letter("psi"));
        case AxiomScheme::T:
            return axiom_t(letter("phi"));
        case AxiomScheme::Four:
            return axiom_four(letter("phi"));
        case AxiomScheme::Fix: {
            if (!inst.pick.has_value()) {
                throw input_error("fix instantiation needs a picked member");
            }
            return axiom_fix(family(), *inst.pick);
        }
        case AxiomScheme::Ind:
            return axiom_ind(family(), letter("phi"));
    }
    throw input_error("unknown axiom scheme");
}

} // namespace tangles
