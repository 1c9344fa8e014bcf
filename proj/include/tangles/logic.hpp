#pragma once

// Modal formulas over quasi-order models: diamond is closure, box is
// interior, and the tangle connective <t>{...} denotes the tangled
// closure of its argument family.  Formulas are immutable trees with
// structural equality; tangle argument lists are sorted and
// deduplicated on construction so syntactically equal formulas compare
// equal.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tangles/kernel.hpp"

namespace tangles {

class Formula {
public:
    enum class Kind { Bot, Top, Var, Not, And, Or, Imp, Iff, Dia, Box, Tangle };

    static Formula bot();
    static Formula top();

    /// Propositional variable; the name must be a letter followed by
    /// letters, digits or underscores, and must not collide with the
    /// keywords `bot` and `top`.
    static Formula var(std::string name);

    static Formula negation(Formula f);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula implication(Formula lhs, Formula rhs);
    static Formula equivalence(Formula lhs, Formula rhs);
    static Formula diamond(Formula f);
    static Formula box(Formula f);

    /// Tangle connective; `members` must be nonempty and is normalized.
    static Formula tangle(std::vector<Formula> members);

    Kind kind() const { return node_->kind; }
    const std::string& var_name() const;
    const Formula& left() const;
    const Formula& right() const;
    const Formula& operand() const;
    const std::vector<Formula>& tangle_members() const;

    /// Variable names occurring in the formula, sorted and unique.
    std::vector<std::string> variables() const;

    /// Total structural order; equality is compare(..) == 0.
    int compare(const Formula& other) const;
    bool operator==(const Formula& other) const { return compare(other) == 0; }
    bool operator!=(const Formula& other) const { return compare(other) != 0; }
    bool operator<(const Formula& other) const { return compare(other) < 0; }

    /// Canonical text with minimal parentheses; parsing it yields back
    /// an equal formula.
    std::string to_string() const;

private:
    struct Node {
        Kind kind;
        std::string name;
        std::vector<Formula> kids;
    };

    explicit Formula(std::shared_ptr<const Node> node)
        : node_(std::move(node)) {}

    static Formula make(Kind kind, std::string name, std::vector<Formula> kids);

    std::shared_ptr<const Node> node_;
};

/// Parses the surface syntax:
///
///   formula := iff
///   iff     := imp ("<->" imp)*            left associative
///   imp     := or ("->" imp)?              right associative
///   or      := and ("|" and)*
///   and     := unary ("&" unary)*
///   unary   := "~" unary | "<>" unary | "[]" unary
///            | "<t>" "{" formula ("," formula)* "}" | atom
///   atom    := "bot" | "top" | IDENT | "(" formula ")"
///
/// Whitespace is insignificant and "#" starts a comment running to the
/// end of the line.  Errors carry the 0-based character offset.
Formula parse_formula(std::string_view text);

/// A quasi-order together with named subsets.  Variables without an
/// entry denote the empty set.
struct Model {
    QuasiOrder order;
    std::map<std::string, PointSet> valuation;
};

/// Denotation of a formula in a model.
PointSet eval(const Formula& formula, const Model& model);

/// True when the denotation is the whole carrier.
bool is_valid_in(const Formula& formula, const Model& model);

struct Countermodel {
    Model model;
    int falsified_at;
};

/// Searches models with 1 up to max_points points, in the deterministic
/// frame-then-valuation enumeration order, for one where the formula is
/// not valid.  Returns the first hit together with its least falsifying
/// point, or nothing when the formula holds everywhere in range.
std::optional<Countermodel> countermodel_search(const Formula& formula,
                                                int max_points);

// ── Axiom schemes ───────────────────────────────────────────────────────

/// [](phi -> psi) -> ([]phi -> []psi)
Formula axiom_k(Formula phi, Formula psi);

/// phi -> <>phi
Formula axiom_t(Formula phi);

/// <><>phi -> <>phi
Formula axiom_four(Formula phi);

/// <t>{gamma} -> <>(pick & <t>{gamma}); pick must be a member of gamma.
Formula axiom_fix(std::vector<Formula> gamma, const Formula& pick);

/// [](phi -> <>(g1 & phi) & ... & <>(gk & phi)) -> (phi -> <t>{gamma})
Formula axiom_ind(std::vector<Formula> gamma, Formula phi);

enum class AxiomScheme { K, T, Four, Fix, Ind };

struct AxiomInstantiation {
    std::map<std::string, Formula> letters; // "phi" and "psi" slots
    std::vector<Formula> gamma;             // Fix and Ind
    std::optional<Formula> pick;            // Fix only
};

/// Dispatches to the builders above, checking that the instantiation
/// fills every slot the scheme uses.
Formula axiom_instance(AxiomScheme scheme, const AxiomInstantiation& inst);

} // namespace tangles
