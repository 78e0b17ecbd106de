#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dnelim/proofs.hpp"

namespace dnelim {

namespace detail {
struct GNode;
}

/// Formula of the sequent calculus: atoms, negation and implication.
class GFormula {
public:
    enum class Kind { Atom, Not, Arrow };

    GFormula() = default;
    static GFormula atom(std::string name, bool constant = false);
    static GFormula negation(GFormula a);
    static GFormula arrow(GFormula a, GFormula b);

    Kind kind() const;
    const std::string& name() const;  // Atom
    bool is_constant() const;         // Atom
    const GFormula& left() const;     // Not: operand; Arrow: antecedent
    const GFormula& right() const;    // Arrow: consequent
    bool empty() const { return !node_; }

    std::string str() const;  // "~A", "(A -> B)"
    friend bool operator==(const GFormula& a, const GFormula& b);
    friend bool operator!=(const GFormula& a, const GFormula& b) { return !(a == b); }
    friend bool operator<(const GFormula& a, const GFormula& b) { return a.str() < b.str(); }

private:
    explicit GFormula(std::shared_ptr<const detail::GNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::GNode> node_;
};

/// i(a,b) -> A -> B, n(a) -> ~A; letters keep their variable/constant kind.
GFormula translate_to_g(const Formula& f);
Formula translate_to_h(const GFormula& f);

struct Sequent {
    std::vector<GFormula> antecedent;
    std::optional<GFormula> succedent;  // at most one formula

    std::string str() const;
    friend bool operator==(const Sequent&, const Sequent&) = default;
};

/// "a, i(a,b) => b"; "=>" with nothing after it is the empty succedent.
/// Letters listed in `constants` are constants.
Sequent parse_sequent(std::string_view text, const ConstantSet& constants = {});

enum class GRule {
    Axiom,          // Gamma, A => A
    ImpLeft,        // Delta => A ; B, Gamma => Theta  /  A -> B, Delta, Gamma => Theta
    ImpRight,       // A, Gamma => B  /  Gamma => A -> B
    NotLeft,        // Gamma => A  /  ~A, Gamma => []
    NotRight,       // A, Gamma => []  /  Gamma => ~A
    Contraction,    // C, C, Gamma => Theta  /  C, Gamma => Theta
    ThinningLeft,   // Gamma => Theta  /  C, Gamma => Theta
    ThinningRight,  // Gamma => []  /  Gamma => C
    Interchange,    // Delta, C, D, Gamma => Theta  /  Delta, D, C, Gamma => Theta
};

const char* rule_name(GRule r);

struct GProof;
using GTree = std::shared_ptr<const GProof>;

struct GProof {
    GRule rule;
    Sequent conclusion;
    std::vector<GTree> premisses;
};

/// Checks every node against its rule schema (no cut).
Verdict check_gproof(const GTree& g);
std::size_t gproof_size(const GTree& g);
/// Every formula in g is a subformula of a formula of g's final sequent.
bool has_subformula_property(const GTree& g);

/// Cut-free backward search with loop checking; nullptr when not provable.
GTree prove_sequent(const Sequent& s);

/// M-proof over H of i(b,a) from the assumptions of p other than b.
/// Throws Error if some assumption contains a variable.
MPProof deduction_theorem_m(const MPProof& p, const Formula& b);

/// M-proof over H from the translated antecedent of g's final sequent; of the
/// translated succedent, or of `target` when the succedent is empty.
MPProof extract_m_proof(const GTree& g, const std::optional<Formula>& target = std::nullopt);

/// CD proof of b over H with assumptions delta (constants only), through the
/// sequent calculus; Error when delta does not entail b intuitionistically.
CDProof h_dn_eliminate(const Formula& b, const std::vector<Formula>& delta = {});

}  // namespace dnelim
