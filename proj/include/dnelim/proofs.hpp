#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dnelim/kernel.hpp"

namespace dnelim {

struct Axiom {
    std::string label;
    Formula formula;
};

struct AxiomSystem {
    std::string name;
    std::vector<Axiom> axioms;

    const Axiom* find(std::string_view label) const;
};

/// Built-in systems: L, L*, L+D4D5, A, A*, H, frege, meredith, ulrich.
const AxiomSystem& axiom_system(std::string_view name);
std::vector<std::string> axiom_system_names();

/// Named formulas from the literature (axioms, D1-D5, L4, L5, A6-A8, M, DN1, ...).
std::optional<Formula> named_formula(std::string_view name);
std::vector<std::string> named_formula_names();

// ---------------------------------------------------------------------------
// Condensed-detachment proofs

struct Ref {
    enum class Kind { Line, Axiom, Assumption };
    Kind kind = Kind::Line;
    int line = 0;
    std::string axiom;
    std::size_t assumption = 0;

    static Ref to_line(int id) { return {Kind::Line, id, {}, 0}; }
    static Ref to_axiom(std::string label) { return {Kind::Axiom, 0, std::move(label), 0}; }
    static Ref to_assumption(std::size_t k) { return {Kind::Assumption, 0, {}, k}; }
    std::string str() const;
};

enum class Rule {
    Axiom,       // the formula is (a variant of) the named axiom
    Assumption,  // the formula is assumption #k
    CD,          // condensed detachment, minor renamed apart
    CDLiteral,   // detachment with premisses unified as written
};

struct CDLine {
    int id = 0;
    Rule rule = Rule::CD;
    std::string axiom;         // Rule::Axiom
    std::size_t assumption{};  // Rule::Assumption
    Ref major;                 // Rule::CD / CDLiteral
    Ref minor;
    Formula formula;

    bool deduced() const { return rule == Rule::CD || rule == Rule::CDLiteral; }
};

struct CDProof {
    AxiomSystem system;
    std::vector<Formula> assumptions;  // constant letters only
    std::vector<CDLine> lines;

    const Formula& conclusion() const;
    std::size_t deduced_count() const;
    const CDLine* line(int id) const;
};

struct Verdict {
    bool valid = true;
    std::string where;  // line id or node path of the first failure
    std::string reason;
    std::string expected;
    std::string found;

    static Verdict ok() { return {}; }
    std::string str() const;
};

Verdict check_cd_proof(const CDProof& p);

/// Formula a reference denotes in p (axiom formula, assumption, or line formula).
Formula resolve_ref(const CDProof& p, const Ref& r);

enum class Conclusion { Exact, Generalizes, Unrelated };
/// Exact when p's conclusion is an alphabetic variant of target; Generalizes
/// when target is a proper instance of it.
Conclusion concludes(const CDProof& p, const Formula& target);

// ---------------------------------------------------------------------------
// Modus-ponens proofs

struct MPNode;
using MPTree = std::shared_ptr<const MPNode>;

struct MPNode {
    enum class Kind { AxiomInstance, Assumption, Mp };
    Kind kind;
    Formula formula;
    std::string label;   // AxiomInstance
    Substitution subst;  // AxiomInstance
    MPTree major;        // Mp: proves i(minor, formula)
    MPTree minor;
};

struct MPProof {
    AxiomSystem system;
    std::vector<Formula> assumptions;
    MPTree root;

    const Formula& conclusion() const { return root->formula; }
};

/// Leaf for axiom·subst; throws Error if the label is unknown.
MPTree mp_axiom(const AxiomSystem& system, std::string_view label, Substitution subst);
MPTree mp_assumption(Formula f);
/// Modus ponens; the conclusion is the major's consequent. Throws Error when
/// the major is not an implication whose antecedent is exactly the minor.
MPTree mp_apply(MPTree major, MPTree minor);
/// Unchecked node with an arbitrary formula.
MPTree mp_node(MPTree major, MPTree minor, Formula formula);

Verdict check_mp_proof(const MPProof& p);

/// Node count of the tree form (shared subtrees counted once per reference);
/// saturates at SIZE_MAX.
std::size_t mp_tree_size(const MPTree& t);
/// Distinct node objects.
std::size_t mp_dag_size(const MPTree& t);

// ---------------------------------------------------------------------------
// Double-negation reports

struct DnStepReport {
    std::string step;                // line id or node path
    std::vector<Formula> dn;         // doubly negated subformulas, one per variant class
    std::vector<Formula> violations; // members of dn not allowed
};

struct DnReport {
    std::vector<DnStepReport> steps;  // deduced steps only
    std::vector<Formula> aggregate;   // union of dn, one per variant class
    std::vector<Formula> violations;

    bool dn_free() const { return aggregate.empty(); }
    bool violation_free() const { return violations.empty(); }
    std::string str() const;
};

/// `allowed` holds doubly negated formulas n(n(q)); a step's double negation
/// is permitted when it is an alphabetic variant of an allowed one.
DnReport dn_report(const CDProof& p, const std::vector<Formula>& allowed = {});
/// With include_leaves the axiom-instance leaves are reported too.
DnReport dn_report(const MPProof& p, const std::vector<Formula>& allowed = {}, bool include_leaves = false);

/// Every doubly negated subformula of the given formulas, for use as `allowed`.
std::vector<Formula> dn_allowance(const std::vector<Formula>& formulas);

// ---------------------------------------------------------------------------
// Text listings ("NN [ref,ref] formula") and repairs

struct LineKey {
    int id = 0;
    int occurrence = 1;  // 1-based, for duplicated ids
    auto operator<=>(const LineKey&) const = default;
};

/// Corrections applied while parsing a listing. Text form, one per line:
///   ref <id>[#k] <token> -> <replacement>
///   formula <id>[#k] -> <formula text>
///   renumber <id>[#k] -> <new id>
///   # comment
struct RepairTable {
    std::map<std::pair<LineKey, std::string>, std::string> refs;
    std::map<LineKey, std::string> formulas;
    std::map<LineKey, int> renumber;

    bool empty() const { return refs.empty() && formulas.empty() && renumber.empty(); }
};

RepairTable parse_repairs(std::string_view text);

/// Outcome of re-checking one repair entry against its listing.
struct RepairCheck {
    std::string entry;                  // repair in its text form
    bool original_fails = false;        // without this entry the line is rejected
    bool repaired_checks = false;       // with it the line checks
    std::vector<std::string> alternatives;  // ref repairs: every axiom or earlier line that would check
    bool unique = true;                     // ref repairs: the replacement is the only alternative

    bool ok() const;
};

std::vector<RepairCheck> validate_repairs(std::string_view text, const AxiomSystem& system, const RepairTable& repairs,
                                          const ConstantSet& constants = {});

struct ListingHeader {
    std::string system;
    std::string goal;
    std::string repairs;
    std::vector<std::string> constants;
    std::vector<std::string> assumptions;
};

ListingHeader parse_listing_header(std::string_view text);

/// Parses listing lines; '%' lines are directives and are ignored here.
/// Integer tokens refer to earlier line ids, other tokens to axiom labels.
CDProof parse_proof_listing(std::string_view text, const AxiomSystem& system, const RepairTable& repairs = {},
                            const ConstantSet& constants = {});

/// Loads a listing file with its directives and repair file (the `repairs`
/// directive, else a sibling <stem>.repairs when present).
CDProof load_listing_file(const std::string& path);

// ---------------------------------------------------------------------------
// Structured export (JSON, one proof per file, byte-stable)

std::string export_cd_proof(const CDProof& p);
CDProof import_cd_proof(std::string_view json_text);
std::string export_mp_proof(const MPProof& p);
MPProof import_mp_proof(std::string_view json_text);

/// Listing text ("NN [major,minor] formula") with system, constant and
/// assumption directives; parse_proof_listing reads it back.
std::string format_cd_proof(const CDProof& p);

/// Loads a CD proof from .json export or listing text, by content.
CDProof load_cd_proof_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace dnelim
