#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dnelim/formula.hpp"

namespace dnelim {

/// Finite map from variables to formulas.
///
/// Results returned by unify() and match_instance() are normalized: no domain
/// variable occurs in any bound formula, so applying twice equals applying once.
class Substitution {
public:
    Substitution() = default;

    void bind(Symbol var, Formula value);
    const Formula* find(Symbol var) const;
    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const std::map<Symbol, Formula>& bindings() const { return map_; }

    Formula apply(const Formula& f) const;
    /// this then other: (f·this)·other.
    Substitution then(const Substitution& other) const;
    /// Drops bindings whose variable is not in `keep`.
    Substitution restricted(const std::vector<Symbol>& keep) const;
    bool is_idempotent() const;

    /// "{x↦f, y↦g}" with keys ordered by name.
    std::string str() const;

    friend bool operator==(const Substitution& a, const Substitution& b) { return a.map_ == b.map_; }

private:
    std::map<Symbol, Formula> map_;
};

/// Most general unifier with occurs check; nullopt on clash or cycle.
std::optional<Substitution> unify(const Formula& a, const Formula& b);

/// One-sided matching: σ with dom ⊆ vars(pattern) and pattern·σ = target.
std::optional<Substitution> match_instance(const Formula& pattern, const Formula& target);

/// True iff some substitution maps `general` onto `specific`.
inline bool subsumes(const Formula& general, const Formula& specific) {
    return match_instance(general, specific).has_value();
}

/// Alphabetic variant of `rename` sharing no variables with `keep`. When the
/// two are already disjoint the formula is returned unchanged; otherwise every
/// variable is renamed to the smallest free name v0, v1, ... in order of
/// first occurrence.
Formula rename_apart(const Formula& keep, const Formula& rename);
/// Same as rename_apart but also reports the renaming applied.
Formula rename_apart(const Formula& keep, const Formula& rename, Substitution& renaming);

bool is_alphabetic_variant(const Formula& a, const Formula& b);

/// The renaming mapping `from` onto its variant `to`, if they are variants.
std::optional<Substitution> variant_renaming(const Formula& from, const Formula& to);

/// Renames variables by first occurrence to x, y, z, u, v, w, v6, v7, ...
/// Two formulas are alphabetic variants iff their normal forms are equal.
Formula normalize_variables(const Formula& f);
Formula normalize_variables(const Formula& f, Substitution& renaming);

/// Variant-invariant key suitable for hashing.
std::string variant_key(const Formula& f);

/// Replaces every constant letter by a variable of the same spelling
/// prefixed with '_' (consistently, so sharing is kept).
Formula abstract_constants(const Formula& f);
/// Inverse of abstract_constants for the given constant symbols.
Substitution constant_restoring_substitution(const Formula& original);

// ---- double negations ----

using Path = std::vector<int>;  // 0 = argument/antecedent, 1 = consequent

struct DnOccurrence {
    Formula subformula;          // q in n(n(q))
    std::vector<Path> positions; // roots of literal n(n(q)) subterms
};

/// All n(n(q)) occurrences grouped by q (literal equality), preorder.
std::vector<DnOccurrence> dn_occurrences(const Formula& f);
bool has_double_negation(const Formula& f);
/// Distinct doubly negated subformulas n(n(q)) of f.
std::vector<Formula> dn_subformulas(const Formula& f);
/// Accumulating form: subformulas already in `visited` are skipped, so a scan
/// over many formulas that share structure visits each node once.
void collect_dn_subformulas(const Formula& f, std::unordered_set<const void*>& visited,
                            std::unordered_set<Formula, FormulaHash>& found, std::vector<Formula>& out);

/// Replaces n(n(q)) by q for every selected q, innermost first, to a fixed
/// point. Throws Error if a selected q does not occur doubly negated in f.
Formula erase_double_negations(const Formula& f, const std::vector<Formula>& selection);
/// As above without the occurrence precondition.
Formula erase_selected(const Formula& f, const std::vector<Formula>& selection);

/// erase_selected for one selection over many formulas. Results are cached
/// per shared node, so formulas that share structure are erased once.
class SelectionEraser {
public:
    explicit SelectionEraser(std::vector<Formula> selection);
    Formula operator()(const Formula& f);

private:
    Formula pass(const Formula& f);
    std::vector<Formula> selection_;
    std::unordered_set<Formula, FormulaHash> chosen_;
    // node -> (source kept alive, erased)
    std::unordered_map<const void*, std::pair<Formula, Formula>> memo_;
};

}  // namespace dnelim
