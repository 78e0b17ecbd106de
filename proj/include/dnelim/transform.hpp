#pragma once

#include <map>
#include <string>
#include <vector>

#include "dnelim/derive.hpp"

namespace dnelim {

/// One application of the closure rule: every occurrence of each variable in
/// `vars` (all occurring negated in f) becomes n(x), then the double
/// negations created that way are cancelled.
Formula star_variant(const Formula& f, const std::vector<Symbol>& vars);

/// Closure of the axioms under star_variant, originals first, one formula
/// per variant class, iterated to a fixed point.
std::vector<Formula> star_closure(const AxiomSystem& system);

/// base plus the new closure formulas. New axioms take the name of a known
/// formula with the base's label prefix when one is a variant (L4, A6, ...),
/// otherwise "<base>*<k>".
AxiomSystem star_system(const AxiomSystem& base);

struct StarKit {
    AxiomSystem base;
    AxiomSystem star;                          // base axioms followed by star_axioms
    std::vector<Formula> star_axioms;          // closure minus base
    std::map<std::string, CDProof> star_proofs;  // label in star -> proof over base
};

/// Validates that every star axiom has a proof over base that checks,
/// concludes a variant of it, and is free of double negations.
StarKit make_star_kit(const AxiomSystem& base, std::map<std::string, CDProof> proofs);
/// Kit from bundled listings: "L" (L4, L5) or "A" (A6, A7, A8).
const StarKit& builtin_star_kit(std::string_view base);

/// The q's whose double negations n(n(q)) are erased.
struct Selection {
    std::vector<Formula> chosen;
};

/// Throws Error unless every chosen q occurs doubly negated in b.
void validate_selection(const Formula& b, const Selection& s);
/// b with the selection erased.
Formula apply_selection(const Formula& b, const Selection& s);

/// Modus-ponens proof from axiom instances; conclusion = p's last line
/// formula as written, then theta applied.
MPProof pushback(const CDProof& p, const Substitution& theta = {});

/// Erases the selection in every node formula. Leaves are re-matched against
/// `target` (typically the star system); Error if some leaf is not an
/// instance of any of its axioms.
MPProof erase_in_mp(const MPProof& p, const Selection& s, const AxiomSystem& target);

/// CD proof of the MP proof's conclusion: instance proofs of its leaves
/// followed by its modus ponens steps as detachments. Leaves labelled with
/// an axiom absent from kit.system are taken from `lemmas` (label -> proof).
CDProof assemble_cd(const MPProof& p, const DKit& kit, const std::map<std::string, CDProof>& lemmas = {});

struct Elimination {
    CDProof proof;        // over kit.base, concluding b_star
    Formula b_star;
    MPProof pushed;       // pushback of the input
    MPProof erased;       // after erasing the selection
    MPProof cleaned;      // after erasing every double negation outside b_star
};

/// Strong double-negation elimination for a proof over star.base.
Elimination dn_eliminate_full(const CDProof& p, const Selection& s, const StarKit& star, const DKit& dkit);
CDProof dn_eliminate(const CDProof& p, const Selection& s, const StarKit& star, const DKit& dkit);

/// Replaces axioms of p's system by proofs of them over `target`: each label
/// of p missing from target must have an entry in `lemma_proofs`.
CDProof transfer_proof(const CDProof& p, const AxiomSystem& target, const std::map<std::string, CDProof>& lemma_proofs);

}  // namespace dnelim
