#pragma once

#include <optional>

#include "dnelim/kernel.hpp"

namespace dnelim {

/// Bookkeeping of one detachment step, enough to push its unifier back to
/// the premisses.
struct Detachment {
    Formula conclusion;           // variables normalized (x, y, z, ...)
    Substitution minor_renaming;  // minor -> renamed-apart minor (empty for literal steps)
    Substitution unifier;         // mgu over the major's and renamed minor's variables
    Substitution normalization;   // unifier result -> normalized conclusion
};

/// Condensed detachment of minor against major = i(A,B).
///
/// The minor premiss is renamed apart from the major before unifying it with A.
/// With `literal` set, the premisses are unified exactly as written, so
/// variables shared between them stay identified (detachment without renaming).
std::optional<Detachment> detach(const Formula& major, const Formula& minor, bool literal = false);

/// Conclusion only; nullopt when the major is not an implication or the
/// antecedent does not unify with the minor.
std::optional<Formula> condensed_detach(const Formula& major, const Formula& minor);

/// Substitutions instantiating the premisses of a detachment step so that
/// modus ponens on the instances concludes written·theta exactly, where
/// `written` is a variant of the step's conclusion. nullopt when the step
/// does not detach to a variant of `written`.
struct PremissInstances {
    Substitution major;
    Substitution minor;
};
std::optional<PremissInstances> push_back_step(const Formula& major, const Formula& minor, bool literal,
                                               const Formula& written, const Substitution& theta);

}  // namespace dnelim
