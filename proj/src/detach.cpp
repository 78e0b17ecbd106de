#include "dnelim/detach.hpp"

namespace dnelim {

std::optional<Detachment> detach(const Formula& major, const Formula& minor, bool literal) {
    if (major.empty() || minor.empty() || !major.is_impl()) return std::nullopt;
    Detachment d;
    Formula m = literal ? minor : rename_apart(major, minor, d.minor_renaming);
    auto mgu = unify(major.antecedent(), m);
    if (!mgu) return std::nullopt;
    d.unifier = std::move(*mgu);
    d.conclusion = normalize_variables(d.unifier.apply(major.consequent()), d.normalization);
    return d;
}

std::optional<Formula> condensed_detach(const Formula& major, const Formula& minor) {
    auto d = detach(major, minor);
    if (!d) return std::nullopt;
    return d->conclusion;
}

std::optional<PremissInstances> push_back_step(const Formula& major, const Formula& minor, bool literal,
                                               const Formula& written, const Substitution& theta) {
    auto d = detach(major, minor, literal);
    if (!d) return std::nullopt;
    auto pi = variant_renaming(d->conclusion, written);
    if (!pi) return std::nullopt;
    Substitution tail = d->normalization.then(*pi).then(theta);
    PremissInstances out;
    out.major = d->unifier.then(tail);
    out.minor = d->minor_renaming.then(d->unifier).then(tail);
    return out;
}

}  // namespace dnelim
