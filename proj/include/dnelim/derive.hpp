#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dnelim/detach.hpp"
#include "dnelim/proofs.hpp"

namespace dnelim {

/// Proofs of D1 i(x,x), D2 i(i(x,x),i(n(x),n(x))) and
/// D3 i(i(x,x),i(i(y,y),i(i(x,y),i(x,y)))) in one system.
struct DKit {
    AxiomSystem system;
    CDProof d1, d2, d3;
};

/// Checks the three proofs and their conclusions; throws Error otherwise.
DKit make_dkit(const AxiomSystem& system, CDProof d1, CDProof d2, CDProof d3);
/// Kit assembled from the bundled listings: "L", "A" or "H".
const DKit& builtin_dkit(std::string_view system);

/// Bundled listing text and repair file by stem (e.g. "l_d5").
std::optional<std::string_view> builtin_listing(std::string_view stem);
std::optional<std::string_view> builtin_repairs(std::string_view stem);
std::vector<std::string> builtin_listing_stems();
/// Parses a bundled listing with its directives and repairs.
CDProof load_builtin_listing(std::string_view stem);

/// Incremental construction of a CD proof. Lines are kept in order, each
/// exact written formula at most once; handles are line indices.
class ProofBuilder {
public:
    explicit ProofBuilder(AxiomSystem system, std::vector<Formula> assumptions = {});
    /// Uses kit's system; identity() and instance() draw on the kit proofs.
    explicit ProofBuilder(const DKit& kit, std::vector<Formula> assumptions = {});

    int axiom(std::string_view label);
    int assumption(std::size_t k);
    /// Condensed detachment with renaming apart. The line is written as
    /// `written` when given (must be a variant of the result).
    int cd(int major, int minor, std::optional<Formula> written = std::nullopt);
    /// Detachment with premisses unified as written.
    int cd_literal(int major, int minor, std::optional<Formula> written = std::nullopt);
    /// The same justification as `line`, written as the variant `written`.
    int respell(int line, const Formula& written);

    /// Copies p's lines. Axiom labels of p missing from this system are
    /// resolved through `lemmas` (label -> line proving a variant of it).
    /// Returns the line of p's conclusion.
    int import(const CDProof& p, const std::map<std::string, int>& lemmas = {});

    /// Line written exactly i(alpha,alpha); alpha must not contain constants.
    int identity(const Formula& alpha);
    /// Line written exactly `inst`, an instance of the formula at `source`.
    int instance(int source, const Formula& inst);

    const Formula& formula(int line) const { return lines_.at(static_cast<std::size_t>(line)).formula; }
    std::size_t size() const { return lines_.size(); }
    const AxiomSystem& system() const { return system_; }

    /// Proof of `conclusion`: its ancestors only, numbered 1, 2, ...
    CDProof build(int conclusion) const;

private:
    int push(CDLine line);
    int kit_line(int which);

    AxiomSystem system_;
    std::vector<Formula> assumptions_;
    const DKit* kit_ = nullptr;
    std::vector<CDLine> lines_;  // ids are indices; premisses are Ref::to_line
    std::map<std::string, int> by_formula_;
    std::map<std::string, int> by_step_;
    int kit_lines_[3] = {-1, -1, -1};
};

/// Proof of i(alpha,alpha) by induction on alpha. Constants in alpha are
/// abstracted to variables first (see abstract_constants), so the proof
/// concludes a generalization in that case.
CDProof prove_identity(const Formula& alpha, const DKit& kit);

/// Proof of `instance` (constants abstracted) from i(instance,instance) and
/// the axiom. Throws Error when `axiom` is not (a variant of) an axiom of
/// the kit's system or `instance` is not an instance of it.
CDProof prove_instance(const Formula& axiom, const Formula& instance, const DKit& kit);

/// Proof of A·sigma from a proof of A, by the induction on proof length
/// (axiom lines become instance proofs, detachments are replayed).
CDProof close_under_substitution(const CDProof& p, const Substitution& sigma, const DKit& kit);

}  // namespace dnelim
