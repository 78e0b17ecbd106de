#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dnelim/proofs.hpp"

namespace dnelim {

/// Symbol count of f (every i, n and letter occurrence counts one).
inline std::size_t weight(const Formula& f) { return f.weight(); }

/// A priority pattern: a derived formula matching it is weighed `weight`.
struct Guide {
    Formula pattern;
    std::size_t weight = 0;
};

struct SearchConfig {
    std::size_t max_weight = 24;
    std::size_t max_retained = 20000;
    std::size_t max_given = 0;        // 0: no limit
    double time_limit_s = 0;          // 0: no limit
    bool dn_avoidance = false;        // drop deduced formulas containing n(n(_))
    bool subsume_goal = false;        // accept a generalization of the goal
    std::vector<Guide> hints;         // matched up to alphabetic variants
    std::vector<Guide> resonators;    // matched on shape, variables all alike
};

struct SearchResult {
    std::optional<CDProof> proof;
    std::string status;  // "proved", "exhausted", "retained limit", "given limit", "time limit"
    std::size_t generated = 0;
    std::size_t retained = 0;  // including the axioms
    std::size_t given = 0;
    std::size_t retained_with_dn = 0;  // deduced formulas kept that contain a double negation
    double elapsed_s = 0;
};

/// Given-clause saturation by condensed detachment.
SearchResult saturate(const AxiomSystem& system, const Formula& goal, const SearchConfig& cfg = {});

struct ClosureRound {
    int round = 0;
    std::vector<Formula> formulas;  // new up to alphabetic variants, normalized
};

struct ClosureResult {
    std::vector<ClosureRound> rounds;  // rounds[0] holds the axioms
    bool truncated = false;            // stopped at the cap
};

/// Breadth-first closure: round k holds every new conclusion of two formulas
/// from rounds < k, at least one of them from round k-1.
ClosureResult enumerate_closure(const AxiomSystem& system, int rounds, std::size_t cap = 100000);

/// Shape key used for resonators: the formula with every variable printed as '*'.
std::string shape_key(const Formula& f);

}  // namespace dnelim
