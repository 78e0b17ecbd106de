#pragma once

#include <string>
#include <vector>

#include "dnelim/proofs.hpp"

namespace dnelim {

/// One bundled listing with the facts it is expected to satisfy.
struct CorpusEntry {
    std::string id;
    std::string listing;
    std::string repairs;  // empty: none
    std::string system;
    std::string goal;     // named formula, may be empty
    bool expected_valid = true;
    std::size_t expected_deduced = 0;
    bool dn_free = false;
};

/// Entries of the bundled corpus.json.
std::vector<CorpusEntry> builtin_corpus();

struct CorpusResult {
    CorpusEntry entry;
    bool valid = false;
    std::string verdict;
    std::size_t deduced = 0;
    bool goal_ok = true;
    bool dn_free = false;
    std::vector<RepairCheck> repairs;
    std::string error;

    bool ok() const;
};

CorpusResult verify_corpus_entry(const CorpusEntry& e);
std::vector<CorpusResult> verify_corpus();

}  // namespace dnelim
