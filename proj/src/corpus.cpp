#include "dnelim/corpus.hpp"

#include <algorithm>
#include <map>
#include <string_view>

#include "json.hpp"

#include "dnelim/derive.hpp"

namespace dnelim {

namespace detail {
const std::map<std::string, std::string_view>& corpus_files();
}

std::vector<CorpusEntry> builtin_corpus() {
    auto& files = detail::corpus_files();
    auto it = files.find("corpus.json");
    if (it == files.end()) throw Error("corpus manifest missing");
    auto j = nlohmann::json::parse(it->second);
    std::vector<CorpusEntry> out;
    for (auto& e : j.at("entries")) {
        CorpusEntry c;
        c.id = e.at("id").get<std::string>();
        c.listing = e.at("listing").get<std::string>();
        if (!e.at("repairs").is_null()) c.repairs = e.at("repairs").get<std::string>();
        c.system = e.at("system").get<std::string>();
        if (!e.at("goal").is_null()) c.goal = e.at("goal").get<std::string>();
        c.expected_valid = e.at("expected_valid").get<bool>();
        c.expected_deduced = e.at("expected_deduced").get<std::size_t>();
        c.dn_free = e.at("dn_free").get<bool>();
        out.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t k = i + 1; k < out.size(); ++k)
            if (out[i].id == out[k].id) throw Error("corpus: duplicate id " + out[i].id);
    return out;
}

bool CorpusResult::ok() const {
    if (!error.empty()) return false;
    if (valid != entry.expected_valid) return false;
    if (deduced != entry.expected_deduced || !goal_ok) return false;
    if (entry.dn_free && !dn_free) return false;
    return std::all_of(repairs.begin(), repairs.end(), [](const RepairCheck& r) { return r.ok(); });
}

CorpusResult verify_corpus_entry(const CorpusEntry& e) {
    CorpusResult r;
    r.entry = e;
    try {
        std::string stem = e.listing.substr(0, e.listing.rfind('.'));
        CDProof p = load_builtin_listing(stem);
        Verdict v = check_cd_proof(p);
        r.valid = v.valid;
        r.verdict = v.str();
        r.deduced = p.deduced_count();
        if (!e.goal.empty()) {
            auto g = named_formula(e.goal);
            r.goal_ok = g && concludes(p, *g) == Conclusion::Exact;
        }
        r.dn_free = dn_report(p).dn_free();
        if (!e.repairs.empty()) {
            auto text = builtin_listing(stem);
            auto rep = builtin_repairs(stem);
            if (!text || !rep) throw Error("corpus: missing files for " + e.id);
            ListingHeader h = parse_listing_header(*text);
            ConstantSet cs(h.constants.begin(), h.constants.end());
            r.repairs = validate_repairs(*text, axiom_system(e.system), parse_repairs(*rep), cs);
        }
    } catch (const std::exception& ex) {
        r.error = ex.what();
    }
    return r;
}

std::vector<CorpusResult> verify_corpus() {
    std::vector<CorpusResult> out;
    for (auto& e : builtin_corpus()) out.push_back(verify_corpus_entry(e));
    return out;
}

}  // namespace dnelim
