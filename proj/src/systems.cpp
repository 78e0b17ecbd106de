#include <mutex>

#include "dnelim/proofs.hpp"

namespace dnelim {

namespace {

struct Entry {
    const char* label;
    const char* text;
};

AxiomSystem make(std::string name, std::initializer_list<Entry> entries) {
    AxiomSystem s{std::move(name), {}};
    for (auto& a : entries) s.axioms.push_back({a.label, parse_formula(a.text)});
    return s;
}

const char* const kL1 = "i(i(x,y),i(i(y,z),i(x,z)))";
const char* const kL2 = "i(i(n(x),x),x)";
const char* const kL3 = "i(x,i(n(x),y))";
const char* const kL4 = "i(i(x,n(x)),n(x))";
const char* const kL5 = "i(n(x),i(x,y))";
const char* const kA1 = "i(x,i(y,x))";
const char* const kA2 = "i(i(x,y),i(i(y,z),i(x,z)))";
const char* const kA3 = "i(i(i(x,y),y),i(i(y,x),x))";
const char* const kA4 = "i(i(n(x),n(y)),i(y,x))";
const char* const kA6 = "i(i(x,y),i(n(y),n(x)))";
const char* const kA7 = "i(i(n(x),y),i(n(y),x))";
const char* const kA8 = "i(i(x,n(y)),i(y,n(x)))";
const char* const kH1 = "i(x,i(y,x))";
const char* const kH2 = "i(i(x,i(y,z)),i(i(x,y),i(x,z)))";
const char* const kH3 = "i(i(x,n(x)),n(x))";
const char* const kH4 = "i(x,i(n(x),y))";
const char* const kD4 = "i(i(x,i(x,y)),i(x,y))";
const char* const kD5 = "i(i(x,y),i(n(y),n(x)))";
const char* const kM = "i(i(i(i(i(x,y),i(n(z),n(u))),z),v),i(i(v,x),i(u,x)))";

struct Registry {
    std::map<std::string, AxiomSystem, std::less<>> systems;
    std::map<std::string, Formula, std::less<>> formulas;
};

const Registry& registry() {
    static const Registry r = [] {
        Registry g;
        auto add = [&](AxiomSystem s) { g.systems.emplace(s.name, std::move(s)); };
        add(make("L", {{"L1", kL1}, {"L2", kL2}, {"L3", kL3}}));
        add(make("L*", {{"L1", kL1}, {"L2", kL2}, {"L3", kL3}, {"L4", kL4}, {"L5", kL5}}));
        add(make("L+D4D5", {{"L1", kL1}, {"L2", kL2}, {"L3", kL3}, {"D4", kD4}, {"D5", kD5}}));
        add(make("A", {{"A1", kA1}, {"A2", kA2}, {"A3", kA3}, {"A4", kA4}}));
        add(make("A*", {{"A1", kA1}, {"A2", kA2}, {"A3", kA3}, {"A4", kA4}, {"A6", kA6}, {"A7", kA7}, {"A8", kA8}}));
        add(make("H", {{"H1", kH1}, {"H2", kH2}, {"H3", kH3}, {"H4", kH4}}));
        add(make("frege", {{"F1", "i(x,i(y,x))"},
                           {"F2", "i(x,n(n(x)))"},
                           {"F3", "i(n(n(x)),x)"},
                           {"F4", "i(i(x,i(y,z)),i(i(x,y),i(x,z)))"},
                           {"F5", "i(i(x,y),i(n(y),n(x)))"},
                           {"F6", "i(i(x,i(y,z)),i(y,i(x,z)))"}}));
        add(make("meredith", {{"M", kM}}));
        add(make("ulrich", {{"A1", "i(x,x)"},
                            {"A2", "i(i(x,x),i(n(x),i(n(x),n(x))))"},
                            {"A3", "i(i(x,i(x,x)),i(n(x),i(n(x),i(n(x),n(x)))))"},
                            {"A4", "i(i(x,i(x,i(x,x))),i(i(i(i(i(y,z),i(n(u),n(v))),u),w),i(i(w,y),i(v,y))))"}}));

        std::initializer_list<Entry> named = {
            {"L1", kL1}, {"L2", kL2}, {"L3", kL3}, {"L4", kL4}, {"L5", kL5},
            {"A1", kA1}, {"A2", kA2}, {"A3", kA3}, {"A4", kA4}, {"A6", kA6}, {"A7", kA7}, {"A8", kA8},
            {"H1", kH1}, {"H2", kH2}, {"H3", kH3}, {"H4", kH4},
            {"D1", "i(x,x)"},
            {"D2", "i(i(x,x),i(n(x),n(x)))"},
            {"D3", "i(i(x,x),i(i(y,y),i(i(x,y),i(x,y))))"},
            {"D4", kD4}, {"D5", kD5}, {"M", kM},
            {"DN1", "i(i(n(x),n(i(i(n(y),n(z)),n(z)))),n(i(i(n(i(n(x),y)),n(i(n(x),z))),n(i(n(x),z)))))"},
            {"U5", "i(n(x),i(n(x),n(x)))"},
            {"U6", "i(n(n(x)),i(n(n(x)),i(n(n(x)),n(n(x)))))"},
            {"peirce", "i(i(i(x,y),x),x)"},
        };
        for (auto& s : named) g.formulas.emplace(s.label, parse_formula(s.text));
        return g;
    }();
    return r;
}

}  // namespace

const Axiom* AxiomSystem::find(std::string_view label) const {
    for (auto& a : axioms)
        if (a.label == label) return &a;
    return nullptr;
}

const AxiomSystem& axiom_system(std::string_view name) {
    auto& r = registry();
    auto it = r.systems.find(name);
    if (it == r.systems.end()) throw Error("unknown axiom system '" + std::string(name) + "'");
    return it->second;
}

std::vector<std::string> axiom_system_names() {
    std::vector<std::string> out;
    for (auto& [k, v] : registry().systems) out.push_back(k);
    return out;
}

std::optional<Formula> named_formula(std::string_view name) {
    auto& r = registry();
    auto it = r.formulas.find(name);
    if (it == r.formulas.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> named_formula_names() {
    std::vector<std::string> out;
    for (auto& [k, v] : registry().formulas) out.push_back(k);
    return out;
}

}  // namespace dnelim
