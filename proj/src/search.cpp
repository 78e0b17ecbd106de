#include "dnelim/search.hpp"

#include <chrono>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

#include "dnelim/detach.hpp"

namespace dnelim {

std::string shape_key(const Formula& f) {
    switch (f.kind()) {
        case Kind::Var: return "*";
        case Kind::Const: return f.name();
        case Kind::Neg: return "n(" + shape_key(f.arg()) + ")";
        case Kind::Impl: return "i(" + shape_key(f.antecedent()) + "," + shape_key(f.consequent()) + ")";
    }
    return {};
}

namespace {

struct Clause {
    Formula f;
    std::string axiom;  // non-empty for input axioms
    int major = -1, minor = -1;
    std::size_t priority = 0;
};

// Retained formulas bucketed by weight for forward subsumption.
class Retained {
public:
    bool subsumed(const Formula& f) const {
        for (auto& [w, bucket] : by_weight_) {
            if (w > f.weight()) break;
            for (auto& g : bucket)
                if (subsumes(g, f)) return true;
        }
        return false;
    }
    void add(const Formula& f) { by_weight_[f.weight()].push_back(f); }

private:
    std::map<std::size_t, std::vector<Formula>> by_weight_;
};

CDProof extract(const AxiomSystem& system, const std::vector<Clause>& clauses, int last) {
    std::set<int> need;
    std::vector<int> stack{last};
    while (!stack.empty()) {
        int k = stack.back();
        stack.pop_back();
        if (!need.insert(k).second) continue;
        if (clauses[static_cast<std::size_t>(k)].axiom.empty()) {
            stack.push_back(clauses[static_cast<std::size_t>(k)].major);
            stack.push_back(clauses[static_cast<std::size_t>(k)].minor);
        }
    }
    CDProof p;
    p.system = system;
    std::map<int, int> id;
    for (int k : need) {  // ascending: premisses come first
        const Clause& c = clauses[static_cast<std::size_t>(k)];
        CDLine l;
        l.id = static_cast<int>(p.lines.size()) + 1;
        l.formula = c.f;
        if (!c.axiom.empty()) {
            l.rule = Rule::Axiom;
            l.axiom = c.axiom;
        } else {
            l.rule = Rule::CD;
            l.major = Ref::to_line(id.at(c.major));
            l.minor = Ref::to_line(id.at(c.minor));
        }
        id[k] = l.id;
        p.lines.push_back(std::move(l));
    }
    return p;
}

}  // namespace

SearchResult saturate(const AxiomSystem& system, const Formula& goal, const SearchConfig& cfg) {
    using clock = std::chrono::steady_clock;
    auto start = clock::now();
    SearchResult r;
    std::vector<Clause> clauses;
    Retained index;
    std::set<std::string> seen;  // variant keys of retained formulas
    using Entry = std::pair<std::size_t, int>;  // (priority, clause index): lightest first, then oldest
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> sos;
    std::vector<int> usable;

    std::map<std::string, std::size_t> hint_keys, shape_keys;
    for (auto& h : cfg.hints) hint_keys.emplace(variant_key(h.pattern), h.weight);
    for (auto& h : cfg.resonators) shape_keys.emplace(shape_key(h.pattern), h.weight);
    auto priority = [&](const Formula& f) {
        std::size_t w = f.weight();
        if (!hint_keys.empty())
            if (auto it = hint_keys.find(variant_key(f)); it != hint_keys.end()) w = std::min(w, it->second);
        if (!shape_keys.empty())
            if (auto it = shape_keys.find(shape_key(f)); it != shape_keys.end()) w = std::min(w, it->second);
        return w;
    };
    auto is_goal = [&](const Formula& f) {
        return is_alphabetic_variant(f, goal) || (cfg.subsume_goal && subsumes(f, goal));
    };
    auto finish = [&](const char* status) {
        r.status = status;
        r.retained = clauses.size();
        r.elapsed_s = std::chrono::duration<double>(clock::now() - start).count();
        return r;
    };

    for (auto& a : system.axioms) {
        Formula f = normalize_variables(a.formula);
        if (!seen.insert(variant_key(f)).second) continue;
        clauses.push_back({f, a.label, -1, -1, priority(f)});
        int k = static_cast<int>(clauses.size()) - 1;
        index.add(f);
        sos.push({clauses.back().priority, k});
        if (is_goal(f)) {
            r.proof = extract(system, clauses, k);
            return finish("proved");
        }
    }

    while (!sos.empty()) {
        if (cfg.max_given && r.given >= cfg.max_given) return finish("given limit");
        if (cfg.time_limit_s > 0 &&
            std::chrono::duration<double>(clock::now() - start).count() > cfg.time_limit_s)
            return finish("time limit");
        int g = sos.top().second;
        sos.pop();
        ++r.given;
        usable.push_back(g);
        for (std::size_t j = 0; j < usable.size(); ++j) {
            int u = usable[j];
            for (int dir = 0; dir < 2; ++dir) {
                if (dir == 1 && u == g) break;
                int major = dir == 0 ? g : u, minor = dir == 0 ? u : g;
                auto c = condensed_detach(clauses[static_cast<std::size_t>(major)].f,
                                          clauses[static_cast<std::size_t>(minor)].f);
                if (!c) continue;
                ++r.generated;
                // The goal is accepted whatever its weight; bounds apply to what is kept.
                bool goal_hit = is_goal(*c);
                bool dn = has_double_negation(*c);
                if (!goal_hit) {
                    if (c->weight() > cfg.max_weight) continue;
                    if (cfg.dn_avoidance && dn) continue;
                    if (seen.count(variant_key(*c)) || index.subsumed(*c)) continue;
                }
                clauses.push_back({*c, {}, major, minor, priority(*c)});
                int k = static_cast<int>(clauses.size()) - 1;
                if (goal_hit) {
                    r.proof = extract(system, clauses, k);
                    if (dn) ++r.retained_with_dn;
                    return finish("proved");
                }
                seen.insert(variant_key(*c));
                index.add(*c);
                if (dn) ++r.retained_with_dn;
                sos.push({clauses.back().priority, k});
                if (clauses.size() >= cfg.max_retained) return finish("retained limit");
            }
        }
    }
    return finish("exhausted");
}

ClosureResult enumerate_closure(const AxiomSystem& system, int rounds, std::size_t cap) {
    ClosureResult out;
    std::set<std::string> seen;
    std::vector<Formula> all;
    ClosureRound r0;
    for (auto& a : system.axioms) {
        Formula f = normalize_variables(a.formula);
        if (seen.insert(variant_key(f)).second) {
            r0.formulas.push_back(f);
            all.push_back(f);
        }
    }
    out.rounds.push_back(r0);
    std::size_t prev_begin = 0;
    for (int k = 1; k <= rounds; ++k) {
        ClosureRound rk;
        rk.round = k;
        std::size_t prev_end = all.size();
        for (std::size_t a = 0; a < prev_end && !out.truncated; ++a)
            for (std::size_t b = 0; b < prev_end; ++b) {
                if (a < prev_begin && b < prev_begin) continue;  // done in an earlier round
                auto c = condensed_detach(all[a], all[b]);
                if (!c || !seen.insert(variant_key(*c)).second) continue;
                rk.formulas.push_back(*c);
                if (all.size() + rk.formulas.size() > cap) {
                    out.truncated = true;
                    break;
                }
            }
        prev_begin = prev_end;
        for (auto& f : rk.formulas) all.push_back(f);
        out.rounds.push_back(std::move(rk));
        if (out.truncated) break;
    }
    return out;
}

}  // namespace dnelim
