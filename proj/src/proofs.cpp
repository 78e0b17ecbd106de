#include "dnelim/proofs.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "dnelim/detach.hpp"

namespace dnelim {

std::string Ref::str() const {
    switch (kind) {
        case Kind::Line: return std::to_string(line);
        case Kind::Axiom: return axiom;
        case Kind::Assumption: return "#" + std::to_string(assumption);
    }
    return {};
}

const Formula& CDProof::conclusion() const {
    if (lines.empty()) throw Error("empty proof has no conclusion");
    return lines.back().formula;
}

std::size_t CDProof::deduced_count() const {
    return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(), [](auto& l) { return l.deduced(); }));
}

const CDLine* CDProof::line(int id) const {
    for (auto& l : lines)
        if (l.id == id) return &l;
    return nullptr;
}

std::string Verdict::str() const {
    if (valid) return "valid";
    std::string s = "invalid at " + where + ": " + reason;
    if (!expected.empty()) s += "; expected " + expected;
    if (!found.empty()) s += ", found " + found;
    return s;
}

Formula resolve_ref(const CDProof& p, const Ref& r) {
    switch (r.kind) {
        case Ref::Kind::Line:
            if (auto* l = p.line(r.line)) return l->formula;
            throw Error("no line " + std::to_string(r.line));
        case Ref::Kind::Axiom:
            if (auto* a = p.system.find(r.axiom)) return a->formula;
            throw Error("no axiom " + r.axiom + " in system " + p.system.name);
        case Ref::Kind::Assumption:
            if (r.assumption < p.assumptions.size()) return p.assumptions[r.assumption];
            throw Error("no assumption #" + std::to_string(r.assumption));
    }
    throw Error("bad reference");
}

Verdict check_cd_proof(const CDProof& p) {
    auto fail = [](const std::string& where, std::string reason, std::string expected = {}, std::string found = {}) {
        return Verdict{false, where, std::move(reason), std::move(expected), std::move(found)};
    };
    for (auto& a : p.system.axioms)
        if (!constants(a.formula).empty()) return fail(a.label, "axiom contains a constant letter");
    for (std::size_t k = 0; k < p.assumptions.size(); ++k)
        if (has_variables(p.assumptions[k])) return fail("#" + std::to_string(k), "assumption contains a variable");
    if (p.lines.empty()) return fail("-", "empty proof");

    std::unordered_map<int, const CDLine*> seen;
    int last = std::numeric_limits<int>::min();
    bool first = true;
    for (auto& l : p.lines) {
        std::string where = std::to_string(l.id);
        if (!first && l.id <= last) return fail(where, "line ids not strictly increasing");
        first = false;
        last = l.id;
        if (l.formula.empty()) return fail(where, "missing formula");

        auto premiss = [&](const Ref& r, std::optional<Formula>& out) -> std::optional<Verdict> {
            switch (r.kind) {
                case Ref::Kind::Line: {
                    auto it = seen.find(r.line);
                    if (it == seen.end()) return fail(where, "reference " + r.str() + " is not an earlier line");
                    out = it->second->formula;
                    break;
                }
                case Ref::Kind::Axiom: {
                    auto* a = p.system.find(r.axiom);
                    if (!a) return fail(where, "unknown axiom " + r.axiom);
                    out = a->formula;
                    break;
                }
                case Ref::Kind::Assumption:
                    if (r.assumption >= p.assumptions.size()) return fail(where, "unknown assumption " + r.str());
                    out = p.assumptions[r.assumption];
                    break;
            }
            return std::nullopt;
        };

        switch (l.rule) {
            case Rule::Axiom: {
                auto* a = p.system.find(l.axiom);
                if (!a) return fail(where, "unknown axiom " + l.axiom);
                if (!is_alphabetic_variant(a->formula, l.formula))
                    return fail(where, "not the axiom " + l.axiom, a->formula.str(), l.formula.str());
                break;
            }
            case Rule::Assumption:
                if (l.assumption >= p.assumptions.size())
                    return fail(where, "unknown assumption #" + std::to_string(l.assumption));
                if (p.assumptions[l.assumption] != l.formula)
                    return fail(where, "not the assumption", p.assumptions[l.assumption].str(), l.formula.str());
                break;
            case Rule::CD:
            case Rule::CDLiteral: {
                std::optional<Formula> major, minor;
                if (auto v = premiss(l.major, major)) return *v;
                if (auto v = premiss(l.minor, minor)) return *v;
                auto d = detach(*major, *minor, l.rule == Rule::CDLiteral);
                if (!d) return fail(where, "premisses do not detach", "", l.formula.str());
                if (!is_alphabetic_variant(d->conclusion, l.formula))
                    return fail(where, "conclusion mismatch", d->conclusion.str(), l.formula.str());
                break;
            }
        }
        seen[l.id] = &l;
    }
    return Verdict::ok();
}

Conclusion concludes(const CDProof& p, const Formula& target) {
    if (p.lines.empty()) return Conclusion::Unrelated;
    const Formula& c = p.conclusion();
    if (is_alphabetic_variant(c, target)) return Conclusion::Exact;
    if (subsumes(c, target)) return Conclusion::Generalizes;
    return Conclusion::Unrelated;
}

// ---- modus ponens ----

MPTree mp_axiom(const AxiomSystem& system, std::string_view label, Substitution subst) {
    auto* a = system.find(label);
    if (!a) throw Error("unknown axiom " + std::string(label) + " in system " + system.name);
    auto n = std::make_shared<MPNode>();
    n->kind = MPNode::Kind::AxiomInstance;
    n->formula = subst.apply(a->formula);
    n->label = std::string(label);
    n->subst = std::move(subst);
    return n;
}

MPTree mp_assumption(Formula f) {
    auto n = std::make_shared<MPNode>();
    n->kind = MPNode::Kind::Assumption;
    n->formula = std::move(f);
    return n;
}

MPTree mp_node(MPTree major, MPTree minor, Formula formula) {
    auto n = std::make_shared<MPNode>();
    n->kind = MPNode::Kind::Mp;
    n->formula = std::move(formula);
    n->major = std::move(major);
    n->minor = std::move(minor);
    return n;
}

MPTree mp_apply(MPTree major, MPTree minor) {
    const Formula& m = major->formula;
    if (!m.is_impl() || m.antecedent() != minor->formula)
        throw Error("modus ponens mismatch: major " + m.str() + ", minor " + minor->formula.str());
    Formula c = m.consequent();
    return mp_node(std::move(major), std::move(minor), std::move(c));
}

Verdict check_mp_proof(const MPProof& p) {
    if (!p.root) return Verdict{false, "root", "empty proof", {}, {}};
    std::unordered_set<const MPNode*> ok;
    // Iterative post-order over the DAG; paths are those of the first visit.
    struct Item {
        const MPNode* node;
        std::string path;
        bool expanded;
    };
    std::vector<Item> stack{{p.root.get(), "root", false}};
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        const MPNode* n = it.node;
        if (!n) return Verdict{false, it.path, "missing node", {}, {}};
        if (ok.count(n)) continue;
        if (n->formula.empty()) return Verdict{false, it.path, "missing formula", {}, {}};
        switch (n->kind) {
            case MPNode::Kind::AxiomInstance: {
                auto* a = p.system.find(n->label);
                if (!a) return Verdict{false, it.path, "unknown axiom " + n->label, {}, {}};
                Formula want = n->subst.apply(a->formula);
                if (want != n->formula)
                    return Verdict{false, it.path, "not the claimed instance of " + n->label, want.str(), n->formula.str()};
                ok.insert(n);
                break;
            }
            case MPNode::Kind::Assumption:
                if (std::find(p.assumptions.begin(), p.assumptions.end(), n->formula) == p.assumptions.end())
                    return Verdict{false, it.path, "not an assumption", {}, n->formula.str()};
                ok.insert(n);
                break;
            case MPNode::Kind::Mp:
                if (!it.expanded) {
                    if (!n->major || !n->minor) return Verdict{false, it.path, "missing premiss", {}, {}};
                    stack.push_back({n, it.path, true});
                    stack.push_back({n->minor.get(), it.path + ".1", false});
                    stack.push_back({n->major.get(), it.path + ".0", false});
                    break;
                }
                {
                    Formula want = Formula::impl(n->minor->formula, n->formula);
                    if (n->major->formula != want)
                        return Verdict{false, it.path, "major is not i(minor, conclusion)", want.str(),
                                       n->major->formula.str()};
                }
                ok.insert(n);
                break;
        }
    }
    return Verdict::ok();
}

std::size_t mp_tree_size(const MPTree& t) {
    constexpr std::size_t cap = std::numeric_limits<std::size_t>::max();
    std::unordered_map<const MPNode*, std::size_t> memo;
    auto rec = [&](auto& self, const MPNode* n) -> std::size_t {
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        std::size_t s = 1;
        if (n->kind == MPNode::Kind::Mp) {
            std::size_t a = self(self, n->major.get()), b = self(self, n->minor.get());
            s = (a >= cap - 1 || b >= cap - 1 - a) ? cap : a + b + 1;
        }
        memo[n] = s;
        return s;
    };
    return t ? rec(rec, t.get()) : 0;
}

std::size_t mp_dag_size(const MPTree& t) {
    std::unordered_set<const MPNode*> seen;
    std::vector<const MPNode*> stack;
    if (t) stack.push_back(t.get());
    while (!stack.empty()) {
        auto* n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        if (n->kind == MPNode::Kind::Mp) {
            stack.push_back(n->major.get());
            stack.push_back(n->minor.get());
        }
    }
    return seen.size();
}

// ---- DN reports ----

namespace {

bool allowed_dn(const Formula& dn, const std::vector<Formula>& allowed) {
    return std::any_of(allowed.begin(), allowed.end(), [&](auto& a) { return is_alphabetic_variant(a, dn); });
}

class ReportBuilder {
public:
    explicit ReportBuilder(const std::vector<Formula>& allowed) : allowed_(allowed) {}

    void step(std::string name, const Formula& f) {
        DnStepReport s{std::move(name), {}, {}};
        std::set<std::string> local;
        for (auto& d : dn_subformulas(f)) {
            std::string key = variant_key(d);
            if (!local.insert(key).second) continue;
            s.dn.push_back(d);
            bool bad = !allowed_dn(d, allowed_);
            if (bad) s.violations.push_back(d);
            if (agg_.insert(key).second) {
                r_.aggregate.push_back(d);
                if (bad) r_.violations.push_back(d);
            }
        }
        r_.steps.push_back(std::move(s));
    }

    DnReport take() { return std::move(r_); }

private:
    const std::vector<Formula>& allowed_;
    std::set<std::string> agg_;
    DnReport r_;
};

}  // namespace

std::string DnReport::str() const {
    std::string s;
    for (auto& st : steps) {
        if (st.dn.empty()) continue;
        s += st.step + ":";
        for (auto& d : st.dn) s += " " + d.str();
        if (!st.violations.empty()) s += "  [" + std::to_string(st.violations.size()) + " not allowed]";
        s += "\n";
    }
    s += "aggregate:";
    if (aggregate.empty()) s += " (none)";
    for (auto& d : aggregate) s += " " + d.str();
    s += "\nviolations: " + std::to_string(violations.size()) + "\n";
    return s;
}

DnReport dn_report(const CDProof& p, const std::vector<Formula>& allowed) {
    ReportBuilder b(allowed);
    for (auto& l : p.lines)
        if (l.deduced()) b.step(std::to_string(l.id), l.formula);
    return b.take();
}

DnReport dn_report(const MPProof& p, const std::vector<Formula>& allowed, bool include_leaves) {
    ReportBuilder b(allowed);
    std::unordered_set<const MPNode*> seen;
    std::vector<std::pair<const MPNode*, std::string>> stack;
    if (p.root) stack.push_back({p.root.get(), "root"});
    while (!stack.empty()) {
        auto [n, path] = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        if (n->kind == MPNode::Kind::Mp) {
            b.step(path, n->formula);
            stack.push_back({n->minor.get(), path + ".1"});
            stack.push_back({n->major.get(), path + ".0"});
        } else if (include_leaves && n->kind == MPNode::Kind::AxiomInstance) {
            b.step(path, n->formula);
        }
    }
    return b.take();
}

std::vector<Formula> dn_allowance(const std::vector<Formula>& formulas) {
    std::vector<Formula> out;
    std::set<std::string> keys;
    for (auto& f : formulas)
        for (auto& d : dn_subformulas(f))
            if (keys.insert(variant_key(d)).second) out.push_back(d);
    return out;
}

}  // namespace dnelim
