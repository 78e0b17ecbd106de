#include "dnelim/transform.hpp"

#include <deque>
#include <functional>
#include <mutex>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace dnelim {

// ---- star closure ----

namespace {

void negated_vars(const Formula& f, std::vector<Symbol>& out, std::unordered_set<Symbol>& seen) {
    switch (f.kind()) {
        case Kind::Neg:
            if (f.arg().is_var() && seen.insert(f.arg().symbol()).second) out.push_back(f.arg().symbol());
            negated_vars(f.arg(), out, seen);
            break;
        case Kind::Impl:
            negated_vars(f.antecedent(), out, seen);
            negated_vars(f.consequent(), out, seen);
            break;
        default: break;
    }
}

std::vector<Symbol> negated_vars(const Formula& f) {
    std::vector<Symbol> out;
    std::unordered_set<Symbol> seen;
    negated_vars(f, out, seen);
    return out;
}

}  // namespace

Formula star_variant(const Formula& f, const std::vector<Symbol>& vars) {
    Substitution s;
    std::vector<Formula> cancel;
    for (Symbol v : vars) {
        s.bind(v, Formula::neg(Formula::var(v)));
        cancel.push_back(Formula::var(v));
    }
    return erase_selected(s.apply(f), cancel);
}

std::vector<Formula> star_closure(const AxiomSystem& system) {
    std::vector<Formula> out;
    std::set<std::string> keys;
    std::deque<Formula> work;
    for (auto& a : system.axioms)
        if (keys.insert(variant_key(a.formula)).second) {
            out.push_back(a.formula);
            work.push_back(a.formula);
        }
    while (!work.empty()) {
        Formula f = work.front();
        work.pop_front();
        for (Symbol v : negated_vars(f)) {
            Formula g = normalize_variables(star_variant(f, {v}));
            if (keys.insert(variant_key(g)).second) {
                out.push_back(g);
                work.push_back(g);
            }
        }
    }
    return out;
}

AxiomSystem star_system(const AxiomSystem& base) {
    AxiomSystem out = base;
    out.name = base.name + "*";
    auto closure = star_closure(base);
    std::string prefix = base.axioms.empty() ? "S" : base.axioms.front().label.substr(0, 1);
    std::set<std::string> used;
    for (auto& a : base.axioms) used.insert(a.label);
    int k = 0;
    for (std::size_t j = base.axioms.size(); j < closure.size(); ++j) {
        std::string label;
        for (auto& name : named_formula_names()) {
            if (name.rfind(prefix, 0) != 0 || used.count(name)) continue;
            if (is_alphabetic_variant(*named_formula(name), closure[j])) {
                label = name;
                break;
            }
        }
        while (label.empty() || used.count(label)) label = base.name + "*" + std::to_string(++k);
        used.insert(label);
        out.axioms.push_back({label, closure[j]});
    }
    return out;
}

StarKit make_star_kit(const AxiomSystem& base, std::map<std::string, CDProof> proofs) {
    StarKit kit;
    kit.base = base;
    kit.star = star_system(base);
    for (std::size_t j = base.axioms.size(); j < kit.star.axioms.size(); ++j) {
        const Axiom& a = kit.star.axioms[j];
        kit.star_axioms.push_back(a.formula);
        auto it = proofs.find(a.label);
        if (it == proofs.end()) throw Error("star kit: no proof of " + a.label + " " + a.formula.str());
        const CDProof& p = it->second;
        if (auto v = check_cd_proof(p); !v.valid) throw Error("star kit: proof of " + a.label + ": " + v.str());
        if (concludes(p, a.formula) != Conclusion::Exact)
            throw Error("star kit: proof of " + a.label + " concludes " + p.conclusion().str());
        if (!dn_report(p).dn_free()) throw Error("star kit: proof of " + a.label + " uses double negations");
        kit.star_proofs.emplace(a.label, p);
    }
    return kit;
}

const StarKit& builtin_star_kit(std::string_view base) {
    static std::mutex mu;
    static std::map<std::string, StarKit, std::less<>> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(base); it != cache.end()) return it->second;
    std::map<std::string, CDProof> proofs;
    if (base == "L") {
        proofs.emplace("L4", load_builtin_listing("l_l4"));
        proofs.emplace("L5", load_builtin_listing("l_l5"));
    } else if (base == "A") {
        proofs.emplace("A6", load_builtin_listing("a_a6"));
        proofs.emplace("A7", load_builtin_listing("a_a7"));
        proofs.emplace("A8", load_builtin_listing("a_a8"));
    } else {
        throw Error("no bundled star kit for system '" + std::string(base) + "'");
    }
    return cache.emplace(std::string(base), make_star_kit(axiom_system(base), std::move(proofs))).first->second;
}

// ---- selections ----

void validate_selection(const Formula& b, const Selection& s) {
    auto dn = dn_subformulas(b);
    for (auto& q : s.chosen) {
        Formula nnq = Formula::neg(Formula::neg(q));
        if (std::find(dn.begin(), dn.end(), nnq) == dn.end())
            throw Error("selection: " + q.str() + " does not occur doubly negated in " + b.str());
    }
}

Formula apply_selection(const Formula& b, const Selection& s) { return erase_double_negations(b, s.chosen); }

// ---- pushback ----

MPProof pushback(const CDProof& p, const Substitution& theta) {
    if (auto v = check_cd_proof(p); !v.valid) throw Error("pushback: " + v.str());
    std::map<std::pair<std::string, std::string>, MPTree> memo;
    std::function<MPTree(const Ref&, const Substitution&)> expand = [&](const Ref& r, const Substitution& th) -> MPTree {
        Formula target = th.apply(resolve_ref(p, r));
        auto key = std::make_pair(r.str() + (r.kind == Ref::Kind::Line ? "" : "!"), target.str());
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        MPTree out;
        auto leaf = [&](const std::string& label) {
            auto sigma = match_instance(p.system.find(label)->formula, target);
            if (!sigma) throw Error("pushback: " + target.str() + " is not an instance of " + label);
            return mp_axiom(p.system, label, *sigma);
        };
        const CDLine* l = r.kind == Ref::Kind::Line ? p.line(r.line) : nullptr;
        if (r.kind == Ref::Kind::Axiom) {
            out = leaf(r.axiom);
        } else if (r.kind == Ref::Kind::Assumption) {
            out = mp_assumption(target);
        } else if (l->rule == Rule::Axiom) {
            out = leaf(l->axiom);
        } else if (l->rule == Rule::Assumption) {
            out = mp_assumption(target);
        } else {
            auto inst = push_back_step(resolve_ref(p, l->major), resolve_ref(p, l->minor),
                                       l->rule == Rule::CDLiteral, l->formula, th);
            if (!inst) throw Error("pushback: step " + std::to_string(l->id) + " does not replay");
            MPTree major = expand(l->major, inst->major);
            MPTree minor = expand(l->minor, inst->minor);
            out = mp_apply(std::move(major), std::move(minor));
        }
        memo.emplace(std::move(key), out);
        return out;
    };
    MPProof m;
    m.system = p.system;
    m.assumptions = p.assumptions;
    m.root = expand(Ref::to_line(p.lines.back().id), theta);
    return m;
}

// ---- erasure ----

MPProof erase_in_mp(const MPProof& p, const Selection& s, const AxiomSystem& target) {
    std::unordered_map<const MPNode*, MPTree> done;
    SelectionEraser erase(s.chosen);
    std::function<MPTree(const MPTree&)> rec = [&](const MPTree& n) -> MPTree {
        if (auto it = done.find(n.get()); it != done.end()) return it->second;
        MPTree out;
        Formula f = erase(n->formula);
        switch (n->kind) {
            case MPNode::Kind::AxiomInstance: {
                const Axiom* same = target.find(n->label);
                std::optional<Substitution> sigma;
                std::string label;
                if (same && (sigma = match_instance(same->formula, f))) label = same->label;
                for (std::size_t k = 0; !sigma && k < target.axioms.size(); ++k)
                    if ((sigma = match_instance(target.axioms[k].formula, f))) label = target.axioms[k].label;
                if (!sigma) throw Error("erase: " + f.str() + " is not an instance of any axiom of " + target.name);
                out = mp_axiom(target, label, *sigma);
                break;
            }
            case MPNode::Kind::Assumption: out = mp_assumption(f); break;
            case MPNode::Kind::Mp: out = mp_node(rec(n->major), rec(n->minor), f); break;
        }
        done.emplace(n.get(), out);
        return out;
    };
    MPProof m;
    m.system = target;
    for (auto& a : p.assumptions) m.assumptions.push_back(erase(a));
    m.root = p.root ? rec(p.root) : nullptr;
    return m;
}

// ---- assembly ----

CDProof assemble_cd(const MPProof& p, const DKit& kit, const std::map<std::string, CDProof>& lemmas) {
    ProofBuilder b(kit, p.assumptions);
    std::map<std::string, int> sources;
    auto source = [&](const std::string& label) {
        if (auto it = sources.find(label); it != sources.end()) return it->second;
        int line;
        if (kit.system.find(label)) {
            line = b.axiom(label);
        } else {
            auto it = lemmas.find(label);
            if (it == lemmas.end()) throw Error("assemble: no proof of " + label);
            line = b.import(it->second);
            if (const Axiom* a = p.system.find(label)) line = b.respell(line, a->formula);
        }
        sources[label] = line;
        return line;
    };
    std::unordered_map<const MPNode*, int> done;
    std::function<int(const MPTree&)> rec = [&](const MPTree& n) -> int {
        if (auto it = done.find(n.get()); it != done.end()) return it->second;
        int out = -1;
        switch (n->kind) {
            case MPNode::Kind::AxiomInstance:
                // Constants only enter through assumptions, so such a leaf is
                // proved in abstracted form and specialized by later steps.
                out = b.instance(source(n->label), abstract_constants(n->formula));
                break;
            case MPNode::Kind::Assumption: {
                auto it = std::find(p.assumptions.begin(), p.assumptions.end(), n->formula);
                if (it == p.assumptions.end()) throw Error("assemble: unknown assumption " + n->formula.str());
                out = b.assumption(static_cast<std::size_t>(it - p.assumptions.begin()));
                break;
            }
            case MPNode::Kind::Mp: {
                int major = rec(n->major);
                int minor = rec(n->minor);
                auto c = condensed_detach(b.formula(major), b.formula(minor));
                if (!c) throw Error("assemble: no detachment for " + n->formula.str());
                if (is_alphabetic_variant(*c, n->formula)) {
                    out = b.cd(major, minor, n->formula);
                } else {
                    if (!subsumes(*c, n->formula)) throw Error("assemble: detachment lost " + n->formula.str());
                    out = b.cd(major, minor);
                }
                break;
            }
        }
        done.emplace(n.get(), out);
        return out;
    };
    return b.build(rec(p.root));
}

// ---- elimination ----

Elimination dn_eliminate_full(const CDProof& p, const Selection& s, const StarKit& star, const DKit& dkit) {
    if (auto v = check_cd_proof(p); !v.valid) throw Error("eliminate: input " + v.str());
    for (auto& a : star.base.axioms) {
        auto* b = p.system.find(a.label);
        if (!b || b->formula != a.formula || p.system.axioms.size() != star.base.axioms.size())
            throw Error("eliminate: input proof is not over " + star.base.name);
    }
    for (const CDProof* d : {&dkit.d1, &dkit.d2, &dkit.d3})
        if (!dn_report(*d).dn_free()) throw Error("eliminate: D1-D3 proofs must be free of double negations");
    const Formula& b = p.conclusion();
    validate_selection(b, s);

    Elimination e;
    e.b_star = apply_selection(b, s);
    e.pushed = pushback(p);
    e.erased = erase_in_mp(e.pushed, s, star.star);
    // Erase every remaining double negation that is not part of B*.
    auto allowed = dn_subformulas(e.b_star);
    std::unordered_set<Formula, FormulaHash> allowed_set(allowed.begin(), allowed.end());
    e.cleaned = e.erased;
    for (;;) {
        std::unordered_set<const void*> visited;
        std::unordered_set<Formula, FormulaHash> found;
        std::vector<Formula> dns;
        std::unordered_set<const MPNode*> seen;
        std::vector<const MPNode*> stack{e.cleaned.root.get()};
        while (!stack.empty()) {
            const MPNode* n = stack.back();
            stack.pop_back();
            if (!seen.insert(n).second) continue;
            collect_dn_subformulas(n->formula, visited, found, dns);
            if (n->kind == MPNode::Kind::Mp) {
                stack.push_back(n->major.get());
                stack.push_back(n->minor.get());
            }
        }
        Selection extra;
        for (auto& d : dns)
            if (!allowed_set.count(d)) extra.chosen.push_back(d.arg().arg());
        if (extra.chosen.empty()) break;
        e.cleaned = erase_in_mp(e.cleaned, extra, star.star);
    }
    if (e.cleaned.conclusion() != e.b_star) throw Error("eliminate: erasure changed the conclusion");

    std::map<std::string, CDProof> lemmas;
    for (auto& [label, proof] : star.star_proofs) lemmas.emplace(label, proof);
    e.proof = assemble_cd(e.cleaned, dkit, lemmas);
    return e;
}

CDProof dn_eliminate(const CDProof& p, const Selection& s, const StarKit& star, const DKit& dkit) {
    return dn_eliminate_full(p, s, star, dkit).proof;
}

CDProof transfer_proof(const CDProof& p, const AxiomSystem& target, const std::map<std::string, CDProof>& lemma_proofs) {
    ProofBuilder b(target, p.assumptions);
    std::map<std::string, int> lemmas;
    for (auto& a : p.system.axioms) {
        if (target.find(a.label)) continue;
        auto it = lemma_proofs.find(a.label);
        if (it == lemma_proofs.end()) throw Error("transfer: no proof of " + a.label + " over " + target.name);
        if (concludes(it->second, a.formula) != Conclusion::Exact)
            throw Error("transfer: proof of " + a.label + " concludes " + it->second.conclusion().str());
        lemmas[a.label] = b.respell(b.import(it->second), a.formula);
    }
    return b.build(b.import(p, lemmas));
}

}  // namespace dnelim
