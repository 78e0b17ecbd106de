#include "dnelim/kernel.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace dnelim {

void Substitution::bind(Symbol var, Formula value) { map_[var] = std::move(value); }

const Formula* Substitution::find(Symbol var) const {
    auto it = map_.find(var);
    return it == map_.end() ? nullptr : &it->second;
}

Formula Substitution::apply(const Formula& f) const {
    if (map_.empty()) return f;
    switch (f.kind()) {
        case Kind::Var: {
            const Formula* v = find(f.symbol());
            return v ? *v : f;
        }
        case Kind::Const: return f;
        case Kind::Neg: {
            Formula a = apply(f.arg());
            return a.shares_node(f.arg()) ? f : Formula::neg(std::move(a));
        }
        case Kind::Impl: {
            Formula a = apply(f.antecedent());
            Formula b = apply(f.consequent());
            if (a.shares_node(f.antecedent()) && b.shares_node(f.consequent())) return f;
            return Formula::impl(std::move(a), std::move(b));
        }
    }
    return f;
}

Substitution Substitution::then(const Substitution& other) const {
    Substitution out;
    for (const auto& [v, t] : map_) out.map_[v] = other.apply(t);
    for (const auto& [v, t] : other.map_)
        if (!map_.count(v)) out.map_[v] = t;
    // identity bindings carry no information
    for (auto it = out.map_.begin(); it != out.map_.end();) {
        if (it->second.is_var() && it->second.symbol() == it->first)
            it = out.map_.erase(it);
        else
            ++it;
    }
    return out;
}

Substitution Substitution::restricted(const std::vector<Symbol>& keep) const {
    Substitution out;
    for (Symbol s : keep)
        if (auto* v = find(s)) out.map_[s] = *v;
    return out;
}

bool Substitution::is_idempotent() const {
    for (const auto& [v, t] : map_) {
        (void)v;
        for (Symbol s : variables(t))
            if (map_.count(s)) return false;
    }
    return true;
}

std::string Substitution::str() const {
    std::vector<std::pair<std::string, std::string>> items;
    for (const auto& [v, t] : map_) items.emplace_back(symbol_name(v), t.str());
    std::sort(items.begin(), items.end());
    std::string out = "{";
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (k) out += ", ";
        out += items[k].first + "->" + items[k].second;
    }
    return out + "}";
}

namespace {

// Triangular-binding unifier; resolved into an idempotent substitution at the end.
class Unifier {
public:
    bool unify(const Formula& a, const Formula& b) {
        Formula x = deref(a), y = deref(b);
        if (x.shares_node(y)) return true;
        if (x.is_var() && y.is_var() && x.symbol() == y.symbol()) return true;
        if (x.is_var()) return bind(x.symbol(), y);
        if (y.is_var()) return bind(y.symbol(), x);
        if (x.kind() != y.kind()) return false;
        switch (x.kind()) {
            case Kind::Const: return x.symbol() == y.symbol();
            case Kind::Neg: return unify(x.arg(), y.arg());
            case Kind::Impl: return unify(x.antecedent(), y.antecedent()) && unify(x.consequent(), y.consequent());
            default: return false;
        }
    }

    Substitution result() {
        Substitution out;
        for (const auto& [v, t] : bindings_) out.bind(v, resolve(t));
        return out;
    }

private:
    Formula deref(Formula f) const {
        while (f.is_var()) {
            auto it = bindings_.find(f.symbol());
            if (it == bindings_.end()) break;
            f = it->second;
        }
        return f;
    }

    bool occurs(Symbol v, const Formula& f) const {
        Formula g = deref(f);
        switch (g.kind()) {
            case Kind::Var: return g.symbol() == v;
            case Kind::Const: return false;
            case Kind::Neg: return occurs(v, g.arg());
            case Kind::Impl: return occurs(v, g.antecedent()) || occurs(v, g.consequent());
        }
        return false;
    }

    bool bind(Symbol v, const Formula& t) {
        if (occurs(v, t)) return false;
        bindings_.emplace(v, t);
        return true;
    }

    Formula resolve(const Formula& f) {
        switch (f.kind()) {
            case Kind::Var: {
                auto it = bindings_.find(f.symbol());
                if (it == bindings_.end()) return f;
                auto c = cache_.find(f.symbol());
                if (c != cache_.end()) return c->second;
                Formula r = resolve(it->second);
                cache_.emplace(f.symbol(), r);
                return r;
            }
            case Kind::Const: return f;
            case Kind::Neg: return Formula::neg(resolve(f.arg()));
            case Kind::Impl: return Formula::impl(resolve(f.antecedent()), resolve(f.consequent()));
        }
        return f;
    }

    std::unordered_map<Symbol, Formula> bindings_;
    std::unordered_map<Symbol, Formula> cache_;
};

bool match_into(const Formula& p, const Formula& t, std::unordered_map<Symbol, Formula>& env) {
    switch (p.kind()) {
        case Kind::Var: {
            auto [it, inserted] = env.try_emplace(p.symbol(), t);
            return inserted || it->second == t;
        }
        case Kind::Const: return t.is_const() && t.symbol() == p.symbol();
        case Kind::Neg: return t.is_neg() && match_into(p.arg(), t.arg(), env);
        case Kind::Impl:
            return t.is_impl() && match_into(p.antecedent(), t.antecedent(), env) &&
                   match_into(p.consequent(), t.consequent(), env);
    }
    return false;
}

bool variant_into(const Formula& a, const Formula& b, std::unordered_map<Symbol, Symbol>& fwd,
                  std::unordered_map<Symbol, Symbol>& back) {
    if (a.kind() != b.kind() || a.weight() != b.weight()) return false;
    switch (a.kind()) {
        case Kind::Var: {
            auto [f, fi] = fwd.try_emplace(a.symbol(), b.symbol());
            auto [g, gi] = back.try_emplace(b.symbol(), a.symbol());
            return f->second == b.symbol() && g->second == a.symbol();
        }
        case Kind::Const: return a.symbol() == b.symbol();
        case Kind::Neg: return variant_into(a.arg(), b.arg(), fwd, back);
        case Kind::Impl:
            return variant_into(a.antecedent(), b.antecedent(), fwd, back) &&
                   variant_into(a.consequent(), b.consequent(), fwd, back);
    }
    return false;
}

std::string standard_name(std::size_t k) {
    static const char* base[] = {"x", "y", "z", "u", "v", "w"};
    if (k < 6) return base[k];
    return "v" + std::to_string(k);
}

Symbol standard_symbol(std::size_t k) {
    static std::vector<Symbol> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    while (cache.size() <= k) cache.push_back(intern(standard_name(cache.size())));
    return cache[k];
}

}  // namespace

std::optional<Substitution> unify(const Formula& a, const Formula& b) {
    Unifier u;
    if (!u.unify(a, b)) return std::nullopt;
    return u.result();
}

std::optional<Substitution> match_instance(const Formula& pattern, const Formula& target) {
    if (pattern.weight() > target.weight()) return std::nullopt;
    std::unordered_map<Symbol, Formula> env;
    if (!match_into(pattern, target, env)) return std::nullopt;
    Substitution s;
    for (auto& [v, t] : env)
        if (!(t.is_var() && t.symbol() == v)) s.bind(v, t);
    return s;
}

Formula rename_apart(const Formula& keep, const Formula& rename, Substitution& renaming) {
    renaming = Substitution();
    auto kv = variables(keep);
    auto rv = variables(rename);
    std::unordered_set<Symbol> taken(kv.begin(), kv.end());
    bool clash = std::any_of(rv.begin(), rv.end(), [&](Symbol s) { return taken.count(s) > 0; });
    if (!clash) return rename;
    taken.insert(rv.begin(), rv.end());
    std::size_t next = 0;
    for (Symbol s : rv) {
        Symbol fresh;
        do {
            fresh = intern("v" + std::to_string(next++));
        } while (taken.count(fresh));
        taken.insert(fresh);
        renaming.bind(s, Formula::var(fresh));
    }
    return renaming.apply(rename);
}

Formula rename_apart(const Formula& keep, const Formula& rename) {
    Substitution ignored;
    return rename_apart(keep, rename, ignored);
}

bool is_alphabetic_variant(const Formula& a, const Formula& b) {
    std::unordered_map<Symbol, Symbol> fwd, back;
    return variant_into(a, b, fwd, back);
}

std::optional<Substitution> variant_renaming(const Formula& from, const Formula& to) {
    std::unordered_map<Symbol, Symbol> fwd, back;
    if (!variant_into(from, to, fwd, back)) return std::nullopt;
    Substitution s;
    for (auto& [a, b] : fwd)
        if (a != b) s.bind(a, Formula::var(b));
    return s;
}

Formula normalize_variables(const Formula& f, Substitution& renaming) {
    renaming = Substitution();
    auto vs = variables(f);
    bool already = true;
    for (std::size_t k = 0; k < vs.size(); ++k)
        if (vs[k] != standard_symbol(k)) already = false;
    if (already) return f;
    // Two-phase so that a target name already used elsewhere is not captured.
    for (std::size_t k = 0; k < vs.size(); ++k) renaming.bind(vs[k], Formula::var(standard_symbol(k)));
    return renaming.apply(f);
}

Formula normalize_variables(const Formula& f) {
    Substitution ignored;
    return normalize_variables(f, ignored);
}

std::string variant_key(const Formula& f) { return normalize_variables(f).str(); }

Formula abstract_constants(const Formula& f) {
    switch (f.kind()) {
        case Kind::Var: return f;
        case Kind::Const: return Formula::var("_" + f.name());
        case Kind::Neg: return Formula::neg(abstract_constants(f.arg()));
        case Kind::Impl: return Formula::impl(abstract_constants(f.antecedent()), abstract_constants(f.consequent()));
    }
    return f;
}

Substitution constant_restoring_substitution(const Formula& original) {
    Substitution s;
    for (Symbol c : constants(original)) s.bind(intern("_" + symbol_name(c)), Formula::constant(c));
    return s;
}

// ---- double negations ----

namespace {

bool is_dn(const Formula& f) { return f.is_neg() && f.arg().is_neg(); }

void walk_dn(const Formula& f, Path& path, std::vector<DnOccurrence>& out) {
    if (is_dn(f)) {
        const Formula& q = f.arg().arg();
        auto it = std::find_if(out.begin(), out.end(), [&](const DnOccurrence& o) { return o.subformula == q; });
        if (it == out.end()) out.push_back({q, {path}});
        else it->positions.push_back(path);
    }
    if (f.is_neg()) {
        path.push_back(0);
        walk_dn(f.arg(), path, out);
        path.pop_back();
    } else if (f.is_impl()) {
        path.push_back(0);
        walk_dn(f.antecedent(), path, out);
        path.back() = 1;
        walk_dn(f.consequent(), path, out);
        path.pop_back();
    }
}

}  // namespace

std::vector<DnOccurrence> dn_occurrences(const Formula& f) {
    std::vector<DnOccurrence> out;
    Path path;
    walk_dn(f, path, out);
    return out;
}

bool has_double_negation(const Formula& f) {
    if (is_dn(f)) return true;
    if (f.is_neg()) return has_double_negation(f.arg());
    if (f.is_impl()) return has_double_negation(f.antecedent()) || has_double_negation(f.consequent());
    return false;
}

std::vector<Formula> dn_subformulas(const Formula& f) {
    std::vector<Formula> out;
    std::unordered_set<const void*> visited;
    std::unordered_set<Formula, FormulaHash> found;
    collect_dn_subformulas(f, visited, found, out);
    return out;
}

void collect_dn_subformulas(const Formula& f, std::unordered_set<const void*>& visited,
                            std::unordered_set<Formula, FormulaHash>& found, std::vector<Formula>& out) {
    if (f.is_atom() || !visited.insert(f.node_id()).second) return;
    if (is_dn(f) && found.insert(f).second) out.push_back(f);
    collect_dn_subformulas(f.arg(), visited, found, out);
    if (f.is_impl()) collect_dn_subformulas(f.consequent(), visited, found, out);
}

Formula erase_selected(const Formula& f, const std::vector<Formula>& selection) {
    if (selection.empty()) return f;
    return SelectionEraser(selection)(f);
}

SelectionEraser::SelectionEraser(std::vector<Formula> selection)
    : selection_(std::move(selection)), chosen_(selection_.begin(), selection_.end()) {}

Formula SelectionEraser::operator()(const Formula& f) {
    if (selection_.empty()) return f;
    Formula cur = f;
    for (;;) {
        Formula next = pass(cur);
        if (next.shares_node(cur)) return next;
        cur = std::move(next);
    }
}

Formula SelectionEraser::pass(const Formula& f) {
    if (f.is_atom()) return f;
    if (auto it = memo_.find(f.node_id()); it != memo_.end()) return it->second.second;
    Formula out;
    if (f.is_impl()) {
        Formula a = pass(f.antecedent());
        Formula b = pass(f.consequent());
        out = a.shares_node(f.antecedent()) && b.shares_node(f.consequent()) ? f : Formula::impl(std::move(a), std::move(b));
    } else {
        Formula a = pass(f.arg());
        out = a.shares_node(f.arg()) ? f : Formula::neg(std::move(a));
        while (is_dn(out) && chosen_.count(out.arg().arg())) out = out.arg().arg();
    }
    memo_.emplace(f.node_id(), std::make_pair(f, out));
    return out;
}

Formula erase_double_negations(const Formula& f, const std::vector<Formula>& selection) {
    auto occ = dn_occurrences(f);
    for (const Formula& q : selection) {
        bool found = std::any_of(occ.begin(), occ.end(), [&](const DnOccurrence& o) { return o.subformula == q; });
        if (!found) throw Error("selected formula " + q.str() + " does not occur doubly negated in " + f.str());
    }
    return erase_selected(f, selection);
}

}  // namespace dnelim
