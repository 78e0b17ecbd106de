// Reference implementations used only by the tests. They work on their own
// term type and share no code with the library beyond parsing.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dnelim/formula.hpp"

namespace oracle {

struct Term {
    char op;  // 'v' variable, 'c' constant, 'n', 'i'
    std::string name;
    std::vector<Term> args;

    bool operator==(const Term&) const = default;
};

inline Term from(const dnelim::Formula& f) {
    using dnelim::Kind;
    switch (f.kind()) {
        case Kind::Var: return {'v', f.name(), {}};
        case Kind::Const: return {'c', f.name(), {}};
        case Kind::Neg: return {'n', "", {from(f.arg())}};
        case Kind::Impl: return {'i', "", {from(f.antecedent()), from(f.consequent())}};
    }
    return {};
}

inline std::string show(const Term& t) {
    switch (t.op) {
        case 'v':
        case 'c': return t.name;
        case 'n': return "n(" + show(t.args[0]) + ")";
        default: return "i(" + show(t.args[0]) + "," + show(t.args[1]) + ")";
    }
}

// ---- Robinson unification with triangular bindings and occurs check ----

using Bindings = std::map<std::string, Term>;

inline Term walk(const Term& t, const Bindings& b) {
    if (t.op == 'v') {
        auto it = b.find(t.name);
        if (it != b.end()) return walk(it->second, b);
    }
    return t;
}

inline bool occurs(const std::string& v, const Term& t, const Bindings& b) {
    Term w = walk(t, b);
    if (w.op == 'v') return w.name == v;
    for (auto& a : w.args)
        if (occurs(v, a, b)) return true;
    return false;
}

inline bool unify_into(const Term& x, const Term& y, Bindings& b) {
    Term s = walk(x, b), t = walk(y, b);
    if (s.op == 'v' && t.op == 'v' && s.name == t.name) return true;
    if (s.op == 'v') {
        if (occurs(s.name, t, b)) return false;
        b[s.name] = t;
        return true;
    }
    if (t.op == 'v') return unify_into(t, s, b);
    if (s.op != t.op) return false;
    if (s.op == 'c') return s.name == t.name;
    for (std::size_t k = 0; k < s.args.size(); ++k)
        if (!unify_into(s.args[k], t.args[k], b)) return false;
    return true;
}

inline Term resolve(const Term& t, const Bindings& b) {
    Term w = walk(t, b);
    if (w.op == 'v' || w.op == 'c') return w;
    Term out{w.op, "", {}};
    for (auto& a : w.args) out.args.push_back(resolve(a, b));
    return out;
}

/// Fully resolved most general unifier, or nullopt.
inline std::optional<std::map<std::string, Term>> unify(const Term& a, const Term& b) {
    Bindings tri;
    if (!unify_into(a, b, tri)) return std::nullopt;
    std::map<std::string, Term> out;
    for (auto& [v, t] : tri) out[v] = resolve(t, tri);
    return out;
}

inline Term apply(const Term& t, const std::map<std::string, Term>& s) {
    if (t.op == 'v') {
        auto it = s.find(t.name);
        return it == s.end() ? t : it->second;
    }
    Term out{t.op, t.name, {}};
    for (auto& a : t.args) out.args.push_back(apply(a, s));
    return out;
}

/// Bijective renaming test by simultaneous traversal.
inline bool variant(const Term& a, const Term& b, std::map<std::string, std::string>& fw, std::map<std::string, std::string>& bw) {
    if (a.op != b.op) return false;
    if (a.op == 'v') {
        auto [i, fresh1] = fw.emplace(a.name, b.name);
        auto [j, fresh2] = bw.emplace(b.name, a.name);
        return i->second == b.name && j->second == a.name;
    }
    if (a.op == 'c') return a.name == b.name;
    for (std::size_t k = 0; k < a.args.size(); ++k)
        if (!variant(a.args[k], b.args[k], fw, bw)) return false;
    return true;
}

inline bool variant(const Term& a, const Term& b) {
    std::map<std::string, std::string> fw, bw;
    return variant(a, b, fw, bw);
}

// ---- double negations by brute force over positions ----

inline void dn_positions(const Term& t, std::string path, std::vector<std::pair<std::string, Term>>& out) {
    if (t.op == 'n' && t.args[0].op == 'n') out.emplace_back(path, t.args[0].args[0]);
    for (std::size_t k = 0; k < t.args.size(); ++k) dn_positions(t.args[k], path + char('0' + k), out);
}

inline std::vector<std::pair<std::string, Term>> dn_positions(const Term& t) {
    std::vector<std::pair<std::string, Term>> out;
    dn_positions(t, "", out);
    return out;
}

// ---- truth values ----

inline void letters(const Term& t, std::set<std::string>& out) {
    if (t.op == 'v' || t.op == 'c') out.insert(t.name);
    for (auto& a : t.args) letters(a, out);
}

inline bool eval2(const Term& t, const std::map<std::string, bool>& v) {
    switch (t.op) {
        case 'n': return !eval2(t.args[0], v);
        case 'i': return !eval2(t.args[0], v) || eval2(t.args[1], v);
        default: return v.at(t.name);
    }
}

inline bool tautology2(const Term& t) {
    std::set<std::string> ls;
    letters(t, ls);
    std::vector<std::string> names(ls.begin(), ls.end());
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << names.size()); ++m) {
        std::map<std::string, bool> v;
        for (std::size_t k = 0; k < names.size(); ++k) v[names[k]] = (m >> k) & 1;
        if (!eval2(t, v)) return false;
    }
    return true;
}

/// Exact fraction p/q with q > 0.
struct Frac {
    std::int64_t p = 0, q = 1;
    static Frac make(std::int64_t p, std::int64_t q) {
        if (q < 0) p = -p, q = -q;
        std::int64_t g = std::gcd(p < 0 ? -p : p, q);
        if (g == 0) g = 1;
        return {p / g, q / g};
    }
    friend Frac operator+(Frac a, Frac b) { return make(a.p * b.q + b.p * a.q, a.q * b.q); }
    friend Frac operator-(Frac a, Frac b) { return make(a.p * b.q - b.p * a.q, a.q * b.q); }
    friend bool operator<(Frac a, Frac b) { return a.p * b.q < b.p * a.q; }
    friend bool operator==(Frac a, Frac b) { return a.p == b.p && a.q == b.q; }
};

/// Lukasiewicz: n(p) = 1 - p, i(p,q) = min(1, 1 - p + q).
inline Frac eval_l(const Term& t, const std::map<std::string, Frac>& v) {
    Frac one{1, 1};
    switch (t.op) {
        case 'n': return one - eval_l(t.args[0], v);
        case 'i': {
            Frac r = one - eval_l(t.args[0], v) + eval_l(t.args[1], v);
            return one < r ? one : r;
        }
        default: return v.at(t.name);
    }
}

/// Three-element Heyting chain 0 < 1 < 2: a -> b = 2 if a <= b else b; ~a = a -> 0.
inline int eval_h3(const Term& t, const std::map<std::string, int>& v) {
    switch (t.op) {
        case 'n': return eval_h3(t.args[0], v) == 0 ? 2 : 0;
        case 'i': {
            int a = eval_h3(t.args[0], v), b = eval_h3(t.args[1], v);
            return a <= b ? 2 : b;
        }
        default: return v.at(t.name);
    }
}

/// A valuation refuting t in the three-element chain, if any.
inline std::optional<std::map<std::string, int>> h3_countermodel(const Term& t) {
    std::set<std::string> ls;
    letters(t, ls);
    std::vector<std::string> names(ls.begin(), ls.end());
    std::size_t total = 1;
    for (std::size_t k = 0; k < names.size(); ++k) total *= 3;
    for (std::size_t m = 0; m < total; ++m) {
        std::map<std::string, int> v;
        std::size_t r = m;
        for (auto& n : names) {
            v[n] = static_cast<int>(r % 3);
            r /= 3;
        }
        if (eval_h3(t, v) != 2) return v;
    }
    return std::nullopt;
}

// ---- random formulas ----

inline std::string random_text(std::mt19937_64& rng, int depth, const std::vector<std::string>& vars,
                               const std::vector<std::string>& consts = {}) {
    std::uniform_int_distribution<int> pick(0, 9);
    int r = pick(rng);
    if (depth <= 0 || r < 3) {
        if (!consts.empty() && pick(rng) < 2) return consts[std::uniform_int_distribution<std::size_t>(0, consts.size() - 1)(rng)];
        return vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)];
    }
    if (r < 5) return "n(" + random_text(rng, depth - 1, vars, consts) + ")";
    return "i(" + random_text(rng, depth - 1, vars, consts) + "," + random_text(rng, depth - 1, vars, consts) + ")";
}

inline dnelim::Formula random_formula(std::mt19937_64& rng, int depth, const std::vector<std::string>& vars = {"x", "y", "z", "u"},
                                      const std::vector<std::string>& consts = {}) {
    dnelim::ConstantSet cs(consts.begin(), consts.end());
    return dnelim::parse_formula(random_text(rng, depth, vars, consts), cs);
}

}  // namespace oracle
