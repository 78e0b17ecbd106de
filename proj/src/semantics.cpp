#include "dnelim/semantics.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace dnelim {

namespace {

const Rational kOne(1), kZero(0);

std::vector<std::string> letter_names(const Formula& f) {
    std::vector<std::string> out;
    for (Symbol s : variables(f)) out.push_back(symbol_name(s));
    for (Symbol s : constants(f)) out.push_back(symbol_name(s));
    return out;
}

}  // namespace

Rational eval_lukasiewicz(const Formula& f, const Valuation& v) {
    switch (f.kind()) {
        case Kind::Var:
        case Kind::Const: {
            auto it = v.find(f.name());
            if (it == v.end()) throw Error("no value for letter " + f.name());
            if (it->second < kZero || it->second > kOne) throw Error("value of " + f.name() + " outside [0,1]");
            return it->second;
        }
        case Kind::Neg: return kOne - eval_lukasiewicz(f.arg(), v);
        case Kind::Impl: {
            Rational r = kOne - eval_lukasiewicz(f.antecedent(), v) + eval_lukasiewicz(f.consequent(), v);
            return std::min(r, kOne);
        }
    }
    return kZero;
}

bool is_two_valued_tautology(const Formula& f) {
    auto names = letter_names(f);
    if (names.size() > 24) throw Error("too many letters for a truth table");
    Valuation v;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << names.size()); ++bits) {
        for (std::size_t k = 0; k < names.size(); ++k) v[names[k]] = Rational((bits >> k) & 1);
        if (eval_lukasiewicz(f, v) != kOne) return false;
    }
    return true;
}

std::optional<Counterexample> find_finite_counterexample(const Formula& f, int max_n) {
    auto names = letter_names(f);
    for (int n = 2; n <= max_n; ++n) {
        std::vector<int> idx(names.size(), 0);
        Valuation v;
        for (;;) {
            for (std::size_t k = 0; k < names.size(); ++k) v[names[k]] = Rational(idx[k], n - 1);
            Rational r = eval_lukasiewicz(f, v);
            if (r < kOne) return Counterexample{n, v, r};
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
    return std::nullopt;
}

Valuation random_valuation(const Formula& f, std::mt19937_64& rng, std::int64_t max_den) {
    Valuation v;
    std::uniform_int_distribution<std::int64_t> den(1, max_den);
    for (auto& name : letter_names(f)) {
        std::int64_t d = den(rng);
        std::uniform_int_distribution<std::int64_t> num(0, d);
        v[name] = Rational(num(rng), d);
    }
    return v;
}

Rational parse_rational(const std::string& text) {
    try {
        std::size_t slash = text.find('/');
        std::size_t used = 0;
        std::int64_t num = std::stoll(text.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? text.size() : slash)) throw Error("");
        std::int64_t den = 1;
        if (slash != std::string::npos) {
            std::string d = text.substr(slash + 1);
            den = std::stoll(d, &used);
            if (used != d.size() || den == 0) throw Error("");
        }
        Rational r(num, den);
        if (r < kZero || r > kOne) throw Error("");
        return r;
    } catch (const std::exception&) {
        throw Error("bad truth value '" + text + "' (expected p/q in [0,1])");
    }
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace dnelim
