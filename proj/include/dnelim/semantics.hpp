#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>

#include <boost/rational.hpp>

#include "dnelim/formula.hpp"

namespace dnelim {

using Rational = boost::rational<std::int64_t>;
/// Truth values by letter name.
using Valuation = std::map<std::string, Rational>;

/// Infinite-valued value: ||n(p)|| = 1 - ||p||, ||i(p,q)|| = min(1 - ||p|| + ||q||, 1).
/// Throws Error for an unassigned letter or a value outside [0,1].
Rational eval_lukasiewicz(const Formula& f, const Valuation& v);

/// Truth-table check over {0,1}.
bool is_two_valued_tautology(const Formula& f);

struct Counterexample {
    int n = 0;  // grid {0, 1/(n-1), ..., 1}
    Valuation valuation;
    Rational value;
};

/// Smallest n in [2, max_n] and a valuation on the n-valued grid with value < 1.
std::optional<Counterexample> find_finite_counterexample(const Formula& f, int max_n);

/// Random valuation of f's letters with denominators at most max_den.
Valuation random_valuation(const Formula& f, std::mt19937_64& rng, std::int64_t max_den = 64);

/// "1/2", "0", "1"; throws Error when malformed or outside [0,1].
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

}  // namespace dnelim
