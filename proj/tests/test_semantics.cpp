#include <random>
#include <string>

#include "doctest.h"
#include "dnelim/proofs.hpp"
#include "dnelim/semantics.hpp"
#include "oracles.hpp"

using namespace dnelim;

namespace {

Formula F(const char* s) { return parse_formula(s); }

Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

}  // namespace

TEST_CASE("eval_lukasiewicz: examples") {
    CHECK(eval_lukasiewicz(*named_formula("L2"), {{"x", R(1, 2)}}) == R(1, 2));
    CHECK(eval_lukasiewicz(F("n(x)"), {{"x", R(1, 3)}}) == R(2, 3));
    CHECK(eval_lukasiewicz(F("i(x,y)"), {{"x", R(3, 4)}, {"y", R(1, 4)}}) == R(1, 2));
    CHECK(eval_lukasiewicz(F("i(x,y)"), {{"x", R(1, 4)}, {"y", R(3, 4)}}) == R(1));
    CHECK_THROWS_AS(eval_lukasiewicz(F("i(x,y)"), {{"x", R(1)}}), Error);
    CHECK_THROWS_AS(eval_lukasiewicz(F("x"), {{"x", R(3, 2)}}), Error);
}

TEST_CASE("parse_rational and to_string") {
    CHECK(parse_rational("1/2") == R(1, 2));
    CHECK(parse_rational("0") == R(0));
    CHECK(parse_rational("2/4") == R(1, 2));
    CHECK(to_string(R(1, 2)) == "1/2");
    CHECK(to_string(R(1)) == "1");
    CHECK_THROWS_AS(parse_rational("3/2"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("is_two_valued_tautology: axioms hold, other formulas fail") {
    for (const char* sys : {"L", "A", "H", "frege", "meredith", "ulrich"})
        for (auto& ax : axiom_system(sys).axioms) CHECK(is_two_valued_tautology(ax.formula));
    CHECK_FALSE(is_two_valued_tautology(F("i(x,y)")));
    CHECK_FALSE(is_two_valued_tautology(F("n(i(x,x))")));
}

TEST_CASE("find_finite_counterexample: L2 and Peirce fail at three values, A1-A4 do not") {
    auto c = find_finite_counterexample(*named_formula("L2"), 5);
    REQUIRE(c);
    CHECK(c->n == 3);
    CHECK(c->valuation.at("x") == R(1, 2));
    CHECK(c->value == R(1, 2));
    auto p = find_finite_counterexample(F("i(i(i(x,y),x),x)"), 5);
    REQUIRE(p);
    CHECK(p->n == 3);
    for (auto& ax : axiom_system("A").axioms) CHECK_FALSE(find_finite_counterexample(ax.formula, 5));
    CHECK(find_finite_counterexample(F("i(x,y)"), 5)->n == 2);
}

TEST_CASE("property: agreement with the oracle, monotone in the consequent, antitone in the antecedent") {
    std::mt19937_64 rng(61);
    for (int k = 0; k < 500; ++k) {
        Formula f = oracle::random_formula(rng, 5, {"x", "y", "z"});
        Valuation v = random_valuation(F("i(x,i(y,z))"), rng, 32);
        std::map<std::string, oracle::Frac> o;
        for (auto& [name, r] : v) o[name] = oracle::Frac::make(r.numerator(), r.denominator());
        Rational got = eval_lukasiewicz(f, v);
        oracle::Frac want = oracle::eval_l(oracle::from(f), o);
        CHECK(oracle::Frac::make(got.numerator(), got.denominator()) == want);

        Valuation w = random_valuation(F("i(x,x)"), rng, 32);
        Rational p = v.at("x"), q = w.at("x");
        Rational lo = std::min(p, q), hi = std::max(p, q);
        Rational r = v.at("y");
        auto val = [](Rational a, Rational b) { return eval_lukasiewicz(F("i(x,y)"), {{"x", a}, {"y", b}}); };
        CHECK(val(hi, r) <= val(lo, r));
        CHECK(val(r, lo) <= val(r, hi));
    }
}

TEST_CASE("property: two-valued tautology check agrees with the truth-table oracle") {
    std::mt19937_64 rng(62);
    for (int k = 0; k < 500; ++k) {
        Formula f = oracle::random_formula(rng, 4, {"x", "y", "z"});
        CHECK(is_two_valued_tautology(f) == oracle::tautology2(oracle::from(f)));
    }
}
