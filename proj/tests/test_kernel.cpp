#include <random>

#include "doctest.h"
#include "dnelim/kernel.hpp"
#include "oracles.hpp"

using namespace dnelim;

namespace {

Formula F(const char* s, const ConstantSet& cs = {}) { return parse_formula(s, cs); }

std::map<std::string, std::string> as_strings(const Substitution& s) {
    std::map<std::string, std::string> out;
    for (auto& [v, f] : s.bindings()) out[symbol_name(v)] = f.str();
    return out;
}

}  // namespace

TEST_CASE("parse: prefix notation") {
    Formula f = F("i(x,i(n(x),y))");
    REQUIRE(f.is_impl());
    CHECK(f.antecedent().is_var());
    CHECK(f.antecedent().name() == "x");
    REQUIRE(f.consequent().is_impl());
    CHECK(f.consequent().antecedent().is_neg());
    CHECK(f.consequent().antecedent().arg().name() == "x");
    CHECK(f.consequent().consequent().name() == "y");
    CHECK(F("x").is_var());
    CHECK_THROWS_AS(F("i(x,y"), ParseError);
    CHECK_THROWS_AS(F("i(x)"), ParseError);
    CHECK_THROWS_AS(F(""), ParseError);
    CHECK(F("a", {"a"}).is_const());
}

TEST_CASE("unify: examples against the textbook oracle") {
    auto s = unify(F("i(x,y)"), F("i(u,i(n(u),v))"));
    REQUIRE(s);
    auto o = oracle::unify(oracle::from(F("i(x,y)")), oracle::from(F("i(u,i(n(u),v))")));
    REQUIRE(o);
    CHECK(s->apply(F("i(x,y)")) == s->apply(F("i(u,i(n(u),v))")));
    CHECK(as_strings(*s) == std::map<std::string, std::string>{{"x", "u"}, {"y", "i(n(u),v)"}});
    CHECK(unify(F("x"), F("x"))->empty());
    CHECK_FALSE(unify(F("n(x)"), F("i(y,z)")));
    CHECK_FALSE(unify(F("x"), F("n(x)")));
    CHECK_FALSE(unify(F("a", {"a"}), F("b", {"b"})));
}

TEST_CASE("match_instance: examples") {
    ConstantSet ab{"a", "b"};
    auto m = match_instance(F("i(x,i(y,x))"), F("i(a,i(b,a))", ab));
    REQUIRE(m);
    CHECK(as_strings(*m) == std::map<std::string, std::string>{{"x", "a"}, {"y", "b"}});
    CHECK_FALSE(match_instance(F("i(x,x)"), F("i(a,b)", ab)));
    auto v = match_instance(F("x"), F("n(n(a))", ab));
    REQUIRE(v);
    CHECK(as_strings(*v) == std::map<std::string, std::string>{{"x", "n(n(a))"}});
}

TEST_CASE("rename_apart: examples") {
    Formula r = rename_apart(F("i(x,y)"), F("i(x,z)"));
    CHECK(is_alphabetic_variant(r, F("i(x,z)")));
    for (Symbol v : variables(r)) {
        CHECK(symbol_name(v) != "x");
        CHECK(symbol_name(v) != "y");
    }
    CHECK(rename_apart(F("a", {"a"}), F("i(x,x)")) == F("i(x,x)"));
    ConstantSet ab{"a", "b"};
    CHECK(rename_apart(F("i(x,y)"), F("i(a,b)", ab)) == F("i(a,b)", ab));
}

TEST_CASE("is_alphabetic_variant: examples") {
    CHECK(is_alphabetic_variant(F("i(x,x)"), F("i(y,y)")));
    CHECK_FALSE(is_alphabetic_variant(F("n(n(i(x,y)))"), F("n(n(i(z,z)))")));
    CHECK(is_alphabetic_variant(F("i(x,y)"), F("i(y,x)")));
    CHECK_FALSE(is_alphabetic_variant(F("i(x,y)"), F("i(x,x)")));
}

TEST_CASE("dn_occurrences: examples") {
    auto d = dn_occurrences(F("i(n(n(x)),x)"));
    REQUIRE(d.size() == 1);
    CHECK(d[0].subformula == F("x"));
    CHECK(dn_occurrences(F("i(i(n(x),x),x)")).empty());
    auto t = dn_occurrences(F("n(n(n(x)))"));
    REQUIRE(t.size() == 2);
    CHECK(t[0].subformula == F("n(x)"));
    CHECK(t[0].positions == std::vector<Path>{Path{}});
    CHECK(t[1].subformula == F("x"));
    CHECK(t[1].positions == std::vector<Path>{Path{0}});
}

TEST_CASE("erase_double_negations: examples") {
    CHECK(erase_double_negations(F("n(n(x))"), {F("x")}) == F("x"));
    CHECK(erase_double_negations(F("i(i(n(y),n(n(y))),n(n(y)))"), {F("y")}) == F("i(i(n(y),y),y)"));
    CHECK(erase_double_negations(F("i(n(n(p)),n(n(q)))"), {F("p")}) == F("i(p,n(n(q)))"));
    CHECK_THROWS_AS(erase_double_negations(F("i(x,y)"), {F("x")}), Error);
}

TEST_CASE("property: unifier soundness and agreement with the oracle (1000 cases)") {
    std::mt19937_64 rng(11);
    int unified = 0;
    for (int k = 0; k < 1000; ++k) {
        Formula a = oracle::random_formula(rng, 4, {"x", "y", "z"});
        Formula b = oracle::random_formula(rng, 4, {"x", "u", "v"});
        auto s = unify(a, b);
        auto o = oracle::unify(oracle::from(a), oracle::from(b));
        REQUIRE(s.has_value() == o.has_value());
        if (!s) continue;
        ++unified;
        CHECK(s->apply(a) == s->apply(b));
        CHECK(s->is_idempotent());
        // both unifiers are most general, so their results are variants
        CHECK(oracle::variant(oracle::from(s->apply(a)), oracle::apply(oracle::from(a), *o)));
    }
    CHECK(unified > 50);
}

TEST_CASE("property: MGU generality on built instances (1000 cases)") {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 1000; ++k) {
        Formula pattern = oracle::random_formula(rng, 4, {"x", "y", "z"});
        Substitution s0;
        for (Symbol v : variables(pattern)) s0.bind(v, oracle::random_formula(rng, 2, {"u", "v", "w"}));
        Formula inst = s0.apply(pattern);
        Formula renamed = rename_apart(pattern, inst);
        auto mgu = unify(pattern, renamed);
        REQUIRE(mgu);
        CHECK(mgu->apply(pattern) == mgu->apply(renamed));
        CHECK(match_instance(mgu->apply(pattern), inst));
        auto m = match_instance(pattern, inst);
        REQUIRE(m);
        CHECK(m->apply(pattern) == inst);
    }
}

TEST_CASE("property: match_instance success implies exact instance") {
    std::mt19937_64 rng(13);
    int hits = 0;
    for (int k = 0; k < 1000; ++k) {
        Formula p = oracle::random_formula(rng, 3, {"x", "y"});
        Formula t = oracle::random_formula(rng, 4, {"x", "y", "z"});
        if (auto m = match_instance(p, t)) {
            ++hits;
            CHECK(m->apply(p) == t);
        }
    }
    CHECK(hits > 20);
}

TEST_CASE("property: erase leaves no selected double negation") {
    std::mt19937_64 rng(14);
    for (int k = 0; k < 500; ++k) {
        Formula f = oracle::random_formula(rng, 5, {"x", "y"});
        auto occ = dn_occurrences(f);
        if (occ.empty()) continue;
        std::vector<Formula> sel;
        for (auto& o : occ)
            if (rng() % 2) sel.push_back(o.subformula);
        if (sel.empty()) sel.push_back(occ[0].subformula);
        Formula g = erase_double_negations(f, sel);
        for (auto& o : dn_occurrences(g))
            for (auto& q : sel) CHECK_FALSE(o.subformula == q);
        // oracle: brute-force positions agree with the grouped occurrences
        std::size_t n = 0;
        for (auto& o : dn_occurrences(f)) n += o.positions.size();
        CHECK(n == oracle::dn_positions(oracle::from(f)).size());
    }
}

TEST_CASE("property: parse of print is the identity") {
    std::mt19937_64 rng(15);
    for (int k = 0; k < 1000; ++k) {
        Formula f = oracle::random_formula(rng, 6, {"x", "y", "z", "v6"}, {"a", "b"});
        CHECK(parse_formula(f.str(), {"a", "b"}) == f);
    }
}

TEST_CASE("property: alphabetic variance is an equivalence relation") {
    std::mt19937_64 rng(16);
    std::vector<Formula> sample;
    for (int k = 0; k < 120; ++k) sample.push_back(oracle::random_formula(rng, 2, {"x", "y", "z"}));
    for (auto& a : sample) {
        CHECK(is_alphabetic_variant(a, a));
        for (auto& b : sample) {
            bool ab = is_alphabetic_variant(a, b);
            CHECK(ab == is_alphabetic_variant(b, a));
            CHECK(ab == oracle::variant(oracle::from(a), oracle::from(b)));
            CHECK(ab == (variant_key(a) == variant_key(b)));
            if (!ab) continue;
            for (auto& c : sample)
                if (is_alphabetic_variant(b, c)) CHECK(is_alphabetic_variant(a, c));
        }
    }
}
