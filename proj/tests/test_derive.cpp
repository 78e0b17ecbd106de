#include <functional>
#include <random>
#include <string>

#include "doctest.h"
#include "dnelim/derive.hpp"
#include "oracles.hpp"

using namespace dnelim;

namespace {

Formula F(const char* s, const ConstantSet& cs = {}) { return parse_formula(s, cs); }

// Condensed detachment on oracle terms: rename the minor apart, unify it with
// the major's antecedent, return the instantiated consequent.
std::optional<oracle::Term> oracle_cd(const oracle::Term& major, oracle::Term minor) {
    std::function<void(oracle::Term&)> tag = [&](oracle::Term& t) {
        if (t.op == 'v') t.name = "m_" + t.name;
        for (auto& a : t.args) tag(a);
    };
    tag(minor);
    if (major.op != 'i') return std::nullopt;
    auto s = oracle::unify(major.args[0], minor);
    if (!s) return std::nullopt;
    return oracle::apply(major.args[1], *s);
}

bool last_uses_variant_of(const CDProof& p, const Formula& f) {
    for (auto& l : p.lines)
        if (is_alphabetic_variant(l.formula, f)) return true;
    return false;
}

}  // namespace

TEST_CASE("condensed_detach: examples and a failure confirmed by the oracle") {
    auto c = condensed_detach(*named_formula("L1"), *named_formula("L3"));
    REQUIRE(c);
    CHECK(is_alphabetic_variant(*c, F("i(i(i(n(x),y),z),i(x,z))")));
    auto d = condensed_detach(*c, *named_formula("L2"));
    REQUIRE(d);
    CHECK(is_alphabetic_variant(*d, F("i(x,x)")));

    CHECK_FALSE(condensed_detach(*named_formula("L2"), *named_formula("L1")));
    CHECK_FALSE(oracle_cd(oracle::from(*named_formula("L2")), oracle::from(*named_formula("L1"))));
    CHECK_FALSE(condensed_detach(F("x"), F("y")));
    CHECK_FALSE(condensed_detach(F("i(n(x),y)"), F("i(x,y)")));
    CHECK_FALSE(oracle_cd(oracle::from(F("i(n(x),y)")), oracle::from(F("i(x,y)"))));
}

TEST_CASE("property: condensed detachment agrees with the oracle on closure pairs") {
    std::vector<Formula> pool;
    for (auto& ax : axiom_system("L").axioms) pool.push_back(ax.formula);
    for (std::size_t round = 0; round < 2; ++round) {
        std::size_t n = pool.size();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (auto c = condensed_detach(pool[a], pool[b]); c && c->weight() <= 14) pool.push_back(*c);
    }
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    int agreed = 0;
    for (int k = 0; k < 1000; ++k) {
        const Formula& a = pool[pick(rng)];
        const Formula& b = pool[pick(rng)];
        auto c = condensed_detach(a, b);
        auto o = oracle_cd(oracle::from(a), oracle::from(b));
        REQUIRE(c.has_value() == o.has_value());
        if (c) CHECK(oracle::variant(oracle::from(*c), *o));
        ++agreed;
    }
    CHECK(agreed == 1000);
}

TEST_CASE("property: detaching an instance of the antecedent returns the consequent (500 cases)") {
    std::mt19937_64 rng(32);
    for (int k = 0; k < 500; ++k) {
        Formula c = oracle::random_formula(rng, 3, {"x", "y", "z"});
        Substitution s0;
        for (Symbol v : variables(c)) s0.bind(v, oracle::random_formula(rng, 2, {"u", "v", "w"}));
        Formula a = s0.apply(c);
        Formula b = oracle::random_formula(rng, 3, {"u", "v", "w", "v6"});
        auto r = condensed_detach(Formula::impl(a, b), c);
        REQUIRE(r);
        CHECK(is_alphabetic_variant(*r, b));
    }
}

TEST_CASE("prove_identity: variable, negation and implication cases") {
    const DKit& kit = builtin_dkit("L");
    CDProof px = prove_identity(F("x"), kit);
    CHECK(check_cd_proof(px).valid);
    CHECK(concludes(px, F("i(x,x)")) != Conclusion::Unrelated);
    CHECK(px.deduced_count() == kit.d1.deduced_count());

    CDProof pn = prove_identity(F("n(y)"), kit);
    CHECK(check_cd_proof(pn).valid);
    CHECK(concludes(pn, F("i(n(y),n(y))")) == Conclusion::Exact);
    CHECK(last_uses_variant_of(pn, kit.d2.conclusion()));

    ConstantSet ab{"a", "b"};
    CDProof pi = prove_identity(F("i(a,b)", ab), kit);
    CHECK(check_cd_proof(pi).valid);
    CHECK(concludes(pi, F("i(i(a,b),i(a,b))", ab)) != Conclusion::Unrelated);
    CHECK(last_uses_variant_of(pi, kit.d3.conclusion()));
}

TEST_CASE("property: identity proofs only use the double negations of their argument") {
    std::mt19937_64 rng(33);
    for (const char* sys : {"L", "A", "H"}) {
        const DKit& kit = builtin_dkit(sys);
        for (int k = 0; k < 60; ++k) {
            Formula alpha = oracle::random_formula(rng, 4, {"x", "y"});
            CDProof p = prove_identity(alpha, kit);
            INFO(sys << " " << alpha.str());
            CHECK(check_cd_proof(p).valid);
            CHECK(concludes(p, Formula::impl(alpha, alpha)) != Conclusion::Unrelated);
            CHECK(dn_report(p, dn_allowance({alpha})).violation_free());
        }
    }
}

TEST_CASE("prove_instance: examples") {
    const DKit& kit = builtin_dkit("L");
    CDProof p = prove_instance(*named_formula("L2"), F("i(i(n(i(y,y)),i(y,y)),i(y,y))"), kit);
    CHECK(check_cd_proof(p).valid);
    CHECK(concludes(p, F("i(i(n(i(y,y)),i(y,y)),i(y,y))")) == Conclusion::Exact);
    CHECK(dn_report(p).dn_free());

    CDProof same = prove_instance(*named_formula("L3"), *named_formula("L3"), kit);
    CHECK(check_cd_proof(same).valid);
    CHECK(is_alphabetic_variant(same.conclusion(), *named_formula("L3")));

    CHECK_THROWS_AS(prove_instance(*named_formula("L2"), F("i(x,x)"), kit), Error);
}

TEST_CASE("close_under_substitution: examples") {
    const DKit& kit = builtin_dkit("L");
    CDProof d1 = load_builtin_listing("l_d1");
    Substitution s;
    s.bind(intern("x"), F("n(z)"));
    CDProof p = close_under_substitution(d1, s, kit);
    CHECK(check_cd_proof(p).valid);
    CHECK(concludes(p, F("i(n(z),n(z))")) == Conclusion::Exact);

    CDProof same = close_under_substitution(d1, Substitution{}, kit);
    CHECK(check_cd_proof(same).valid);
    CHECK(is_alphabetic_variant(same.conclusion(), F("i(x,x)")));
}

TEST_CASE("property: substitution closure on corpus proofs (D-completeness)") {
    std::mt19937_64 rng(34);
    for (auto& stem : builtin_listing_stems()) {
        CDProof p = load_builtin_listing(stem);
        const char* sys = p.system.name == "L+D4D5" ? "L" : p.system.name.c_str();
        if (std::string(sys) != "L" && std::string(sys) != "A" && std::string(sys) != "H") continue;
        Substitution s;
        for (Symbol v : variables(p.conclusion())) s.bind(v, oracle::random_formula(rng, 2, {"u", "v"}));
        const DKit& base = builtin_dkit(sys);
        DKit kit = p.system.name == base.system.name ? base : make_dkit(p.system, base.d1, base.d2, base.d3);
        CDProof q = close_under_substitution(p, s, kit);
        INFO(stem);
        CHECK(check_cd_proof(q).valid);
        CHECK(concludes(q, s.apply(p.conclusion())) == Conclusion::Exact);
    }
}
