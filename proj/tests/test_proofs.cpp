#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "dnelim/corpus.hpp"
#include "dnelim/derive.hpp"
#include "dnelim/search.hpp"
#include "oracles.hpp"

using namespace dnelim;

namespace {

Formula F(const char* s, const ConstantSet& cs = {}) { return parse_formula(s, cs); }

std::vector<std::string> strings(const std::vector<Formula>& fs) {
    std::vector<std::string> out;
    for (auto& f : fs) out.push_back(f.str());
    return out;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
    auto at = s.find(from);
    REQUIRE(at != std::string::npos);
    return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("check_cd_proof: two-line D1 listing and tampering") {
    CDProof p = load_builtin_listing("l_d1");
    CHECK(check_cd_proof(p).valid);
    CHECK(p.deduced_count() == 2);
    CHECK(p.conclusion() == F("i(x,x)"));

    std::string text(*builtin_listing("l_d1"));
    CDProof bad = parse_proof_listing(replace(text, "54 [31,L2] i(x,x)", "54 [31,L2] i(x,y)"), axiom_system("L"));
    Verdict v = check_cd_proof(bad);
    CHECK_FALSE(v.valid);
    CHECK(v.where == "54");
}

TEST_CASE("check_cd_proof: D5 listing after its repairs") {
    CDProof p = load_builtin_listing("l_d5");
    CHECK(check_cd_proof(p).valid);
    CHECK(p.deduced_count() == 28);
    CHECK(concludes(p, *named_formula("D5")) == Conclusion::Exact);
}

TEST_CASE("listing: repaired reference resolves, duplicate id rejected") {
    CDProof d3 = load_builtin_listing("a_d3");
    CHECK(check_cd_proof(d3).valid);
    const CDLine* l34 = d3.line(34);
    REQUIRE(l34);
    CHECK(l34->minor.str() == "A2");

    const char* dup = "1 [L1,L3] i(i(i(n(x),y),z),i(x,z))\n1 [1,L2] i(x,x)\n";
    CHECK_THROWS_AS(parse_proof_listing(dup, axiom_system("L")), Error);
    CHECK_THROWS_AS(parse_proof_listing("1 [L9,L3] i(x,x)\n", axiom_system("L")), Error);
}

TEST_CASE("repairs: each one is needed, works, and ref repairs are unique") {
    for (auto& e : builtin_corpus()) {
        CorpusResult r = verify_corpus_entry(e);
        for (auto& c : r.repairs) {
            INFO(e.id << " " << c.entry);
            CHECK(c.original_fails);
            CHECK(c.repaired_checks);
            CHECK(c.unique);
        }
    }
}

TEST_CASE("check_mp_proof: deduction-theorem base step and bad nodes") {
    const AxiomSystem& h = axiom_system("H");
    ConstantSet ab{"a", "b"};
    Substitution s;
    s.bind(intern("x"), F("a", ab));
    s.bind(intern("y"), F("b", ab));
    MPTree leaf = mp_axiom(h, "H1", s);
    CHECK(leaf->formula == F("i(a,i(b,a))", ab));
    MPProof p{h, {F("a", ab)}, mp_apply(leaf, mp_assumption(F("a", ab)))};
    CHECK(check_mp_proof(p).valid);
    CHECK(p.conclusion() == F("i(b,a)", ab));

    MPProof bad{h, {F("a", ab)}, mp_node(mp_assumption(F("a", ab)), leaf, F("b", ab))};
    CHECK_FALSE(check_mp_proof(bad).valid);

    auto wrong = std::make_shared<MPNode>(*leaf);
    wrong->formula = F("i(a,i(a,a))", ab);
    CHECK_FALSE(check_mp_proof(MPProof{h, {}, wrong}).valid);

    CHECK_FALSE(check_mp_proof(MPProof{h, {}, mp_assumption(F("a", ab))}).valid);
}

TEST_CASE("dn_report: L5 proof is free, formula 6 has four occurrences") {
    CHECK(dn_report(load_builtin_listing("l_l5")).dn_free());
    auto occ = dn_occurrences(*named_formula("U6"));
    REQUIRE(occ.size() == 1);
    CHECK(occ[0].subformula == F("x"));
    CHECK(occ[0].positions.size() == 4);
}

TEST_CASE("dn_report: allowed double negations are matched up to variants") {
    Substitution s;
    s.bind(intern("x"), F("n(n(i(y,y)))"));
    CDProof p = close_under_substitution(load_builtin_listing("l_d1"), s, builtin_dkit("L"));
    REQUIRE(check_cd_proof(p).valid);
    DnReport none = dn_report(p);
    CHECK_FALSE(none.violation_free());
    CHECK(dn_report(p, dn_allowance({F("n(n(i(u,u)))")})).violation_free());
    CHECK_FALSE(dn_report(p, dn_allowance({F("n(n(i(u,v)))")})).violation_free());
}

TEST_CASE("corpus: every listing checks with the expected length and no double negation") {
    for (auto& r : verify_corpus()) {
        INFO(r.entry.id << " " << r.verdict << " " << r.error);
        CHECK(r.valid);
        CHECK(r.deduced == r.entry.expected_deduced);
        CHECK(r.goal_ok);
        CHECK(r.dn_free);
        CHECK(r.ok());
    }
}

TEST_CASE("semantics cross-check: classical corpus lines are two-valued tautologies") {
    int lines = 0;
    for (auto& e : builtin_corpus()) {
        if (e.system != "L" && e.system != "L+D4D5") continue;
        CDProof p = load_builtin_listing(e.id);
        for (auto& l : p.lines) {
            CHECK(oracle::tautology2(oracle::from(l.formula)));
            ++lines;
        }
    }
    CHECK(lines > 100);
}

TEST_CASE("semantics cross-check: Frege, Meredith and Ulrich derivations are tautologies") {
    for (const char* sys : {"frege", "meredith", "ulrich"}) {
        ClosureResult c = enumerate_closure(axiom_system(sys), 3, 3000);
        for (auto& r : c.rounds)
            for (auto& f : r.formulas) CHECK(oracle::tautology2(oracle::from(f)));
    }
    SearchConfig cfg;
    cfg.time_limit_s = 20;
    SearchResult r = saturate(axiom_system("frege"), F("i(x,x)"), cfg);
    REQUIRE(r.proof);
    CHECK(check_cd_proof(*r.proof).valid);
    for (auto& l : r.proof->lines) CHECK(oracle::tautology2(oracle::from(l.formula)));
}

TEST_CASE("semantics cross-check: A corpus lines take value 1 under 1000 random valuations") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::int64_t> den(1, 64);
    for (auto& e : builtin_corpus()) {
        if (e.system != "A") continue;
        CDProof p = load_builtin_listing(e.id);
        std::vector<oracle::Term> terms;
        std::set<std::string> letters;
        for (auto& l : p.lines) {
            terms.push_back(oracle::from(l.formula));
            oracle::letters(terms.back(), letters);
        }
        bool all_one = true;
        for (int k = 0; k < 1000; ++k) {
            std::map<std::string, oracle::Frac> v;
            for (auto& x : letters) {
                std::int64_t q = den(rng);
                v[x] = oracle::Frac::make(std::uniform_int_distribution<std::int64_t>(0, q)(rng), q);
            }
            for (auto& t : terms)
                if (!(oracle::eval_l(t, v) == oracle::Frac{1, 1})) all_one = false;
        }
        INFO(e.id);
        CHECK(all_one);
    }
}

TEST_CASE("export: JSON round trip keeps verdicts and reports") {
    for (auto& stem : builtin_listing_stems()) {
        CDProof p = load_builtin_listing(stem);
        std::string j = export_cd_proof(p);
        CDProof q = import_cd_proof(j);
        CHECK(export_cd_proof(q) == j);
        CHECK(check_cd_proof(q).valid == check_cd_proof(p).valid);
        CHECK(strings(dn_report(q).aggregate) == strings(dn_report(p).aggregate));
        CHECK(parse_proof_listing(format_cd_proof(p), p.system).lines.size() == p.lines.size());
    }
    Substitution s;
    s.bind(intern("x"), F("n(n(y))"));
    CDProof p = close_under_substitution(load_builtin_listing("l_d1"), s, builtin_dkit("L"));
    CDProof q = import_cd_proof(export_cd_proof(p));
    CHECK(dn_report(q).str() == dn_report(p).str());

    MPProof m = MPProof{axiom_system("H"), {}, mp_axiom(axiom_system("H"), "H1", {})};
    MPProof m2 = import_mp_proof(export_mp_proof(m));
    CHECK(check_mp_proof(m2).valid);
    CHECK(export_mp_proof(m2) == export_mp_proof(m));
}

TEST_CASE("export: assumptions with constants survive the round trip") {
    ConstantSet ab{"a", "b"};
    ProofBuilder b(axiom_system("H"), {F("a", ab), F("i(a,b)", ab)});
    int minor = b.assumption(0);
    int major = b.assumption(1);
    CDProof p = b.build(b.cd(major, minor));
    REQUIRE(check_cd_proof(p).valid);
    CHECK(p.conclusion() == F("b", ab));
    CDProof q = import_cd_proof(export_cd_proof(p));
    CHECK(check_cd_proof(q).valid);
    CHECK(q.assumptions == p.assumptions);
    auto path = std::filesystem::temp_directory_path() / "dnelim_assumptions.txt";
    std::ofstream(path) << format_cd_proof(p);
    CDProof r = load_cd_proof_file(path.string());
    std::filesystem::remove(path);
    CHECK(check_cd_proof(r).valid);
    CHECK(r.assumptions == p.assumptions);
}
