// Exercises the shared library through its C interface only.
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "dnelim/dnelim.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::string kCorpus = DNE_TEST_CORPUS_DIR;
const std::string kData = DNE_TEST_DATA_DIR;

struct Result {
    int status;
    dne_result* r = nullptr;
    ~Result() { dne_result_free(r); }
    std::string report() const { return dne_result_report(r); }
    json data() const { return json::parse(dne_result_data(r)); }
};

fs::path scratch(const std::string& name) {
    fs::path d = fs::temp_directory_path() / "dnelim_capi_test";
    fs::create_directories(d);
    return d / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("formulas: parse, inspect, free") {
    dne_formula* f = nullptr;
    REQUIRE(dne_formula_parse("i(n(n(a)),x)", "a", &f) == DNE_OK);
    CHECK(std::string(dne_formula_text(f)) == "i(n(n(a)),x)");
    CHECK(dne_formula_weight(f) == 5);
    CHECK(dne_formula_has_dn(f) == 1);
    dne_formula_free(f);

    dne_formula* bad = nullptr;
    CHECK(dne_formula_parse("i(x", "", &bad) == DNE_EPARSE);
    CHECK(bad == nullptr);
    CHECK(std::string(dne_last_error()).size() > 0);
    CHECK(dne_formula_parse(nullptr, "", &bad) == DNE_EUSAGE);
    CHECK(std::string(dne_status_name(DNE_EIO)) == "io");
}

TEST_CASE("proofs: load, check, export") {
    dne_proof* p = nullptr;
    REQUIRE(dne_proof_load((kCorpus + "/l_d1.listing").c_str(), &p) == DNE_OK);
    CHECK(dne_proof_check(p) == DNE_OK);
    CHECK(dne_proof_deduced(p) == 2);
    CHECK(std::string(dne_proof_conclusion(p)) == "i(x,x)");
    dne_proof* q = nullptr;
    REQUIRE(dne_proof_parse_json(dne_proof_json(p), &q) == DNE_OK);
    CHECK(std::string(dne_proof_json(q)) == dne_proof_json(p));
    dne_proof_free(q);
    dne_proof_free(p);

    dne_proof* none = nullptr;
    CHECK(dne_proof_load("/nonexistent/proof.json", &none) == DNE_EIO);
    CHECK(dne_proof_parse_json("{", &none) == DNE_EPARSE);
}

TEST_CASE("check: valid, tampered and missing files") {
    std::string good = kCorpus + "/l_d4.listing";
    const char* paths[] = {good.c_str()};
    Result ok{0};
    ok.status = dne_check(paths, 1, &ok.r);
    CHECK(ok.status == DNE_OK);
    CHECK(ok.report().find("valid") != std::string::npos);

    std::ifstream in(kCorpus + "/l_d1.listing");
    std::string text((std::istreambuf_iterator<char>(in)), {});
    text.replace(text.find("i(x,x)"), 6, "i(x,y)");
    fs::path bad = scratch("tampered.listing");
    write(bad, text);
    std::string bs = bad.string();
    const char* bp[] = {bs.c_str()};
    Result fail{0};
    fail.status = dne_check(bp, 1, &fail.r);
    CHECK(fail.status == DNE_FAIL);

    const char* missing[] = {"/nonexistent/x.listing"};
    Result io{0};
    io.status = dne_check(missing, 1, &io.r);
    CHECK(io.status == DNE_EIO);
}

TEST_CASE("dnreport, pushback and erase on a proof with double negations") {
    std::string path = kData + "/l_dn_proof.json";
    Result rep{0};
    rep.status = dne_dnreport(path.c_str(), "", &rep.r);
    CHECK(rep.status == DNE_FAIL);
    CHECK(!rep.data()["aggregate"].empty());

    Result push{0};
    push.status = dne_pushback(path.c_str(), &push.r);
    CHECK(push.status == DNE_OK);

    Result er{0};
    er.status = dne_erase(path.c_str(), "x", &er.r);
    CHECK(er.status == DNE_EUSAGE);
}

TEST_CASE("eliminate: L proof through a manifest, invalid input, H goal") {
    fs::path out = scratch("eliminated.json");
    fs::path manifest = scratch("l.json");
    write(manifest, json{{"input", kData + "/l_dn_proof.json"}, {"output", out.string()}}.dump());
    Result r{0};
    r.status = dne_eliminate(manifest.string().c_str(), &r.r);
    INFO(r.report());
    CHECK(r.status == DNE_OK);
    dne_proof* p = nullptr;
    REQUIRE(dne_proof_load(out.string().c_str(), &p) == DNE_OK);
    CHECK(dne_proof_check(p) == DNE_OK);
    CHECK(std::string(dne_proof_conclusion(p)) == "i(i(i(n(x),y),n(x)),n(x))");
    dne_proof_free(p);
    Result rep{0};
    rep.status = dne_dnreport(out.string().c_str(), "", &rep.r);
    CHECK(rep.status == DNE_OK);

    std::ifstream in(kCorpus + "/l_d1.listing");
    std::string text((std::istreambuf_iterator<char>(in)), {});
    text.replace(text.find("i(x,x)"), 6, "i(x,y)");
    fs::path bad = scratch("bad_input.listing");
    write(bad, text);
    write(manifest, json{{"input", bad.string()}, {"output", out.string()}}.dump());
    Result invalid{0};
    invalid.status = dne_eliminate(manifest.string().c_str(), &invalid.r);
    CHECK(invalid.status == DNE_FAIL);

    fs::path h = scratch("h.json");
    write(h, json{{"kind", "H"}, {"goal", "i(x,x)"}, {"output", out.string()}}.dump());
    Result hr{0};
    hr.status = dne_eliminate(h.string().c_str(), &hr.r);
    CHECK(hr.status == DNE_OK);

    write(h, json{{"kind", "H"}, {"goal", "i(x,x)"}}.dump());
    Result usage{0};
    usage.status = dne_eliminate(h.string().c_str(), &usage.r);
    CHECK(usage.status == DNE_EUSAGE);
}

TEST_CASE("star, search and closure") {
    Result s{0};
    s.status = dne_star("L", &s.r);
    CHECK(s.status == DNE_OK);
    CHECK(s.report().find("L4") != std::string::npos);
    CHECK(s.report().find("L5") != std::string::npos);

    dne_search_options o;
    dne_search_defaults(&o);
    o.time_limit_s = 10;
    Result sr{0};
    sr.status = dne_search("L", "D1", &o, &sr.r);
    CHECK(sr.status == DNE_OK);
    dne_proof* p = nullptr;
    REQUIRE(dne_proof_parse_json(dne_result_data(sr.r), &p) == DNE_OK);
    CHECK(dne_proof_deduced(p) == 2);
    dne_proof_free(p);

    Result unknown{0};
    unknown.status = dne_search("nosuch", "D1", &o, &unknown.r);
    CHECK(unknown.status == DNE_EUSAGE);

    Result c{0};
    c.status = dne_closure("ulrich", 1, 1000, &c.r);
    CHECK(c.status == DNE_OK);
}

TEST_CASE("sequent, eval, taut and corpus") {
    Result yes{0};
    yes.status = dne_sequent("a, i(a,b) => b", "a,b", &yes.r);
    CHECK(yes.status == DNE_OK);
    Result no{0};
    no.status = dne_sequent("=> i(i(i(x,y),x),x)", "", &no.r);
    CHECK(no.status == DNE_FAIL);

    Result e{0};
    e.status = dne_eval("L2", "x=1/2", &e.r);
    CHECK(e.status == DNE_OK);
    CHECK(e.data()["value"] == "1/2");
    Result missing{0};
    missing.status = dne_eval("i(x,y)", "x=1", &missing.r);
    CHECK(missing.status != DNE_OK);

    Result t{0};
    t.status = dne_taut("L2", 3, &t.r);
    CHECK(t.status == DNE_FAIL);
    Result t2{0};
    t2.status = dne_taut("L2", 0, &t2.r);
    CHECK(t2.status == DNE_OK);

    Result c{0};
    c.status = dne_corpus(&c.r);
    CHECK(c.status == DNE_OK);
}
