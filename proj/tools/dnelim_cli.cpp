// Command-line front end over the C interface.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dnelim/dnelim.h"

namespace {

// Exit codes: 0 success, 1 logical failure, 2 usage or I/O.
int exit_code(int status) {
    if (status == DNE_OK) return 0;
    if (status == DNE_FAIL) return 1;
    return 2;
}

int finish(int status, dne_result* r, const std::string& out_path, bool quiet) {
    if (r) {
        std::string report = dne_result_report(r);
        if (status == DNE_OK || status == DNE_FAIL) {
            if (!quiet) std::cout << report;
        } else {
            std::cerr << report;
        }
        if (!out_path.empty() && *dne_result_data(r)) {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) {
                std::cerr << "cannot write " << out_path << "\n";
                dne_result_free(r);
                return 2;
            }
            f << dne_result_data(r);
        }
        dne_result_free(r);
    }
    return exit_code(status);
}

std::string join(const std::vector<std::string>& items) {
    std::string s;
    for (auto& i : items) s += (s.empty() ? "" : ";") + i;
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Double-negation elimination toolkit for implication-negation logics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(dne_version()));
    bool quiet = false;
    std::string out;
    app.add_flag("-q,--quiet", quiet, "Suppress the report");

    auto* check = app.add_subcommand("check", "Check condensed-detachment proofs (listing or JSON)");
    std::vector<std::string> paths;
    check->add_option("files", paths, "Proof files")->required();
    check->add_option("-o,--out", out, "Write a JSON summary");

    auto* dnrep = app.add_subcommand("dnreport", "Report doubly negated formulas per step");
    std::string proof;
    std::vector<std::string> allowed;
    dnrep->add_option("file", proof, "Proof file")->required();
    dnrep->add_option("--allow", allowed, "Formulas whose double negations are permitted");
    dnrep->add_option("-o,--out", out, "Write the report as JSON");

    auto* push = app.add_subcommand("pushback", "Convert a proof to modus ponens over axiom instances");
    push->add_option("file", proof, "Proof file")->required();
    push->add_option("-o,--out", out, "Write the modus-ponens proof (JSON)");

    auto* erase = app.add_subcommand("erase", "Pushback, then erase selected double negations");
    std::vector<std::string> selection;
    erase->add_option("file", proof, "Proof file")->required();
    erase->add_option("-s,--select", selection, "Formulas q whose n(n(q)) are erased");
    erase->add_option("-o,--out", out, "Write the modus-ponens proof (JSON)");

    auto* elim = app.add_subcommand("eliminate", "Run a pipeline manifest");
    std::string manifest;
    elim->add_option("manifest", manifest, "Manifest (JSON)")->required();

    auto* star = app.add_subcommand("star", "Close an axiom system under the negated-variable rule");
    std::string system;
    star->add_option("--system", system, "Axiom system")->required();
    star->add_option("-o,--out", out, "Write JSON");

    auto* search = app.add_subcommand("search", "Saturation by condensed detachment");
    std::string goal;
    dne_search_options so;
    dne_search_defaults(&so);
    bool no_avoid = false;
    bool subsume = false;
    std::vector<std::string> hints, resonators;
    search->add_option("--system", system, "Axiom system")->required();
    search->add_option("--goal", goal, "Goal formula or registry name")->required();
    search->add_option("--max-weight", so.max_weight, "Largest formula weight kept")->capture_default_str();
    search->add_option("--max-retained", so.max_retained, "Retained formula limit")->capture_default_str();
    search->add_option("--max-given", so.max_given, "Given formula limit (0: none)")->capture_default_str();
    search->add_option("--time-limit", so.time_limit_s, "Seconds (0: none)")->capture_default_str();
    auto* avoid = search->add_flag("--dn-avoidance", "Discard deduced formulas containing double negation");
    search->add_flag("--no-dn-avoidance", no_avoid, "Keep them (default)");
    search->add_flag("--subsume-goal", subsume, "Accept a generalization of the goal");
    search->add_option("--hint", hints, "pattern[:weight]");
    search->add_option("--resonator", resonators, "pattern[:weight]");
    search->add_option("-o,--out", out, "Write the proof (JSON)");

    auto* closure = app.add_subcommand("closure", "Breadth-first closure by condensed detachment");
    int rounds = 3;
    std::size_t cap = 100000;
    closure->add_option("--system", system, "Axiom system")->required();
    closure->add_option("--rounds", rounds, "Rounds")->capture_default_str();
    closure->add_option("--cap", cap, "Stop after this many formulas")->capture_default_str();
    closure->add_option("-o,--out", out, "Write JSON");

    auto* seq = app.add_subcommand("sequent", "Decide an intuitionistic sequent, e.g. \"a, i(a,b) => b\"");
    std::string sequent, constants;
    seq->add_option("sequent", sequent, "Sequent")->required();
    seq->add_option("--constants", constants, "Comma-separated constant letters");
    seq->add_option("-o,--out", out, "Write JSON");

    auto* eval = app.add_subcommand("eval", "Lukasiewicz value of a formula");
    std::string formula;
    std::vector<std::string> assign;
    eval->add_option("--formula", formula, "Formula or registry name")->required();
    eval->add_option("--assign", assign, "x=1/2 (repeatable)");
    eval->add_option("-o,--out", out, "Write JSON");

    auto* taut = app.add_subcommand("taut", "Two-valued tautology test, optionally finite-valued countermodels");
    int max_values = 0;
    taut->add_option("--formula", formula, "Formula or registry name")->required();
    taut->add_option("--max-values", max_values, "Also search Lukasiewicz n-valued counterexamples, n <= this");
    taut->add_option("-o,--out", out, "Write JSON");

    auto* corpus = app.add_subcommand("corpus", "Verify the bundled proof corpus");
    corpus->add_option("-o,--out", out, "Write JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    dne_result* r = nullptr;
    int status = DNE_EUSAGE;
    if (*check) {
        std::vector<const char*> ps;
        for (auto& p : paths) ps.push_back(p.c_str());
        status = dne_check(ps.data(), ps.size(), &r);
    } else if (*dnrep) {
        status = dne_dnreport(proof.c_str(), join(allowed).c_str(), &r);
    } else if (*push) {
        status = dne_pushback(proof.c_str(), &r);
    } else if (*erase) {
        status = dne_erase(proof.c_str(), join(selection).c_str(), &r);
    } else if (*elim) {
        status = dne_eliminate(manifest.c_str(), &r);
    } else if (*star) {
        status = dne_star(system.c_str(), &r);
    } else if (*search) {
        so.dn_avoidance = (avoid->count() > 0 && !no_avoid) ? 1 : 0;
        so.subsume_goal = subsume ? 1 : 0;
        std::string h = join(hints), res = join(resonators);
        so.hints = h.c_str();
        so.resonators = res.c_str();
        status = dne_search(system.c_str(), goal.c_str(), &so, &r);
    } else if (*closure) {
        status = dne_closure(system.c_str(), rounds, cap, &r);
    } else if (*seq) {
        status = dne_sequent(sequent.c_str(), constants.c_str(), &r);
    } else if (*eval) {
        std::string a;
        for (auto& x : assign) a += (a.empty() ? "" : ",") + x;
        status = dne_eval(formula.c_str(), a.c_str(), &r);
    } else if (*taut) {
        status = dne_taut(formula.c_str(), max_values, &r);
    } else if (*corpus) {
        status = dne_corpus(&r);
    }
    return finish(status, r, out, quiet);
}
