#include "dnelim/dnelim.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dnelim/corpus.hpp"
#include "dnelim/derive.hpp"
#include "dnelim/search.hpp"
#include "dnelim/semantics.hpp"
#include "dnelim/sequent.hpp"
#include "dnelim/transform.hpp"
#include "json.hpp"

using namespace dnelim;
using json = nlohmann::ordered_json;

struct dne_formula {
    Formula f;
    std::string text;
};

struct dne_proof {
    CDProof p;
    std::string conclusion;
    std::string json;
};

struct dne_result {
    int status = DNE_OK;
    std::string report;
    std::string data;
};

namespace {

thread_local std::string last_error;

struct Failure {
    int status;
    std::string message;
};

[[noreturn]] void usage(const std::string& m) { throw Failure{DNE_EUSAGE, m}; }

// A selection naming no double negation of the conclusion is a bad argument.
void checked_selection(const Formula& b, const Selection& s) {
    try {
        validate_selection(b, s);
    } catch (const Error& e) {
        usage(e.what());
    }
}

std::vector<std::string> split(const char* s, char sep) {
    std::vector<std::string> out;
    if (!s) return out;
    std::string cur;
    int depth = 0;
    for (const char* c = s; *c; ++c) {
        if (*c == '(') ++depth;
        if (*c == ')') --depth;
        if (*c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += *c;
        }
    }
    out.push_back(cur);
    std::vector<std::string> trimmed;
    for (auto& t : out) {
        auto b = t.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        trimmed.push_back(t.substr(b, t.find_last_not_of(" \t") - b + 1));
    }
    return trimmed;
}

ConstantSet constant_set(const char* csv) {
    ConstantSet cs;
    for (auto& c : split(csv, ',')) cs.insert(c);
    return cs;
}

Formula formula_arg(const std::string& text, const ConstantSet& cs = {}) {
    if (auto f = named_formula(text)) return *f;
    return parse_formula(text, cs);
}

const AxiomSystem& system_arg(const char* name) {
    if (!name || !*name) usage("missing system name");
    for (auto& n : axiom_system_names())
        if (n == name) return axiom_system(name);
    usage(std::string("unknown system '") + name + "'");
}

CDProof load_proof(const std::string& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) throw Failure{DNE_EIO, "cannot read " + path};
    return load_cd_proof_file(path);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Failure{DNE_EIO, "cannot write " + path};
    f << text;
    if (!f) throw Failure{DNE_EIO, "cannot write " + path};
}

std::string formula_list(const std::vector<Formula>& fs) {
    std::string s;
    for (auto& f : fs) s += (s.empty() ? "" : ", ") + f.str();
    return s.empty() ? "(none)" : s;
}

json report_json(const DnReport& r) {
    json j;
    j["dn_free"] = r.dn_free();
    j["violation_free"] = r.violation_free();
    j["aggregate"] = json::array();
    for (auto& f : r.aggregate) j["aggregate"].push_back(f.str());
    j["violations"] = json::array();
    for (auto& f : r.violations) j["violations"].push_back(f.str());
    j["steps"] = json::array();
    for (auto& s : r.steps) {
        if (s.dn.empty()) continue;
        json e;
        e["step"] = s.step;
        e["dn"] = json::array();
        for (auto& f : s.dn) e["dn"].push_back(f.str());
        j["steps"].push_back(e);
    }
    return j;
}

/// Runs body, turning exceptions into a status; stores the result.
template <class F>
int run(dne_result** out, F&& body) {
    auto r = new dne_result;
    try {
        body(*r);
        last_error.clear();
    } catch (const Failure& f) {
        r->status = f.status;
        r->report += f.message + "\n";
    } catch (const ParseError& e) {
        r->status = DNE_EPARSE;
        r->report += std::string("parse error: ") + e.what() + "\n";
    } catch (const json::exception& e) {
        r->status = DNE_EPARSE;
        r->report += std::string("json error: ") + e.what() + "\n";
    } catch (const Error& e) {
        r->status = DNE_FAIL;
        r->report += std::string("error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        r->status = DNE_EINTERNAL;
        r->report += std::string("internal error: ") + e.what() + "\n";
    }
    if (r->status != DNE_OK) last_error = r->report;
    int status = r->status;
    if (out)
        *out = r;
    else
        delete r;
    return status;
}

std::vector<Guide> guides(const char* text) {
    std::vector<Guide> out;
    for (auto& item : split(text, ';')) {
        Guide g;
        auto colon = item.rfind(':');
        if (colon != std::string::npos) {
            g.pattern = formula_arg(item.substr(0, colon));
            try {
                g.weight = std::stoul(item.substr(colon + 1));
            } catch (const std::exception&) {
                usage("bad guide weight in '" + item + "'");
            }
        } else {
            g.pattern = formula_arg(item);
            g.weight = 1;
        }
        out.push_back(std::move(g));
    }
    return out;
}

const StarKit& star_kit_for(const std::string& system) {
    if (system == "L" || system == "A") return builtin_star_kit(system);
    usage("no star kit for system '" + system + "' (L or A)");
}

}  // namespace

extern "C" {

const char* dne_version(void) { return "1.0.0"; }

const char* dne_status_name(int status) {
    switch (status) {
        case DNE_OK: return "ok";
        case DNE_FAIL: return "fail";
        case DNE_EUSAGE: return "usage";
        case DNE_EIO: return "io";
        case DNE_EPARSE: return "parse";
        case DNE_EINTERNAL: return "internal";
    }
    return "unknown";
}

const char* dne_last_error(void) { return last_error.c_str(); }

int dne_formula_parse(const char* text, const char* constants, dne_formula** out) {
    if (!text || !out) {
        last_error = "null argument";
        return DNE_EUSAGE;
    }
    try {
        Formula f = parse_formula(text, constant_set(constants));
        *out = new dne_formula{f, f.str()};
        last_error.clear();
        return DNE_OK;
    } catch (const std::exception& e) {
        last_error = e.what();
        return DNE_EPARSE;
    }
}

const char* dne_formula_text(const dne_formula* f) { return f ? f->text.c_str() : ""; }
size_t dne_formula_weight(const dne_formula* f) { return f ? f->f.weight() : 0; }
int dne_formula_has_dn(const dne_formula* f) { return f && has_double_negation(f->f) ? 1 : 0; }
void dne_formula_free(dne_formula* f) { delete f; }

namespace {

dne_proof* wrap(CDProof p) {
    auto w = new dne_proof;
    w->conclusion = p.lines.empty() ? "" : p.conclusion().str();
    w->json = export_cd_proof(p);
    w->p = std::move(p);
    return w;
}

}  // namespace

int dne_proof_load(const char* path, dne_proof** out) {
    if (!path || !out) {
        last_error = "null argument";
        return DNE_EUSAGE;
    }
    return run(nullptr, [&](dne_result&) { *out = wrap(load_proof(path)); });
}

int dne_proof_parse_json(const char* text, dne_proof** out) {
    if (!text || !out) {
        last_error = "null argument";
        return DNE_EUSAGE;
    }
    return run(nullptr, [&](dne_result&) { *out = wrap(import_cd_proof(text)); });
}

int dne_proof_check(const dne_proof* p) {
    if (!p) return DNE_EUSAGE;
    return check_cd_proof(p->p).valid ? DNE_OK : DNE_FAIL;
}

size_t dne_proof_deduced(const dne_proof* p) { return p ? p->p.deduced_count() : 0; }
const char* dne_proof_conclusion(const dne_proof* p) { return p ? p->conclusion.c_str() : ""; }
const char* dne_proof_json(const dne_proof* p) { return p ? p->json.c_str() : ""; }
void dne_proof_free(dne_proof* p) { delete p; }

int dne_result_status(const dne_result* r) { return r ? r->status : DNE_EUSAGE; }
const char* dne_result_report(const dne_result* r) { return r ? r->report.c_str() : ""; }
const char* dne_result_data(const dne_result* r) { return r ? r->data.c_str() : ""; }
void dne_result_free(dne_result* r) { delete r; }

int dne_check(const char* const* paths, size_t n, dne_result** out) {
    return run(out, [&](dne_result& r) {
        if (n == 0) usage("no proof files given");
        json all = json::array();
        for (size_t i = 0; i < n; ++i) {
            std::string path = paths[i];
            CDProof p = load_proof(path);
            Verdict v = check_cd_proof(p);
            json j;
            j["path"] = path;
            j["valid"] = v.valid;
            j["deduced"] = p.deduced_count();
            if (!p.lines.empty()) j["conclusion"] = p.conclusion().str();
            if (v.valid) {
                r.report += path + ": valid, " + std::to_string(p.deduced_count()) + " deduced lines, concludes " +
                            p.conclusion().str() + "\n";
            } else {
                r.report += path + ": INVALID " + v.str() + "\n";
                j["line"] = v.where;
                j["reason"] = v.reason;
                r.status = DNE_FAIL;
            }
            all.push_back(j);
        }
        r.data = all.dump(1);
    });
}

int dne_dnreport(const char* path, const char* allowed, dne_result** out) {
    return run(out, [&](dne_result& r) {
        if (!path) usage("missing proof file");
        CDProof p = load_proof(path);
        if (auto v = check_cd_proof(p); !v.valid) throw Failure{DNE_FAIL, std::string(path) + ": INVALID " + v.str()};
        ConstantSet cs;
        for (auto& a : p.assumptions)
            for (Symbol c : constants(a)) cs.insert(symbol_name(c));
        std::vector<Formula> allow;
        for (auto& t : split(allowed, ';')) allow.push_back(formula_arg(t, cs));
        DnReport rep = dn_report(p, dn_allowance(allow));
        r.report = rep.str();
        r.data = report_json(rep).dump(1);
        if (!rep.violation_free()) r.status = DNE_FAIL;
    });
}

int dne_pushback(const char* path, dne_result** out) {
    return run(out, [&](dne_result& r) {
        if (!path) usage("missing proof file");
        CDProof p = load_proof(path);
        if (auto v = check_cd_proof(p); !v.valid) throw Failure{DNE_FAIL, std::string(path) + ": INVALID " + v.str()};
        MPProof m = pushback(p);
        Verdict v = check_mp_proof(m);
        std::ostringstream s;
        s << "modus ponens proof of " << m.conclusion().str() << ": " << (v.valid ? "valid" : "INVALID " + v.str())
          << ", tree size " << mp_tree_size(m.root) << ", dag size " << mp_dag_size(m.root) << "\n";
        r.report = s.str();
        r.data = export_mp_proof(m);
        if (!v.valid) r.status = DNE_FAIL;
    });
}

int dne_erase(const char* path, const char* selection, dne_result** out) {
    return run(out, [&](dne_result& r) {
        if (!path) usage("missing proof file");
        CDProof p = load_proof(path);
        if (auto v = check_cd_proof(p); !v.valid) throw Failure{DNE_FAIL, std::string(path) + ": INVALID " + v.str()};
        const StarKit& kit = star_kit_for(p.system.name);
        Selection s;
        for (auto& t : split(selection, ';')) s.chosen.push_back(formula_arg(t));
        checked_selection(p.conclusion(), s);
        MPProof m = erase_in_mp(pushback(p), s, kit.star);
        Verdict v = check_mp_proof(m);
        r.report = "erased proof of " + m.conclusion().str() + " over " + kit.star.name + ": " +
                   (v.valid ? std::string("valid") : "INVALID " + v.str()) + "\n";
        r.data = export_mp_proof(m);
        if (!v.valid) r.status = DNE_FAIL;
    });
}

int dne_eliminate(const char* manifest_path, dne_result** out) {
    return run(out, [&](dne_result& r) {
        if (!manifest_path) usage("missing manifest");
        std::error_code ec;
        if (!std::filesystem::is_regular_file(manifest_path, ec)) throw Failure{DNE_EIO, std::string("cannot read ") + manifest_path};
        json m = json::parse(read_text_file(manifest_path));
        auto base = std::filesystem::path(manifest_path).parent_path();
        auto resolve = [&](const std::string& p) {
            std::filesystem::path q(p);
            return (q.is_absolute() ? q : base / q).string();
        };
        if (!m.contains("output")) usage("manifest: missing output");
        std::string output = resolve(m.at("output").get<std::string>());

        std::optional<CDProof> input;
        if (m.contains("input")) {
            input = load_proof(resolve(m.at("input").get<std::string>()));
            if (auto v = check_cd_proof(*input); !v.valid) throw Failure{DNE_FAIL, "input proof INVALID " + v.str()};
        }
        std::string kind = m.value("kind", input ? input->system.name : std::string());
        CDProof result;
        std::vector<Formula> allowed_from;
        Formula goal;
        json summary;
        if (kind == "L" || kind == "A") {
            if (!input) usage("manifest: kind " + kind + " needs an input proof");
            const AxiomSystem& sys = axiom_system(kind);
            DKit kit = builtin_dkit(kind);
            if (m.contains("kit")) {
                auto& k = m.at("kit");
                auto pick = [&](const char* key, const CDProof& dflt) {
                    return k.contains(key) ? load_proof(resolve(k.at(key).get<std::string>())) : dflt;
                };
                kit = make_dkit(sys, pick("d1", kit.d1), pick("d2", kit.d2), pick("d3", kit.d3));
            }
            StarKit star = builtin_star_kit(kind);
            if (m.contains("star")) {
                std::map<std::string, CDProof> proofs = star.star_proofs;
                for (auto& [label, path] : m.at("star").items()) proofs[label] = load_proof(resolve(path.get<std::string>()));
                star = make_star_kit(sys, std::move(proofs));
            }
            ConstantSet cs;
            for (auto& a : input->assumptions)
                for (Symbol c : constants(a)) cs.insert(symbol_name(c));
            Selection s;
            for (auto& q : m.value("selection", json::array())) s.chosen.push_back(formula_arg(q.get<std::string>(), cs));
            checked_selection(input->conclusion(), s);
            Elimination e = dn_eliminate_full(*input, s, star, kit);
            Verdict vp = check_mp_proof(e.pushed);
            Verdict ve = check_mp_proof(e.erased);
            Verdict vc = check_mp_proof(e.cleaned);
            summary["pushback"] = vp.valid;
            summary["erase"] = ve.valid;
            summary["clean"] = vc.valid;
            r.report += std::string("pushback: ") + (vp.valid ? "valid" : "INVALID " + vp.str()) + "\n";
            r.report += std::string("erase: ") + (ve.valid ? "valid" : "INVALID " + ve.str()) + "\n";
            if (!vp.valid || !ve.valid || !vc.valid) r.status = DNE_FAIL;
            result = e.proof;
            goal = e.b_star;
            allowed_from = {e.b_star};
        } else if (kind == "H") {
            std::vector<Formula> delta;
            ConstantSet cs;
            for (auto& c : m.value("constants", json::array())) cs.insert(c.get<std::string>());
            if (input) {
                goal = input->conclusion();
                delta = input->assumptions;
            } else {
                if (!m.contains("goal")) usage("manifest: kind H needs an input proof or a goal");
                goal = formula_arg(m.at("goal").get<std::string>(), cs);
                for (auto& a : m.value("assumptions", json::array())) delta.push_back(parse_formula(a.get<std::string>(), cs));
            }
            result = h_dn_eliminate(goal, delta);
            allowed_from = delta;
            allowed_from.push_back(goal);
        } else {
            usage("manifest: unsupported kind '" + kind + "' (L, A or H)");
        }

        Verdict v = check_cd_proof(result);
        Conclusion c = concludes(result, goal);
        DnReport rep = dn_report(result, dn_allowance(allowed_from));
        bool ok = v.valid && c != Conclusion::Unrelated && rep.violation_free();
        if (kind != "H" && c != Conclusion::Exact) ok = false;
        r.report += "output: " + std::string(v.valid ? "valid" : "INVALID " + v.str()) + ", " +
                    std::to_string(result.deduced_count()) + " deduced lines, concludes " + result.conclusion().str() + "\n";
        r.report += "double negations: " + formula_list(rep.aggregate) + "; violations: " + formula_list(rep.violations) + "\n";
        if (!ok) r.status = DNE_FAIL;
        std::string text = export_cd_proof(result);
        write_file(output, text);
        if (m.contains("report")) {
            summary["valid"] = v.valid;
            summary["goal"] = goal.str();
            summary["dn"] = report_json(rep);
            write_file(resolve(m.at("report").get<std::string>()), summary.dump(1));
        }
        r.data = text;
    });
}

int dne_star(const char* system, dne_result** out) {
    return run(out, [&](dne_result& r) {
        const AxiomSystem& base = system_arg(system);
        AxiomSystem star = star_system(base);
        json j;
        j["base"] = base.name;
        j["added"] = json::array();
        for (std::size_t i = base.axioms.size(); i < star.axioms.size(); ++i) {
            r.report += star.axioms[i].label + " " + star.axioms[i].formula.str() + "\n";
            j["added"].push_back({{"label", star.axioms[i].label}, {"formula", star.axioms[i].formula.str()}});
        }
        if (star.axioms.size() == base.axioms.size()) r.report += "closure adds nothing\n";
        r.data = j.dump(1);
    });
}

void dne_search_defaults(dne_search_options* o) {
    if (!o) return;
    SearchConfig d;
    o->max_weight = d.max_weight;
    o->max_retained = d.max_retained;
    o->max_given = d.max_given;
    o->time_limit_s = d.time_limit_s;
    o->dn_avoidance = d.dn_avoidance ? 1 : 0;
    o->subsume_goal = d.subsume_goal ? 1 : 0;
    o->hints = nullptr;
    o->resonators = nullptr;
}

int dne_search(const char* system, const char* goal, const dne_search_options* o, dne_result** out) {
    return run(out, [&](dne_result& r) {
        const AxiomSystem& sys = system_arg(system);
        if (!goal) usage("missing goal");
        Formula g = formula_arg(goal);
        SearchConfig cfg;
        if (o) {
            cfg.max_weight = o->max_weight;
            cfg.max_retained = o->max_retained;
            cfg.max_given = o->max_given;
            cfg.time_limit_s = o->time_limit_s;
            cfg.dn_avoidance = o->dn_avoidance != 0;
            cfg.subsume_goal = o->subsume_goal != 0;
            cfg.hints = guides(o->hints);
            cfg.resonators = guides(o->resonators);
        }
        SearchResult res = saturate(sys, g, cfg);
        std::ostringstream s;
        s << "search " << g.str() << " over " << sys.name << ": " << res.status << "; generated " << res.generated << ", retained "
          << res.retained << " (" << res.retained_with_dn << " with double negation), given " << res.given << ", "
          << res.elapsed_s << " s\n";
        r.report = s.str();
        if (res.proof) {
            DnReport rep = dn_report(*res.proof);
            r.report += format_cd_proof(*res.proof);
            r.report += "double-negation lines: " + std::to_string(std::count_if(rep.steps.begin(), rep.steps.end(),
                                                                              [](const DnStepReport& x) { return !x.dn.empty(); })) +
                        "\n";
            r.data = export_cd_proof(*res.proof);
        } else {
            r.status = DNE_FAIL;
        }
    });
}

int dne_closure(const char* system, int rounds, size_t cap, dne_result** out) {
    return run(out, [&](dne_result& r) {
        const AxiomSystem& sys = system_arg(system);
        if (rounds < 0) usage("rounds must be >= 0");
        ClosureResult c = enumerate_closure(sys, rounds, cap ? cap : 100000);
        json j = json::array();
        for (auto& round : c.rounds) {
            r.report += "round " + std::to_string(round.round) + ": " + std::to_string(round.formulas.size()) + " new\n";
            json jr;
            jr["round"] = round.round;
            jr["formulas"] = json::array();
            for (auto& f : round.formulas) {
                std::string note;
                if (auto mf = named_formula("M"); mf && is_alphabetic_variant(*mf, f)) note = "   (M)";
                r.report += "  " + f.str() + note + "\n";
                jr["formulas"].push_back(f.str());
            }
            j.push_back(jr);
        }
        if (c.truncated) {
            r.report += "stopped at the cap of " + std::to_string(cap) + " formulas\n";
            r.status = DNE_FAIL;
        }
        r.data = j.dump(1);
    });
}

namespace {

void print_gproof(const GTree& g, int depth, std::string& out) {
    out += std::string(static_cast<std::size_t>(depth) * 2, ' ') + g->conclusion.str() + "   [" + rule_name(g->rule) + "]\n";
    for (auto& p : g->premisses) print_gproof(p, depth + 1, out);
}

}  // namespace

int dne_sequent(const char* sequent, const char* constants_csv, dne_result** out) {
    return run(out, [&](dne_result& r) {
        if (!sequent) usage("missing sequent");
        Sequent s = parse_sequent(sequent, constant_set(constants_csv));
        GTree g = prove_sequent(s);
        json j;
        j["sequent"] = s.str();
        j["provable"] = static_cast<bool>(g);
        if (!g) {
            r.report = s.str() + ": not provable\n";
            r.status = DNE_FAIL;
        } else {
            Verdict v = check_gproof(g);
            r.report = s.str() + ": provable (" + std::to_string(gproof_size(g)) + " sequents)\n";
            print_gproof(g, 1, r.report);
            j["size"] = gproof_size(g);
            j["valid"] = v.valid;
            if (!v.valid) r.status = DNE_EINTERNAL;
        }
        r.data = j.dump(1);
    });
}

int dne_eval(const char* formula, const char* assignment, dne_result** out) {
    return run(out, [&](dne_result& r) {
        if (!formula) usage("missing formula");
        Formula f = formula_arg(formula);
        Valuation v;
        for (auto& item : split(assignment, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) usage("bad assignment '" + item + "' (want x=1/2)");
            try {
                v[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
            } catch (const std::exception& e) {
                usage("bad value in '" + item + "': " + e.what());
            }
        }
        for (Symbol s : variables(f))
            if (!v.count(symbol_name(s))) usage("letter " + symbol_name(s) + " is not assigned");
        Rational val = eval_lukasiewicz(f, v);
        r.report = to_string(val) + "\n";
        json j;
        j["formula"] = f.str();
        j["value"] = to_string(val);
        r.data = j.dump(1);
    });
}

int dne_taut(const char* formula, int max_values, dne_result** out) {
    return run(out, [&](dne_result& r) {
        if (!formula) usage("missing formula");
        Formula f = formula_arg(formula);
        json j;
        j["formula"] = f.str();
        bool two = is_two_valued_tautology(f);
        j["two_valued"] = two;
        r.report = f.str() + ": " + (two ? "two-valued tautology" : "not a two-valued tautology") + "\n";
        if (!two) r.status = DNE_FAIL;
        if (max_values > 1) {
            auto c = find_finite_counterexample(f, max_values);
            j["lukasiewicz_counterexample"] = nullptr;
            if (c) {
                json cj;
                cj["values"] = c->n;
                for (auto& [k, x] : c->valuation) cj["valuation"][k] = to_string(x);
                cj["value"] = to_string(c->value);
                j["lukasiewicz_counterexample"] = cj;
                std::string val;
                for (auto& [k, x] : c->valuation) val += (val.empty() ? "" : ", ") + k + "=" + to_string(x);
                r.report += "Lukasiewicz " + std::to_string(c->n) + "-valued counterexample: " + val + " gives " + to_string(c->value) + "\n";
                r.status = DNE_FAIL;
            } else {
                r.report += "no Lukasiewicz counterexample up to " + std::to_string(max_values) + " values\n";
            }
        }
        r.data = j.dump(1);
    });
}

int dne_corpus(dne_result** out) {
    return run(out, [&](dne_result& r) {
        json all = json::array();
        for (auto& c : verify_corpus()) {
            json j;
            j["id"] = c.entry.id;
            j["ok"] = c.ok();
            j["valid"] = c.valid;
            j["deduced"] = c.deduced;
            j["expected_deduced"] = c.entry.expected_deduced;
            j["dn_free"] = c.dn_free;
            j["repairs"] = c.repairs.size();
            all.push_back(j);
            r.report += c.entry.id + ": " + (c.ok() ? "ok" : "FAILED") + ", " + std::to_string(c.deduced) + "/" +
                        std::to_string(c.entry.expected_deduced) + " deduced, " + (c.dn_free ? "DN-free" : "has DN") + ", " +
                        std::to_string(c.repairs.size()) + " repairs checked";
            if (!c.valid) r.report += ", " + c.verdict;
            if (!c.error.empty()) r.report += ", " + c.error;
            r.report += "\n";
            if (!c.ok()) r.status = DNE_FAIL;
        }
        r.data = all.dump(1);
    });
}

}  // extern "C"
