#include <set>
#include <unordered_map>

#include "dnelim/proofs.hpp"

#include "json.hpp"

namespace dnelim {

using json = nlohmann::ordered_json;

namespace {

void note_constants(const Formula& f, std::set<std::string>& out) {
    for (Symbol c : constants(f)) out.insert(symbol_name(c));
}

json system_json(const AxiomSystem& s) {
    json axioms = json::array();
    for (auto& a : s.axioms) axioms.push_back({{"label", a.label}, {"formula", a.formula.str()}});
    return {{"name", s.name}, {"axioms", axioms}};
}

AxiomSystem system_from(const json& j) {
    AxiomSystem s;
    s.name = j.at("name").get<std::string>();
    for (auto& a : j.at("axioms")) s.axioms.push_back({a.at("label").get<std::string>(), parse_formula(a.at("formula").get<std::string>())});
    return s;
}

json ref_json(const Ref& r) {
    if (r.kind == Ref::Kind::Line) return r.line;
    return r.str();
}

Ref ref_from(const json& j) {
    if (j.is_number_integer()) return Ref::to_line(j.get<int>());
    auto s = j.get<std::string>();
    if (!s.empty() && s.front() == '#') return Ref::to_assumption(std::stoul(s.substr(1)));
    return Ref::to_axiom(s);
}

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::Axiom: return "axiom";
        case Rule::Assumption: return "assumption";
        case Rule::CD: return "cd";
        case Rule::CDLiteral: return "cd-literal";
    }
    return "?";
}

ConstantSet constant_set(const json& j) {
    ConstantSet cs;
    if (j.contains("constants"))
        for (auto& c : j.at("constants")) cs.insert(c.get<std::string>());
    return cs;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed proof file: ") + e.what(), e.byte);
    }
}

}  // namespace

std::string export_cd_proof(const CDProof& p) {
    std::set<std::string> cs;
    for (auto& a : p.assumptions) note_constants(a, cs);
    for (auto& l : p.lines) note_constants(l.formula, cs);
    json assumptions = json::array();
    for (auto& a : p.assumptions) assumptions.push_back(a.str());
    json lines = json::array();
    for (auto& l : p.lines) {
        json j = {{"id", l.id}, {"rule", rule_name(l.rule)}};
        if (l.rule == Rule::Axiom) j["axiom"] = l.axiom;
        if (l.rule == Rule::Assumption) j["assumption"] = l.assumption;
        if (l.deduced()) {
            j["major"] = ref_json(l.major);
            j["minor"] = ref_json(l.minor);
        }
        j["formula"] = l.formula.str();
        lines.push_back(std::move(j));
    }
    json out = {{"format", "cd-proof"},
                {"system", system_json(p.system)},
                {"constants", cs},
                {"assumptions", assumptions},
                {"lines", lines}};
    return out.dump(1) + "\n";
}

CDProof import_cd_proof(std::string_view text) {
    json j = parse_json(text);
    try {
        if (j.value("format", "") != "cd-proof") throw Error("not a cd-proof file");
        CDProof p;
        p.system = system_from(j.at("system"));
        ConstantSet cs = constant_set(j);
        for (auto& a : j.at("assumptions")) p.assumptions.push_back(parse_formula(a.get<std::string>(), cs));
        for (auto& lj : j.at("lines")) {
            CDLine l;
            l.id = lj.at("id").get<int>();
            auto rule = lj.at("rule").get<std::string>();
            if (rule == "axiom") {
                l.rule = Rule::Axiom;
                l.axiom = lj.at("axiom").get<std::string>();
            } else if (rule == "assumption") {
                l.rule = Rule::Assumption;
                l.assumption = lj.at("assumption").get<std::size_t>();
            } else if (rule == "cd" || rule == "cd-literal") {
                l.rule = rule == "cd" ? Rule::CD : Rule::CDLiteral;
                l.major = ref_from(lj.at("major"));
                l.minor = ref_from(lj.at("minor"));
            } else {
                throw Error("unknown rule '" + rule + "'");
            }
            l.formula = parse_formula(lj.at("formula").get<std::string>(), cs);
            p.lines.push_back(std::move(l));
        }
        return p;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed proof file: ") + e.what());
    }
}

std::string export_mp_proof(const MPProof& p) {
    std::set<std::string> cs;
    for (auto& a : p.assumptions) note_constants(a, cs);
    std::unordered_map<const MPNode*, std::size_t> index;
    json nodes = json::array();
    // Post-order, each shared node once.
    auto rec = [&](auto& self, const MPNode* n) -> std::size_t {
        if (auto it = index.find(n); it != index.end()) return it->second;
        json j;
        switch (n->kind) {
            case MPNode::Kind::AxiomInstance: {
                json subst = json::object();
                std::map<std::string, std::string> sorted;
                for (auto& [v, f] : n->subst.bindings()) {
                    sorted[symbol_name(v)] = f.str();
                    note_constants(f, cs);
                }
                for (auto& [k, v] : sorted) subst[k] = v;
                j = {{"kind", "axiom"}, {"label", n->label}, {"subst", subst}};
                break;
            }
            case MPNode::Kind::Assumption: j = {{"kind", "assumption"}}; break;
            case MPNode::Kind::Mp: {
                std::size_t a = self(self, n->major.get());
                std::size_t b = self(self, n->minor.get());
                j = {{"kind", "mp"}, {"major", a}, {"minor", b}};
                break;
            }
        }
        note_constants(n->formula, cs);
        j["formula"] = n->formula.str();
        nodes.push_back(std::move(j));
        index[n] = nodes.size() - 1;
        return nodes.size() - 1;
    };
    std::size_t root = p.root ? rec(rec, p.root.get()) : 0;
    json assumptions = json::array();
    for (auto& a : p.assumptions) assumptions.push_back(a.str());
    json out = {{"format", "mp-proof"},
                {"system", system_json(p.system)},
                {"constants", cs},
                {"assumptions", assumptions},
                {"nodes", nodes},
                {"root", root}};
    return out.dump(1) + "\n";
}

MPProof import_mp_proof(std::string_view text) {
    json j = parse_json(text);
    try {
        if (j.value("format", "") != "mp-proof") throw Error("not an mp-proof file");
        MPProof p;
        p.system = system_from(j.at("system"));
        ConstantSet cs = constant_set(j);
        for (auto& a : j.at("assumptions")) p.assumptions.push_back(parse_formula(a.get<std::string>(), cs));
        std::vector<MPTree> built;
        for (auto& nj : j.at("nodes")) {
            auto n = std::make_shared<MPNode>();
            n->formula = parse_formula(nj.at("formula").get<std::string>(), cs);
            auto kind = nj.at("kind").get<std::string>();
            if (kind == "axiom") {
                n->kind = MPNode::Kind::AxiomInstance;
                n->label = nj.at("label").get<std::string>();
                for (auto& [k, v] : nj.at("subst").items()) n->subst.bind(intern(k), parse_formula(v.get<std::string>(), cs));
            } else if (kind == "assumption") {
                n->kind = MPNode::Kind::Assumption;
            } else if (kind == "mp") {
                n->kind = MPNode::Kind::Mp;
                auto a = nj.at("major").get<std::size_t>(), b = nj.at("minor").get<std::size_t>();
                if (a >= built.size() || b >= built.size()) throw Error("mp node refers forward");
                n->major = built[a];
                n->minor = built[b];
            } else {
                throw Error("unknown node kind '" + kind + "'");
            }
            built.push_back(std::move(n));
        }
        auto root = j.at("root").get<std::size_t>();
        if (root >= built.size()) throw Error("bad root index");
        p.root = built[root];
        return p;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed proof file: ") + e.what());
    }
}

CDProof load_cd_proof_file(const std::string& path) {
    std::string text = read_text_file(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return import_cd_proof(text);
    return load_listing_file(path);
}

std::string format_cd_proof(const CDProof& p) {
    std::string out = "% system: " + p.system.name + "\n";
    std::set<std::string> cs;
    for (auto& a : p.assumptions)
        for (Symbol c : constants(a)) cs.insert(symbol_name(c));
    if (!cs.empty()) {
        out += "% constants:";
        for (auto& c : cs) out += " " + c;
        out += "\n";
    }
    for (auto& a : p.assumptions) out += "% assumption: " + a.str() + "\n";
    for (auto& l : p.lines) {
        out += std::to_string(l.id) + " [";
        switch (l.rule) {
            case Rule::Axiom: out += l.axiom; break;
            case Rule::Assumption: out += "#" + std::to_string(l.assumption); break;
            case Rule::CD: out += l.major.str() + "," + l.minor.str(); break;
            case Rule::CDLiteral: out += "lit," + l.major.str() + "," + l.minor.str(); break;
        }
        out += "] " + l.formula.str() + "\n";
    }
    return out;
}

}  // namespace dnelim
