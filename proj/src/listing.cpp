#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dnelim/detach.hpp"
#include "dnelim/proofs.hpp"

namespace dnelim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

int to_int(std::string_view s, const std::string& context) {
    if (!is_integer(s)) throw Error(context + ": expected a line number, got '" + std::string(s) + "'");
    return std::stoi(std::string(s));
}

LineKey parse_key(std::string_view s, const std::string& context) {
    LineKey k;
    auto hash = s.find('#');
    k.id = to_int(s.substr(0, hash), context);
    if (hash != std::string_view::npos) k.occurrence = to_int(s.substr(hash + 1), context);
    return k;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

bool detaches_to(const CDProof& p, const Ref& major, const Ref& minor, const CDLine& l) {
    auto d = detach(resolve_ref(p, major), resolve_ref(p, minor), l.rule == Rule::CDLiteral);
    return d && is_alphabetic_variant(d->conclusion, l.formula);
}

// Listings cite the two premisses in either order; put the major first.
void orient(const CDProof& p, CDLine& l) {
    if (detaches_to(p, l.major, l.minor, l)) return;
    if (detaches_to(p, l.minor, l.major, l)) std::swap(l.major, l.minor);
}

}  // namespace

RepairTable parse_repairs(std::string_view text) {
    RepairTable t;
    std::istringstream in{std::string(text)};
    int lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        std::string_view line = raw;
        // A comment starts at a '#' at line start or after whitespace; "id#k" is an occurrence index.
        for (std::size_t c = 0; c < line.size(); ++c)
            if (line[c] == '#' && (c == 0 || std::isspace(static_cast<unsigned char>(line[c - 1])))) {
                line = line.substr(0, c);
                break;
            }
        line = trim(line);
        if (line.empty()) continue;
        std::string ctx = "repairs line " + std::to_string(lineno);
        auto arrow = line.find("->");
        if (arrow == std::string_view::npos) throw Error(ctx + ": missing '->'");
        auto lhs = split_ws(line.substr(0, arrow));
        std::string rhs(trim(line.substr(arrow + 2)));
        if (lhs.empty() || rhs.empty()) throw Error(ctx + ": malformed entry");
        if (lhs[0] == "ref" && lhs.size() == 3) {
            t.refs[{parse_key(lhs[1], ctx), lhs[2]}] = rhs;
        } else if (lhs[0] == "formula" && lhs.size() == 2) {
            t.formulas[parse_key(lhs[1], ctx)] = rhs;
        } else if (lhs[0] == "renumber" && lhs.size() == 2) {
            t.renumber[parse_key(lhs[1], ctx)] = to_int(rhs, ctx);
        } else {
            throw Error(ctx + ": unknown repair kind");
        }
    }
    return t;
}

ListingHeader parse_listing_header(std::string_view text) {
    ListingHeader h;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        std::string_view line = trim(raw);
        if (line.empty() || line.front() != '%') continue;
        line = trim(line.substr(1));
        auto colon = line.find(':');
        if (colon == std::string_view::npos) continue;
        std::string key(trim(line.substr(0, colon)));
        std::string value(trim(line.substr(colon + 1)));
        if (key == "system") h.system = value;
        else if (key == "goal") h.goal = value;
        else if (key == "repairs") h.repairs = value;
        else if (key == "constants") h.constants = split_list(value);
        else if (key == "assumption") h.assumptions.push_back(value);
    }
    return h;
}

CDProof parse_proof_listing(std::string_view text, const AxiomSystem& system, const RepairTable& repairs,
                            const ConstantSet& constants) {
    CDProof p;
    p.system = system;
    std::map<int, int> occurrences;  // original id -> times seen
    std::map<int, bool> defined;     // id after renumbering
    std::istringstream in{std::string(text)};
    int lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '%') continue;
        std::string ctx = "listing line " + std::to_string(lineno);

        std::size_t k = 0;
        while (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) ++k;
        if (k == 0) throw Error(ctx + ": expected a line number");
        int original = std::stoi(std::string(line.substr(0, k)));
        LineKey key{original, ++occurrences[original]};
        line = trim(line.substr(k));
        if (line.empty() || line.front() != '[') throw Error(ctx + ": expected '[ref,ref]'");
        auto close = line.find(']');
        if (close == std::string_view::npos) throw Error(ctx + ": missing ']'");
        auto tokens = split_list(line.substr(1, close - 1));
        std::string formula_text(trim(line.substr(close + 1)));
        if (auto it = repairs.formulas.find(key); it != repairs.formulas.end()) formula_text = it->second;

        CDLine l;
        l.id = original;
        if (auto it = repairs.renumber.find(key); it != repairs.renumber.end()) l.id = it->second;
        ctx += " (" + std::to_string(l.id) + ")";
        try {
            l.formula = parse_formula(formula_text, constants);
        } catch (const ParseError& e) {
            throw Error(ctx + ": " + e.what());
        }
        if (!p.lines.empty() && l.id <= p.lines.back().id)
            throw Error(ctx + ": line id " + std::to_string(l.id) + " does not increase (duplicate or out of order)");

        auto resolve = [&](std::string tok) {
            if (auto it = repairs.refs.find({key, tok}); it != repairs.refs.end()) tok = it->second;
            if (is_integer(tok)) {
                int id = std::stoi(tok);
                if (!defined.count(id)) throw Error(ctx + ": reference " + tok + " is not an earlier line");
                return Ref::to_line(id);
            }
            if (!tok.empty() && tok.front() == '#') return Ref::to_assumption(static_cast<std::size_t>(to_int(tok.substr(1), ctx)));
            if (!system.find(tok)) throw Error(ctx + ": unknown reference '" + tok + "' in system " + system.name);
            return Ref::to_axiom(tok);
        };

        if (tokens.size() == 2) {
            l.rule = Rule::CD;
            l.major = resolve(tokens[0]);
            l.minor = resolve(tokens[1]);
        } else if (tokens.size() == 1) {
            const std::string& tok = tokens[0];
            if (!tok.empty() && tok.front() == '#') {
                l.rule = Rule::Assumption;
                l.assumption = static_cast<std::size_t>(to_int(tok.substr(1), ctx));
            } else {
                l.rule = Rule::Axiom;
                l.axiom = tok;
                if (!system.find(tok)) throw Error(ctx + ": unknown axiom '" + tok + "'");
            }
        } else if (tokens.size() == 3 && tokens[0] == "lit") {
            l.rule = Rule::CDLiteral;
            l.major = resolve(tokens[1]);
            l.minor = resolve(tokens[2]);
        } else {
            throw Error(ctx + ": malformed justification");
        }
        if (l.deduced()) orient(p, l);
        defined[l.id] = true;
        p.lines.push_back(std::move(l));
    }
    return p;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

CDProof load_listing_file(const std::string& path) {
    namespace fs = std::filesystem;
    std::string text = read_text_file(path);
    ListingHeader h = parse_listing_header(text);
    if (h.system.empty()) throw Error(path + ": missing '% system:' directive");
    RepairTable repairs;
    fs::path base = fs::path(path).parent_path();
    if (!h.repairs.empty()) {
        repairs = parse_repairs(read_text_file((base / h.repairs).string()));
    } else {
        fs::path sib = fs::path(path).replace_extension(".repairs");
        if (fs::exists(sib)) repairs = parse_repairs(read_text_file(sib.string()));
    }
    ConstantSet cs(h.constants.begin(), h.constants.end());
    CDProof p = parse_proof_listing(text, axiom_system(h.system), repairs, cs);
    for (auto& a : h.assumptions) p.assumptions.push_back(parse_formula(a, cs));
    return p;
}

namespace {

std::string key_str(const LineKey& k) {
    return std::to_string(k.id) + (k.occurrence > 1 ? "#" + std::to_string(k.occurrence) : "");
}

int line_id(const RepairTable& t, const LineKey& k) {
    auto it = t.renumber.find(k);
    return it == t.renumber.end() ? k.id : it->second;
}

bool line_checks(const CDProof& p, int id) {
    const CDLine* l = p.line(id);
    if (!l) return false;
    if (!l->deduced()) return check_cd_proof(p).valid;
    try {
        return detaches_to(p, l->major, l->minor, *l);
    } catch (const Error&) {
        return false;
    }
}

// Parses with `table` and reports whether line `id` is accepted.
bool accepted(std::string_view text, const AxiomSystem& system, const RepairTable& table, const ConstantSet& cs,
              int id) {
    try {
        CDProof p = parse_proof_listing(text, system, table, cs);
        return line_checks(p, id);
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

bool RepairCheck::ok() const { return original_fails && repaired_checks && unique; }

std::vector<RepairCheck> validate_repairs(std::string_view text, const AxiomSystem& system, const RepairTable& repairs,
                                          const ConstantSet& cs) {
    std::vector<RepairCheck> out;
    for (auto& [k, rep] : repairs.refs) {
        auto& [key, tok] = k;
        RepairCheck c;
        c.entry = "ref " + key_str(key) + " " + tok + " -> " + rep;
        int id = line_id(repairs, key);
        RepairTable without = repairs;
        without.refs.erase(k);
        c.original_fails = !accepted(text, system, without, cs, id);
        c.repaired_checks = accepted(text, system, repairs, cs, id);
        if (c.repaired_checks) {
            CDProof p = parse_proof_listing(text, system, repairs, cs);
            const CDLine* l = p.line(id);
            Ref other = l->major.str() == rep ? l->minor : l->major;
            std::vector<Ref> cands;
            for (auto& a : system.axioms) cands.push_back(Ref::to_axiom(a.label));
            for (auto& x : p.lines) {
                if (x.id >= id) break;
                cands.push_back(Ref::to_line(x.id));
            }
            for (auto& r : cands)
                if (detaches_to(p, r, other, *l) || detaches_to(p, other, r, *l)) c.alternatives.push_back(r.str());
            c.unique = c.alternatives.size() == 1 && c.alternatives.front() == rep;
        }
        out.push_back(std::move(c));
    }
    for (auto& [key, formula] : repairs.formulas) {
        RepairCheck c;
        c.entry = "formula " + key_str(key) + " -> " + formula;
        int id = line_id(repairs, key);
        RepairTable without = repairs;
        without.formulas.erase(key);
        c.original_fails = !accepted(text, system, without, cs, id);
        c.repaired_checks = accepted(text, system, repairs, cs, id);
        out.push_back(std::move(c));
    }
    for (auto& [key, id] : repairs.renumber) {
        RepairCheck c;
        c.entry = "renumber " + key_str(key) + " -> " + std::to_string(id);
        RepairTable without = repairs;
        without.renumber.erase(key);
        c.original_fails = !accepted(text, system, without, cs, id);
        try {
            c.repaired_checks = check_cd_proof(parse_proof_listing(text, system, repairs, cs)).valid;
        } catch (const Error&) {
            c.repaired_checks = false;
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace dnelim
