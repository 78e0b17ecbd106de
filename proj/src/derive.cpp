#include "dnelim/derive.hpp"

#include <functional>
#include <mutex>
#include <set>
#include <unordered_set>

namespace dnelim {

namespace detail {
const std::map<std::string, std::string_view>& corpus_files();
}

// ---- bundled corpus ----

std::optional<std::string_view> builtin_listing(std::string_view stem) {
    auto& files = detail::corpus_files();
    auto it = files.find(std::string(stem) + ".listing");
    if (it == files.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string_view> builtin_repairs(std::string_view stem) {
    auto& files = detail::corpus_files();
    auto it = files.find(std::string(stem) + ".repairs");
    if (it == files.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> builtin_listing_stems() {
    std::vector<std::string> out;
    const std::string ext = ".listing";
    for (auto& [name, text] : detail::corpus_files())
        if (name.size() > ext.size() && name.compare(name.size() - ext.size(), ext.size(), ext) == 0)
            out.push_back(name.substr(0, name.size() - ext.size()));
    return out;
}

CDProof load_builtin_listing(std::string_view stem) {
    auto text = builtin_listing(stem);
    if (!text) throw Error("no bundled listing '" + std::string(stem) + "'");
    ListingHeader h = parse_listing_header(*text);
    RepairTable repairs;
    if (auto r = builtin_repairs(stem)) repairs = parse_repairs(*r);
    ConstantSet cs(h.constants.begin(), h.constants.end());
    CDProof p = parse_proof_listing(*text, axiom_system(h.system), repairs, cs);
    for (auto& a : h.assumptions) p.assumptions.push_back(parse_formula(a, cs));
    return p;
}

// ---- D kits ----

DKit make_dkit(const AxiomSystem& system, CDProof d1, CDProof d2, CDProof d3) {
    const CDProof* proofs[3] = {&d1, &d2, &d3};
    const char* names[3] = {"D1", "D2", "D3"};
    for (int k = 0; k < 3; ++k) {
        const CDProof& p = *proofs[k];
        Verdict v = check_cd_proof(p);
        if (!v.valid) throw Error(std::string(names[k]) + " proof: " + v.str());
        if (concludes(p, *named_formula(names[k])) != Conclusion::Exact)
            throw Error(std::string(names[k]) + " proof concludes " + p.conclusion().str());
        for (auto& a : p.system.axioms) {
            auto* b = system.find(a.label);
            if (!b || b->formula != a.formula) throw Error(std::string(names[k]) + " proof uses another system");
        }
    }
    return DKit{system, std::move(d1), std::move(d2), std::move(d3)};
}

namespace {

DKit build_kit(std::string_view name) {
    const AxiomSystem& sys = axiom_system(name);
    if (name == "A") return make_dkit(sys, load_builtin_listing("a_d1"), load_builtin_listing("a_d2"), load_builtin_listing("a_d3"));
    if (name == "H") return make_dkit(sys, load_builtin_listing("h_d1"), load_builtin_listing("h_d2"), load_builtin_listing("h_d3"));
    if (name == "L") {
        // D2 from L is Ulrich's proof from D4, D5 with those lemmas proved first.
        ProofBuilder b(sys);
        int d4 = b.import(load_builtin_listing("l_d4"));
        int d5 = b.import(load_builtin_listing("l_d5"));
        int d2 = b.import(load_builtin_listing("l_d2_ulrich"), {{"D4", d4}, {"D5", d5}});
        return make_dkit(sys, load_builtin_listing("l_d1"), b.build(d2), load_builtin_listing("l_d3"));
    }
    throw Error("no bundled D1-D3 proofs for system '" + std::string(name) + "'");
}

}  // namespace

const DKit& builtin_dkit(std::string_view name) {
    static std::mutex mu;
    static std::map<std::string, DKit, std::less<>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(std::string(name), build_kit(name)).first;
    return it->second;
}

// ---- builder ----

ProofBuilder::ProofBuilder(AxiomSystem system, std::vector<Formula> assumptions)
    : system_(std::move(system)), assumptions_(std::move(assumptions)) {}

ProofBuilder::ProofBuilder(const DKit& kit, std::vector<Formula> assumptions)
    : system_(kit.system), assumptions_(std::move(assumptions)), kit_(&kit) {}

int ProofBuilder::push(CDLine line) {
    std::string key = line.formula.str();
    if (auto it = by_formula_.find(key); it != by_formula_.end()) return it->second;
    int id = static_cast<int>(lines_.size());
    line.id = id;
    lines_.push_back(std::move(line));
    by_formula_.emplace(std::move(key), id);
    return id;
}

int ProofBuilder::axiom(std::string_view label) {
    auto* a = system_.find(label);
    if (!a) throw Error("unknown axiom " + std::string(label) + " in system " + system_.name);
    CDLine l;
    l.rule = Rule::Axiom;
    l.axiom = a->label;
    l.formula = a->formula;
    return push(std::move(l));
}

int ProofBuilder::assumption(std::size_t k) {
    if (k >= assumptions_.size()) throw Error("no assumption #" + std::to_string(k));
    CDLine l;
    l.rule = Rule::Assumption;
    l.assumption = k;
    l.formula = assumptions_[k];
    return push(std::move(l));
}

namespace {

Formula checked_spelling(const Formula& result, const std::optional<Formula>& written) {
    if (!written) return result;
    if (!is_alphabetic_variant(result, *written))
        throw Error("detachment yields " + result.str() + ", not a variant of " + written->str());
    return *written;
}

}  // namespace

int ProofBuilder::cd(int major, int minor, std::optional<Formula> written) {
    auto d = detach(formula(major), formula(minor));
    if (!d) throw Error("no detachment of " + formula(minor).str() + " from " + formula(major).str());
    CDLine l;
    l.rule = Rule::CD;
    l.major = Ref::to_line(major);
    l.minor = Ref::to_line(minor);
    l.formula = checked_spelling(d->conclusion, written);
    return push(std::move(l));
}

int ProofBuilder::cd_literal(int major, int minor, std::optional<Formula> written) {
    auto d = detach(formula(major), formula(minor), true);
    if (!d) throw Error("no literal detachment of " + formula(minor).str() + " from " + formula(major).str());
    CDLine l;
    l.rule = Rule::CDLiteral;
    l.major = Ref::to_line(major);
    l.minor = Ref::to_line(minor);
    l.formula = checked_spelling(d->conclusion, written);
    return push(std::move(l));
}

int ProofBuilder::respell(int line, const Formula& written) {
    const CDLine& src = lines_.at(static_cast<std::size_t>(line));
    if (src.formula == written) return line;
    if (!is_alphabetic_variant(src.formula, written))
        throw Error(written.str() + " is not a variant of " + src.formula.str());
    if (src.rule == Rule::Assumption) throw Error("assumptions have no variants");
    CDLine l = src;
    l.formula = written;
    return push(std::move(l));
}

int ProofBuilder::import(const CDProof& p, const std::map<std::string, int>& lemmas) {
    std::map<int, int> local;
    auto axiom_or_lemma = [&](const std::string& label) {
        if (system_.find(label)) return axiom(label);
        auto it = lemmas.find(label);
        if (it == lemmas.end()) throw Error("import: no axiom or lemma " + label);
        return it->second;
    };
    auto assumption_line = [&](std::size_t k) {
        const Formula& f = p.assumptions.at(k);
        for (std::size_t j = 0; j < assumptions_.size(); ++j)
            if (assumptions_[j] == f) return assumption(j);
        throw Error("import: assumption " + f.str() + " not available");
    };
    auto ref = [&](const Ref& r) {
        switch (r.kind) {
            case Ref::Kind::Line: return local.at(r.line);
            case Ref::Kind::Axiom: return axiom_or_lemma(r.axiom);
            case Ref::Kind::Assumption: return assumption_line(r.assumption);
        }
        throw Error("bad reference");
    };
    int last = -1;
    for (auto& l : p.lines) {
        switch (l.rule) {
            case Rule::Axiom: last = respell(axiom_or_lemma(l.axiom), l.formula); break;
            case Rule::Assumption: last = assumption_line(l.assumption); break;
            case Rule::CD: last = cd(ref(l.major), ref(l.minor), l.formula); break;
            case Rule::CDLiteral: last = cd_literal(ref(l.major), ref(l.minor), l.formula); break;
        }
        local[l.id] = last;
    }
    if (last < 0) throw Error("import: empty proof");
    return last;
}

int ProofBuilder::kit_line(int which) {
    if (!kit_) throw Error("builder has no D1-D3 kit");
    if (kit_lines_[which] < 0) {
        const CDProof* p[3] = {&kit_->d1, &kit_->d2, &kit_->d3};
        kit_lines_[which] = import(*p[which]);
    }
    return kit_lines_[which];
}

namespace {

Formula fresh_var(const Formula& avoid) {
    auto used = variables(avoid);
    std::unordered_set<Symbol> taken(used.begin(), used.end());
    for (std::size_t k = 0;; ++k) {
        Symbol s = intern("w" + std::to_string(k));
        if (!taken.count(s)) return Formula::var(s);
    }
}

bool share_variables(const Formula& a, const Formula& b) {
    auto va = variables(a);
    std::unordered_set<Symbol> sa(va.begin(), va.end());
    for (Symbol s : variables(b))
        if (sa.count(s)) return true;
    return false;
}

}  // namespace

int ProofBuilder::identity(const Formula& alpha) {
    Formula target = Formula::impl(alpha, alpha);
    if (auto it = by_formula_.find(target.str()); it != by_formula_.end()) return it->second;
    switch (alpha.kind()) {
        case Kind::Var: return respell(kit_line(0), target);
        case Kind::Const: throw Error("identity: abstract constants first (" + alpha.str() + ")");
        case Kind::Neg: {
            int b = identity(alpha.arg());
            return cd(kit_line(1), b, target);
        }
        case Kind::Impl: {
            const Formula& beta = alpha.antecedent();
            const Formula& gamma = alpha.consequent();
            int b = identity(beta);
            int g = identity(gamma);
            Formula y = fresh_var(alpha);
            Formula mid = Formula::impl(Formula::impl(y, y),
                                        Formula::impl(Formula::impl(beta, y), Formula::impl(beta, y)));
            int t = cd(kit_line(2), b, mid);
            if (share_variables(beta, gamma)) return cd_literal(t, g, target);
            return cd(t, g, target);
        }
    }
    throw Error("identity: bad formula");
}

int ProofBuilder::instance(int source, const Formula& inst) {
    const Formula& general = formula(source);
    if (!subsumes(general, inst)) throw Error(inst.str() + " is not an instance of " + general.str());
    if (is_alphabetic_variant(general, inst)) return respell(source, inst);
    if (auto it = by_formula_.find(inst.str()); it != by_formula_.end()) return it->second;
    return cd(identity(inst), source, inst);
}

CDProof ProofBuilder::build(int conclusion) const {
    std::vector<bool> need(lines_.size(), false);
    std::vector<int> stack{conclusion};
    while (!stack.empty()) {
        int k = stack.back();
        stack.pop_back();
        if (need.at(static_cast<std::size_t>(k))) continue;
        need[static_cast<std::size_t>(k)] = true;
        const CDLine& l = lines_[static_cast<std::size_t>(k)];
        if (l.deduced()) {
            stack.push_back(l.major.line);
            stack.push_back(l.minor.line);
        }
    }
    CDProof p;
    p.system = system_;
    p.assumptions = assumptions_;
    std::map<int, int> renum;
    for (std::size_t k = 0; k < lines_.size(); ++k) {
        if (!need[k]) continue;
        CDLine l = lines_[k];
        l.id = static_cast<int>(p.lines.size()) + 1;
        renum[static_cast<int>(k)] = l.id;
        if (l.deduced()) {
            l.major = Ref::to_line(renum.at(l.major.line));
            l.minor = Ref::to_line(renum.at(l.minor.line));
        }
        p.lines.push_back(std::move(l));
    }
    // The conclusion must be last; it is, since premisses precede their steps.
    return p;
}

// ---- lemmas ----

CDProof prove_identity(const Formula& alpha, const DKit& kit) {
    ProofBuilder b(kit);
    return b.build(b.identity(abstract_constants(alpha)));
}

namespace {

std::string axiom_label_for(const AxiomSystem& sys, const Formula& axiom) {
    for (auto& a : sys.axioms)
        if (is_alphabetic_variant(a.formula, axiom)) return a.label;
    throw Error(axiom.str() + " is not an axiom of " + sys.name);
}

}  // namespace

CDProof prove_instance(const Formula& axiom, const Formula& instance, const DKit& kit) {
    std::string label = axiom_label_for(kit.system, axiom);
    ProofBuilder b(kit);
    return b.build(b.instance(b.axiom(label), abstract_constants(instance)));
}

CDProof close_under_substitution(const CDProof& p, const Substitution& sigma, const DKit& kit) {
    if (auto v = check_cd_proof(p); !v.valid) throw Error("close_under_substitution: " + v.str());
    ProofBuilder b(kit, p.assumptions);
    std::map<std::pair<int, std::string>, int> memo;
    // With assumptions present their constants must stay as they are.
    const bool abstract = p.assumptions.empty();
    std::function<int(const Ref&, const Substitution&)> want = [&](const Ref& r, const Substitution& theta) -> int {
        Formula f = resolve_ref(p, r);
        Formula target = theta.apply(f);
        if (abstract) target = abstract_constants(target);
        int key = r.kind == Ref::Kind::Line ? r.line : -1;
        std::string skey = (r.kind == Ref::Kind::Line ? std::string() : r.str() + "|") + target.str();
        if (auto it = memo.find({key, skey}); it != memo.end()) return it->second;
        int out;
        const CDLine* l = r.kind == Ref::Kind::Line ? p.line(r.line) : nullptr;
        if (r.kind == Ref::Kind::Axiom) {
            out = b.instance(b.axiom(r.axiom), target);
        } else if (r.kind == Ref::Kind::Assumption) {
            out = b.assumption(r.assumption);
        } else if (l->rule == Rule::Axiom) {
            out = b.instance(b.axiom(l->axiom), target);
        } else if (l->rule == Rule::Assumption) {
            out = b.assumption(l->assumption);
        } else {
            Formula major = resolve_ref(p, l->major), minor = resolve_ref(p, l->minor);
            auto inst = push_back_step(major, minor, l->rule == Rule::CDLiteral, l->formula, theta);
            if (!inst) throw Error("close_under_substitution: step " + std::to_string(l->id) + " does not replay");
            int m = want(l->major, inst->major);
            int n = want(l->minor, inst->minor);
            out = b.cd(m, n, target);
        }
        memo[{key, skey}] = out;
        return out;
    };
    int last = want(Ref::to_line(p.lines.back().id), sigma);
    return b.build(last);
}

}  // namespace dnelim
