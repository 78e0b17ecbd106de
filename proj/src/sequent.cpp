#include "dnelim/sequent.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "dnelim/derive.hpp"
#include "dnelim/transform.hpp"

namespace dnelim {

namespace detail {
struct GNode {
    GFormula::Kind kind;
    std::string name;
    bool constant = false;
    GFormula left, right;
    std::string text;
};
}  // namespace detail

GFormula GFormula::atom(std::string name, bool constant) {
    auto n = std::make_shared<detail::GNode>();
    n->kind = Kind::Atom;
    n->constant = constant;
    n->text = name;
    n->name = std::move(name);
    return GFormula(std::move(n));
}

GFormula GFormula::negation(GFormula a) {
    auto n = std::make_shared<detail::GNode>();
    n->kind = Kind::Not;
    n->text = "~" + a.str();
    n->left = std::move(a);
    return GFormula(std::move(n));
}

GFormula GFormula::arrow(GFormula a, GFormula b) {
    auto n = std::make_shared<detail::GNode>();
    n->kind = Kind::Arrow;
    n->text = "(" + a.str() + " -> " + b.str() + ")";
    n->left = std::move(a);
    n->right = std::move(b);
    return GFormula(std::move(n));
}

GFormula::Kind GFormula::kind() const { return node_->kind; }
const std::string& GFormula::name() const { return node_->name; }
bool GFormula::is_constant() const { return node_->constant; }
const GFormula& GFormula::left() const { return node_->left; }
const GFormula& GFormula::right() const { return node_->right; }

std::string GFormula::str() const { return node_ ? node_->text : std::string(); }

bool operator==(const GFormula& a, const GFormula& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.node_->text != b.node_->text) return false;
    // constants and variables print alike
    switch (a.kind()) {
        case GFormula::Kind::Atom: return a.is_constant() == b.is_constant();
        case GFormula::Kind::Not: return a.left() == b.left();
        case GFormula::Kind::Arrow: return a.left() == b.left() && a.right() == b.right();
    }
    return false;
}

GFormula translate_to_g(const Formula& f) {
    switch (f.kind()) {
        case Kind::Var: return GFormula::atom(f.name(), false);
        case Kind::Const: return GFormula::atom(f.name(), true);
        case Kind::Neg: return GFormula::negation(translate_to_g(f.arg()));
        case Kind::Impl: return GFormula::arrow(translate_to_g(f.antecedent()), translate_to_g(f.consequent()));
    }
    return {};
}

Formula translate_to_h(const GFormula& f) {
    switch (f.kind()) {
        case GFormula::Kind::Atom: return f.is_constant() ? Formula::constant(f.name()) : Formula::var(f.name());
        case GFormula::Kind::Not: return Formula::neg(translate_to_h(f.left()));
        case GFormula::Kind::Arrow: return Formula::impl(translate_to_h(f.left()), translate_to_h(f.right()));
    }
    return {};
}

std::string Sequent::str() const {
    std::string s;
    for (std::size_t i = 0; i < antecedent.size(); ++i) {
        if (i) s += ", ";
        s += antecedent[i].str();
    }
    s += s.empty() ? "=>" : " =>";
    if (succedent) s += " " + succedent->str();
    return s;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Sequent parse_sequent(std::string_view text, const ConstantSet& constants) {
    auto arrow = text.find("=>");
    if (arrow == std::string_view::npos) throw ParseError("sequent: missing =>", 0);
    if (text.find("=>", arrow + 2) != std::string_view::npos) throw ParseError("sequent: more than one =>", arrow);
    Sequent s;
    std::string_view lhs = trim(text.substr(0, arrow));
    std::string_view rhs = trim(text.substr(arrow + 2));
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= lhs.size(); ++i) {
        if (i < lhs.size() && lhs[i] == '(') ++depth;
        if (i < lhs.size() && lhs[i] == ')') --depth;
        if (i == lhs.size() || (lhs[i] == ',' && depth == 0)) {
            auto part = trim(lhs.substr(start, i - start));
            if (part.empty()) {
                if (!lhs.empty()) throw ParseError("sequent: empty antecedent formula", start);
            } else {
                s.antecedent.push_back(translate_to_g(parse_formula(part, constants)));
            }
            start = i + 1;
        }
    }
    if (!rhs.empty()) {
        if (rhs.find(',') != std::string_view::npos) {
            // a comma is legal inside i(...); reject only a top-level one
            int d = 0;
            for (char c : rhs) {
                if (c == '(') ++d;
                if (c == ')') --d;
                if (c == ',' && d == 0) throw ParseError("sequent: more than one succedent formula", arrow);
            }
        }
        s.succedent = translate_to_g(parse_formula(rhs, constants));
    }
    return s;
}

const char* rule_name(GRule r) {
    switch (r) {
        case GRule::Axiom: return "axiom";
        case GRule::ImpLeft: return "->L";
        case GRule::ImpRight: return "->R";
        case GRule::NotLeft: return "~L";
        case GRule::NotRight: return "~R";
        case GRule::Contraction: return "contraction";
        case GRule::ThinningLeft: return "thinning-L";
        case GRule::ThinningRight: return "thinning-R";
        case GRule::Interchange: return "interchange";
    }
    return "?";
}

// ---- checking ----

namespace {

using GList = std::vector<GFormula>;

bool same_list(GList::const_iterator a, GList::const_iterator a_end, GList::const_iterator b, GList::const_iterator b_end) {
    return std::equal(a, a_end, b, b_end);
}

std::string check_node(const GProof& n) {
    const Sequent& c = n.conclusion;
    const GList& ca = c.antecedent;
    auto need = [&](std::size_t k) { return n.premisses.size() == k; };
    auto prem = [&](std::size_t k) -> const Sequent& { return n.premisses[k]->conclusion; };
    switch (n.rule) {
        case GRule::Axiom:
            if (!need(0)) return "axiom with premisses";
            if (!c.succedent || ca.empty() || ca.back() != *c.succedent) return "not of the form Gamma, A => A";
            return {};
        case GRule::ImpLeft: {
            if (!need(2)) return "->L needs two premisses";
            const Sequent& p1 = prem(0);
            const Sequent& p2 = prem(1);
            if (!p1.succedent) return "->L: left premiss has empty succedent";
            if (p2.antecedent.empty()) return "->L: right premiss has empty antecedent";
            if (ca.empty() || ca[0].kind() != GFormula::Kind::Arrow) return "->L: principal formula is not an implication";
            if (ca[0].left() != *p1.succedent || ca[0].right() != p2.antecedent[0]) return "->L: principal formula mismatch";
            GList rest = p1.antecedent;
            rest.insert(rest.end(), p2.antecedent.begin() + 1, p2.antecedent.end());
            if (!same_list(ca.begin() + 1, ca.end(), rest.begin(), rest.end())) return "->L: context mismatch";
            if (c.succedent != p2.succedent) return "->L: succedent mismatch";
            return {};
        }
        case GRule::ImpRight: {
            if (!need(1)) return "->R needs one premiss";
            const Sequent& p = prem(0);
            if (!c.succedent || c.succedent->kind() != GFormula::Kind::Arrow) return "->R: succedent is not an implication";
            if (!p.succedent || p.antecedent.empty()) return "->R: premiss shape";
            if (p.antecedent[0] != c.succedent->left() || *p.succedent != c.succedent->right()) return "->R: principal mismatch";
            if (!same_list(p.antecedent.begin() + 1, p.antecedent.end(), ca.begin(), ca.end())) return "->R: context mismatch";
            return {};
        }
        case GRule::NotLeft: {
            if (!need(1)) return "~L needs one premiss";
            const Sequent& p = prem(0);
            if (c.succedent) return "~L: succedent must be empty";
            if (!p.succedent || ca.empty() || ca[0].kind() != GFormula::Kind::Not || ca[0].left() != *p.succedent)
                return "~L: principal mismatch";
            if (!same_list(ca.begin() + 1, ca.end(), p.antecedent.begin(), p.antecedent.end())) return "~L: context mismatch";
            return {};
        }
        case GRule::NotRight: {
            if (!need(1)) return "~R needs one premiss";
            const Sequent& p = prem(0);
            if (!c.succedent || c.succedent->kind() != GFormula::Kind::Not) return "~R: succedent is not a negation";
            if (p.succedent || p.antecedent.empty()) return "~R: premiss shape";
            if (p.antecedent[0] != c.succedent->left()) return "~R: principal mismatch";
            if (!same_list(p.antecedent.begin() + 1, p.antecedent.end(), ca.begin(), ca.end())) return "~R: context mismatch";
            return {};
        }
        case GRule::Contraction: {
            if (!need(1)) return "contraction needs one premiss";
            const Sequent& p = prem(0);
            if (p.succedent != c.succedent) return "contraction: succedent mismatch";
            if (p.antecedent.size() < 2 || p.antecedent[0] != p.antecedent[1]) return "contraction: no repeated formula";
            if (!same_list(p.antecedent.begin() + 1, p.antecedent.end(), ca.begin(), ca.end())) return "contraction: context mismatch";
            return {};
        }
        case GRule::ThinningLeft: {
            if (!need(1)) return "thinning needs one premiss";
            const Sequent& p = prem(0);
            if (p.succedent != c.succedent) return "thinning: succedent mismatch";
            if (ca.empty() || !same_list(ca.begin() + 1, ca.end(), p.antecedent.begin(), p.antecedent.end()))
                return "thinning: context mismatch";
            return {};
        }
        case GRule::ThinningRight: {
            if (!need(1)) return "thinning needs one premiss";
            const Sequent& p = prem(0);
            if (p.succedent) return "thinning-R: premiss succedent not empty";
            if (!c.succedent) return "thinning-R: conclusion succedent empty";
            if (p.antecedent != ca) return "thinning-R: context mismatch";
            return {};
        }
        case GRule::Interchange: {
            if (!need(1)) return "interchange needs one premiss";
            const Sequent& p = prem(0);
            if (p.succedent != c.succedent) return "interchange: succedent mismatch";
            const GList& pa = p.antecedent;
            if (pa.size() != ca.size()) return "interchange: length mismatch";
            std::size_t k = 0;
            while (k < pa.size() && pa[k] == ca[k]) ++k;
            if (k + 1 >= pa.size()) return "interchange: nothing exchanged";
            if (pa[k] != ca[k + 1] || pa[k + 1] != ca[k]) return "interchange: not an adjacent exchange";
            if (!same_list(pa.begin() + k + 2, pa.end(), ca.begin() + k + 2, ca.end())) return "interchange: context mismatch";
            return {};
        }
    }
    return "unknown rule";
}

}  // namespace

Verdict check_gproof(const GTree& g) {
    if (!g) return {false, "root", "empty proof", {}, {}};
    std::unordered_set<const GProof*> seen;
    Verdict out;
    std::function<bool(const GTree&, const std::string&)> rec = [&](const GTree& n, const std::string& path) {
        if (!seen.insert(n.get()).second) return true;
        for (std::size_t i = 0; i < n->premisses.size(); ++i) {
            if (!n->premisses[i]) {
                out = {false, path, "missing premiss", {}, {}};
                return false;
            }
            if (!rec(n->premisses[i], path + "." + std::to_string(i))) return false;
        }
        if (auto why = check_node(*n); !why.empty()) {
            out = {false, path, why, rule_name(n->rule), n->conclusion.str()};
            return false;
        }
        return true;
    };
    rec(g, "root");
    return out;
}

std::size_t gproof_size(const GTree& g) {
    std::unordered_set<const GProof*> seen;
    std::function<void(const GTree&)> rec = [&](const GTree& n) {
        if (!n || !seen.insert(n.get()).second) return;
        for (auto& p : n->premisses) rec(p);
    };
    rec(g);
    return seen.size();
}

bool has_subformula_property(const GTree& g) {
    if (!g) return false;
    std::set<std::string> allowed;
    std::function<void(const GFormula&)> add = [&](const GFormula& f) {
        if (!allowed.insert(f.str()).second) return;
        if (f.kind() != GFormula::Kind::Atom) add(f.left());
        if (f.kind() == GFormula::Kind::Arrow) add(f.right());
    };
    for (auto& f : g->conclusion.antecedent) add(f);
    if (g->conclusion.succedent) add(*g->conclusion.succedent);
    std::unordered_set<const GProof*> seen;
    std::function<bool(const GTree&)> rec = [&](const GTree& n) {
        if (!seen.insert(n.get()).second) return true;
        for (auto& f : n->conclusion.antecedent)
            if (!allowed.count(f.str())) return false;
        if (n->conclusion.succedent && !allowed.count(n->conclusion.succedent->str())) return false;
        for (auto& p : n->premisses)
            if (!rec(p)) return false;
        return true;
    };
    return rec(g);
}

// ---- search ----

namespace {

GTree make(GRule r, Sequent s, std::vector<GTree> prem = {}) {
    return std::make_shared<const GProof>(GProof{r, std::move(s), std::move(prem)});
}

GTree interchange(const GTree& p, std::size_t k) {
    Sequent s = p->conclusion;
    std::swap(s.antecedent[k], s.antecedent[k + 1]);
    return make(GRule::Interchange, std::move(s), {p});
}

GTree move_to(GTree p, std::size_t from, std::size_t to) {
    while (from > to) {
        p = interchange(p, from - 1);
        --from;
    }
    return p;
}

/// Turns p's antecedent into `target` (same formulas, any multiplicities)
/// by contraction, left thinning and interchange.
GTree restructure(GTree p, const GList& target) {
    for (;;) {
        const GList& a = p->conclusion.antecedent;
        std::size_t i = 0, j = 0;
        bool dup = false;
        for (i = 0; i < a.size() && !dup; ++i)
            for (j = i + 1; j < a.size(); ++j)
                if (a[i] == a[j]) {
                    dup = true;
                    break;
                }
        if (!dup) break;
        --i;
        p = move_to(p, i, 0);
        p = move_to(p, j, 1);
        Sequent s = p->conclusion;
        s.antecedent.erase(s.antecedent.begin());
        p = make(GRule::Contraction, std::move(s), {p});
    }
    for (std::size_t k = target.size(); k-- > 0;) {
        const GList& a = p->conclusion.antecedent;
        auto have = std::count(a.begin(), a.end(), target[k]);
        auto want = std::count(target.begin(), target.end(), target[k]);
        if (have < want) {
            Sequent s = p->conclusion;
            s.antecedent.insert(s.antecedent.begin(), target[k]);
            p = make(GRule::ThinningLeft, std::move(s), {p});
        }
    }
    if (p->conclusion.antecedent.size() != target.size()) throw Error("restructure: antecedent not contained in target");
    for (std::size_t k = 0; k < target.size(); ++k) {
        const GList& a = p->conclusion.antecedent;
        std::size_t j = k;
        while (j < a.size() && a[j] != target[k]) ++j;
        if (j == a.size()) throw Error("restructure: formula missing from target");
        p = move_to(p, j, k);
    }
    return p;
}

struct SearchNode {
    enum class Kind { Axiom, ImpRight, NotRight, ImpLeft, NotLeft } kind;
    std::vector<int> set;
    int succ;       // -1: empty
    int principal;  // left rules
    std::shared_ptr<const SearchNode> a, b;
};
using SNode = std::shared_ptr<const SearchNode>;

class Prover {
public:
    explicit Prover(const Sequent& s) {
        for (auto& f : s.antecedent) root_.push_back(intern(f));
        if (s.succedent) root_succ_ = intern(*s.succedent);
        std::sort(root_.begin(), root_.end());
        root_.erase(std::unique(root_.begin(), root_.end()), root_.end());
    }

    SNode run() {
        bool loop = false;
        return prove(root_, root_succ_, loop);
    }

    GTree rebuild(const SNode& n) {
        if (auto it = built_.find(n.get()); it != built_.end()) return it->second;
        GList ctx = list(n->set);
        std::optional<GFormula> succ;
        if (n->succ >= 0) succ = table_[n->succ];
        GTree out;
        switch (n->kind) {
            case SearchNode::Kind::Axiom:
                out = restructure(make(GRule::Axiom, Sequent{{*succ}, succ}), ctx);
                break;
            case SearchNode::Kind::ImpRight:
            case SearchNode::Kind::NotRight: {
                GList with = ctx;
                with.insert(with.begin(), succ->left());
                GTree child = restructure(rebuild(n->a), with);
                out = make(n->kind == SearchNode::Kind::ImpRight ? GRule::ImpRight : GRule::NotRight, Sequent{ctx, succ}, {child});
                break;
            }
            case SearchNode::Kind::ImpLeft: {
                const GFormula& f = table_[n->principal];
                GTree left = rebuild(n->a);
                GList with = ctx;
                with.insert(with.begin(), f.right());
                GTree right = restructure(rebuild(n->b), with);
                GList all{f};
                all.insert(all.end(), ctx.begin(), ctx.end());
                all.insert(all.end(), ctx.begin(), ctx.end());
                out = restructure(make(GRule::ImpLeft, Sequent{all, succ}, {left, right}), ctx);
                break;
            }
            case SearchNode::Kind::NotLeft: {
                const GFormula& f = table_[n->principal];
                GList all{f};
                all.insert(all.end(), ctx.begin(), ctx.end());
                out = restructure(make(GRule::NotLeft, Sequent{all, std::nullopt}, {rebuild(n->a)}), ctx);
                if (succ) out = make(GRule::ThinningRight, Sequent{ctx, succ}, {out});
                break;
            }
        }
        built_.emplace(n.get(), out);
        return out;
    }

private:
    int intern(const GFormula& f) {
        auto [it, fresh] = index_.try_emplace(f.str(), static_cast<int>(table_.size()));
        if (fresh) {
            table_.push_back(f);
            if (f.kind() != GFormula::Kind::Atom) intern(f.left());
            if (f.kind() == GFormula::Kind::Arrow) intern(f.right());
        }
        return it->second;
    }

    int idx(const GFormula& f) const { return index_.at(f.str()); }

    GList list(const std::vector<int>& set) const {
        GList out;
        for (int i : set) out.push_back(table_[i]);
        return out;
    }

    static std::vector<int> with(std::vector<int> set, int f) {
        auto it = std::lower_bound(set.begin(), set.end(), f);
        if (it == set.end() || *it != f) set.insert(it, f);
        return set;
    }

    static std::string key(const std::vector<int>& set, int succ) {
        std::string k;
        for (int i : set) k += std::to_string(i) + ",";
        return k + "|" + std::to_string(succ);
    }

    static bool contains(const std::vector<int>& set, int f) { return std::binary_search(set.begin(), set.end(), f); }

    SNode node(SearchNode::Kind k, const std::vector<int>& set, int succ, int principal, SNode a = {}, SNode b = {}) {
        return std::make_shared<const SearchNode>(SearchNode{k, set, succ, principal, std::move(a), std::move(b)});
    }

    SNode prove(const std::vector<int>& set, int succ, bool& loop) {
        std::string k = key(set, succ);
        if (auto it = proved_.find(k); it != proved_.end()) return it->second;
        if (failed_.count(k)) return nullptr;
        if (!on_branch_.insert(k).second) {
            loop = true;
            return nullptr;
        }
        bool sub_loop = false;
        SNode out = search(set, succ, sub_loop);
        on_branch_.erase(k);
        if (out) {
            proved_.emplace(k, out);
        } else if (!sub_loop) {
            failed_.insert(k);
        } else {
            loop = true;
        }
        return out;
    }

    SNode search(const std::vector<int>& set, int succ, bool& loop) {
        if (succ >= 0 && contains(set, succ)) return node(SearchNode::Kind::Axiom, set, succ, -1);
        if (succ >= 0) {
            const GFormula& c = table_[succ];
            // right rules are invertible here
            if (c.kind() == GFormula::Kind::Arrow) {
                SNode a = prove(with(set, idx(c.left())), idx(c.right()), loop);
                return a ? node(SearchNode::Kind::ImpRight, set, succ, -1, a) : nullptr;
            }
            if (c.kind() == GFormula::Kind::Not) {
                SNode a = prove(with(set, idx(c.left())), -1, loop);
                return a ? node(SearchNode::Kind::NotRight, set, succ, -1, a) : nullptr;
            }
        }
        // left rules; cheap ones (minor premiss already present) first
        std::vector<std::pair<int, int>> order;
        for (int f : set) {
            const GFormula& g = table_[f];
            if (g.kind() == GFormula::Kind::Atom) continue;
            if (g.kind() == GFormula::Kind::Arrow && contains(set, idx(g.right()))) continue;
            order.emplace_back(contains(set, idx(g.left())) ? 0 : 1, f);
        }
        std::stable_sort(order.begin(), order.end());
        for (auto [cost, f] : order) {
            const GFormula& g = table_[f];
            int a = idx(g.left());
            SNode pa = prove(set, a, loop);
            if (!pa) continue;
            if (g.kind() == GFormula::Kind::Not) return node(SearchNode::Kind::NotLeft, set, succ, f, pa);
            SNode pb = prove(with(set, idx(g.right())), succ, loop);
            if (pb) return node(SearchNode::Kind::ImpLeft, set, succ, f, pa, pb);
        }
        return nullptr;
    }

    std::vector<GFormula> table_;
    std::unordered_map<std::string, int> index_;
    std::vector<int> root_;
    int root_succ_ = -1;
    std::unordered_map<std::string, SNode> proved_;
    std::unordered_set<std::string> failed_;
    std::unordered_set<std::string> on_branch_;
    std::unordered_map<const SearchNode*, GTree> built_;
};

}  // namespace

GTree prove_sequent(const Sequent& s) {
    Prover pr(s);
    SNode n = pr.run();
    if (!n) return nullptr;
    return restructure(pr.rebuild(n), s.antecedent);
}


// ---- extraction of modus-ponens proofs ----

namespace {

Formula map_letters(const Formula& f, const std::function<Formula(const Formula&)>& atom) {
    switch (f.kind()) {
        case Kind::Var:
        case Kind::Const: return atom(f);
        case Kind::Neg: return Formula::neg(map_letters(f.arg(), atom));
        case Kind::Impl: return Formula::impl(map_letters(f.antecedent(), atom), map_letters(f.consequent(), atom));
    }
    return f;
}

Formula freeze(const Formula& f) {
    return map_letters(f, [](const Formula& a) { return a.is_var() ? Formula::constant(a.symbol()) : a; });
}

/// Substitution instance of an H axiom, e.g. h_instance("H1", {a, b}) = i(a,i(b,a)).
MPTree h_instance(const AxiomSystem& h, const char* label, std::initializer_list<Formula> values) {
    static const char* const names[] = {"x", "y", "z"};
    Substitution s;
    std::size_t k = 0;
    for (const Formula& v : values) s.bind(intern(names[k++]), v);
    return mp_axiom(h, label, std::move(s));
}

class DeductionTheorem {
public:
    DeductionTheorem(const AxiomSystem& h, Formula b) : h_(h), b_(std::move(b)) {}

    MPTree run(const MPTree& n) {
        if (auto it = done_.find(n.get()); it != done_.end()) return it->second;
        MPTree out;
        if (n->kind == MPNode::Kind::Assumption && n->formula == b_) {
            out = identity();
        } else if (n->kind == MPNode::Kind::Mp) {
            const Formula& a = n->formula;
            const Formula& p = n->minor->formula;
            MPTree bpa = run(n->major);  // i(b,i(p,a))
            MPTree bp = run(n->minor);   // i(b,p)
            MPTree h2 = h_instance(h_, "H2", {b_, p, a});
            out = mp_apply(mp_apply(h2, bpa), bp);
        } else {
            out = mp_apply(h_instance(h_, "H1", {n->formula, b_}), n);
        }
        done_.emplace(n.get(), out);
        return out;
    }

private:
    MPTree identity() {
        if (!id_) {
            const DKit& kit = builtin_dkit("H");
            CDProof p = prove_identity(b_, kit);
            id_ = pushback(p, constant_restoring_substitution(b_)).root;
            if (id_->formula != Formula::impl(b_, b_)) throw Error("deduction theorem: identity proof concludes " + id_->formula.str());
        }
        return id_;
    }

    const AxiomSystem& h_;
    Formula b_;
    MPTree id_;
    std::unordered_map<const MPNode*, MPTree> done_;
};

MPTree replace_assumption(const MPTree& n, const Formula& f, const MPTree& by, std::unordered_map<const MPNode*, MPTree>& memo) {
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    MPTree out = n;
    if (n->kind == MPNode::Kind::Assumption && n->formula == f) {
        out = by;
    } else if (n->kind == MPNode::Kind::Mp) {
        MPTree ma = replace_assumption(n->major, f, by, memo);
        MPTree mi = replace_assumption(n->minor, f, by, memo);
        if (ma != n->major || mi != n->minor) out = mp_node(ma, mi, n->formula);
    }
    memo.emplace(n.get(), out);
    return out;
}

class Extractor {
public:
    explicit Extractor(const AxiomSystem& h) : h_(h) {}

    Formula h(const GFormula& g) { return freeze(translate_to_h(g)); }

    MPTree run(const GTree& g, const std::optional<Formula>& target) {
        const Sequent& s = g->conclusion;
        std::optional<Formula> goal = s.succedent ? std::optional<Formula>(h(*s.succedent)) : target;
        if (!goal) throw Error("extract: empty succedent needs a target formula");
        std::string key = std::to_string(reinterpret_cast<std::uintptr_t>(g.get())) + "|" + goal->str();
        if (auto it = done_.find(key); it != done_.end()) return it->second;
        MPTree out;
        switch (g->rule) {
            case GRule::Axiom: out = mp_assumption(*goal); break;
            case GRule::ImpLeft: {
                const GFormula& f = s.antecedent[0];
                MPTree pa = run(g->premisses[0], std::nullopt);
                MPTree pb = run(g->premisses[1], goal);
                MPTree b = mp_apply(mp_assumption(h(f)), pa);
                std::unordered_map<const MPNode*, MPTree> memo;
                out = replace_assumption(pb, b->formula, b, memo);
                break;
            }
            case GRule::ImpRight: {
                Formula a = h(s.succedent->left());
                out = discharge(run(g->premisses[0], std::nullopt), a);
                break;
            }
            case GRule::NotRight: {
                Formula a = h(s.succedent->left());
                Formula na = Formula::neg(a);
                MPTree ana = discharge(run(g->premisses[0], na), a);  // i(a,n(a))
                out = mp_apply(h_instance(h_, "H3", {a}), ana);
                break;
            }
            case GRule::NotLeft: {
                Formula a = h(s.antecedent[0].left());
                MPTree pa = run(g->premisses[0], std::nullopt);
                MPTree step = mp_apply(h_instance(h_, "H4", {a, *goal}), pa);  // i(n(a),goal)
                out = mp_apply(step, mp_assumption(Formula::neg(a)));
                break;
            }
            case GRule::ThinningRight: out = run(g->premisses[0], goal); break;
            case GRule::Contraction:
            case GRule::ThinningLeft:
            case GRule::Interchange: out = run(g->premisses[0], target); break;
        }
        done_.emplace(key, out);
        return out;
    }

private:
    MPTree discharge(const MPTree& p, const Formula& a) {
        DeductionTheorem dt(h_, a);
        return dt.run(p);
    }

    const AxiomSystem& h_;
    std::unordered_map<std::string, MPTree> done_;
};

std::vector<Formula> unique_formulas(const std::vector<Formula>& in) {
    std::vector<Formula> out;
    for (auto& f : in)
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    return out;
}

}  // namespace

MPProof deduction_theorem_m(const MPProof& p, const Formula& b) {
    for (auto& a : p.assumptions)
        if (has_variables(a)) throw Error("deduction theorem: assumption " + a.str() + " contains variables");
    if (has_variables(b)) throw Error("deduction theorem: " + b.str() + " contains variables");
    const AxiomSystem& h = axiom_system("H");
    for (auto& a : h.axioms) {
        const Axiom* x = p.system.find(a.label);
        if (!x || x->formula != a.formula) throw Error("deduction theorem: proof is not over H");
    }
    DeductionTheorem dt(h, b);
    MPProof out;
    out.system = h;
    for (auto& a : p.assumptions)
        if (a != b) out.assumptions.push_back(a);
    out.root = dt.run(p.root);
    return out;
}

MPProof extract_m_proof(const GTree& g, const std::optional<Formula>& target) {
    if (!g) throw Error("extract: empty proof");
    if (auto v = check_gproof(g); !v.valid) throw Error("extract: " + v.str());
    const Sequent& s = g->conclusion;
    // every letter is treated as a constant while extracting
    std::set<Symbol> vars, consts;
    auto collect = [&](const Formula& f) {
        for (Symbol v : variables(f)) vars.insert(v);
        for (Symbol c : constants(f)) consts.insert(c);
    };
    for (auto& f : s.antecedent) collect(translate_to_h(f));
    if (s.succedent) collect(translate_to_h(*s.succedent));
    if (target) collect(*target);
    for (Symbol v : vars)
        if (consts.count(v)) throw Error("extract: letter " + symbol_name(v) + " is both variable and constant");

    const AxiomSystem& h = axiom_system("H");
    Extractor ex(h);
    std::optional<Formula> frozen_target;
    if (target) frozen_target = freeze(*target);
    MPTree root = ex.run(g, frozen_target);

    auto thaw = [&](const Formula& f) {
        return map_letters(f, [&](const Formula& a) { return a.is_const() && vars.count(a.symbol()) ? Formula::var(a.symbol()) : a; });
    };
    std::unordered_map<const MPNode*, MPTree> memo;
    std::function<MPTree(const MPTree&)> rec = [&](const MPTree& n) -> MPTree {
        if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
        MPTree out;
        switch (n->kind) {
            case MPNode::Kind::AxiomInstance: {
                Substitution sub;
                for (auto& [v, val] : n->subst.bindings()) sub.bind(v, thaw(val));
                out = mp_axiom(h, n->label, std::move(sub));
                break;
            }
            case MPNode::Kind::Assumption: out = mp_assumption(thaw(n->formula)); break;
            case MPNode::Kind::Mp: out = mp_node(rec(n->major), rec(n->minor), thaw(n->formula)); break;
        }
        memo.emplace(n.get(), out);
        return out;
    };

    MPProof out;
    out.system = h;
    for (auto& f : s.antecedent) out.assumptions.push_back(translate_to_h(f));
    out.assumptions = unique_formulas(out.assumptions);
    out.root = rec(root);
    return out;
}

CDProof h_dn_eliminate(const Formula& b, const std::vector<Formula>& delta) {
    for (auto& d : delta)
        if (has_variables(d)) throw Error("h-eliminate: assumption " + d.str() + " contains variables");
    const AxiomSystem& h = axiom_system("H");
    const DKit& kit = builtin_dkit("H");
    std::vector<Formula> assumptions = unique_formulas(delta);

    // trivial cases: b is an axiom or an assumption
    for (auto& a : h.axioms)
        if (is_alphabetic_variant(a.formula, b)) {
            ProofBuilder pb(h, assumptions);
            return pb.build(pb.respell(pb.axiom(a.label), b));
        }
    if (auto it = std::find(assumptions.begin(), assumptions.end(), b); it != assumptions.end()) {
        ProofBuilder pb(h, assumptions);
        return pb.build(pb.assumption(static_cast<std::size_t>(it - assumptions.begin())));
    }

    Sequent s;
    for (auto& d : assumptions) s.antecedent.push_back(translate_to_g(d));
    s.succedent = translate_to_g(b);
    GTree g = prove_sequent(s);
    if (!g) throw Error("h-eliminate: " + s.str() + " is not provable");
    MPProof m = extract_m_proof(g);
    m.assumptions = assumptions;
    return assemble_cd(m, kit);
}

}  // namespace dnelim
