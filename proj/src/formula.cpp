#include "dnelim/formula.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>

namespace dnelim {

namespace {

struct SymbolTable {
    std::shared_mutex mu;
    std::deque<std::string> names;  // deque: references stay valid on growth
    std::unordered_map<std::string, Symbol> ids;
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Symbol intern(std::string_view name) {
    auto& t = table();
    {
        std::shared_lock lock(t.mu);
        if (auto it = t.ids.find(std::string(name)); it != t.ids.end()) return it->second;
    }
    std::unique_lock lock(t.mu);
    auto [it, inserted] = t.ids.try_emplace(std::string(name), static_cast<Symbol>(t.names.size()));
    if (inserted) t.names.emplace_back(name);
    return it->second;
}

const std::string& symbol_name(Symbol s) {
    auto& t = table();
    std::shared_lock lock(t.mu);
    return t.names.at(s);
}

Formula Formula::var(Symbol s) {
    auto n = std::make_shared<detail::FormulaNode>();
    n->kind = Kind::Var;
    n->symbol = s;
    n->hash = mix(0x51, s);
    return Formula(std::move(n));
}

Formula Formula::var(std::string_view name) { return var(intern(name)); }

Formula Formula::constant(Symbol s) {
    auto n = std::make_shared<detail::FormulaNode>();
    n->kind = Kind::Const;
    n->symbol = s;
    n->hash = mix(0xC7, s);
    return Formula(std::move(n));
}

Formula Formula::constant(std::string_view name) { return constant(intern(name)); }

Formula Formula::neg(Formula arg) {
    auto n = std::make_shared<detail::FormulaNode>();
    n->kind = Kind::Neg;
    n->size = arg.weight() + 1;
    n->hash = mix(0x33, arg.hash());
    n->left = std::move(arg);
    return Formula(std::move(n));
}

Formula Formula::impl(Formula antecedent, Formula consequent) {
    auto n = std::make_shared<detail::FormulaNode>();
    n->kind = Kind::Impl;
    n->size = antecedent.weight() + consequent.weight() + 1;
    n->hash = mix(mix(0x77, antecedent.hash()), consequent.hash());
    n->left = std::move(antecedent);
    n->right = std::move(consequent);
    return Formula(std::move(n));
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.hash() != b.hash() || a.weight() != b.weight() || a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Kind::Var:
        case Kind::Const: return a.symbol() == b.symbol();
        case Kind::Neg: return a.arg() == b.arg();
        case Kind::Impl: return a.antecedent() == b.antecedent() && a.consequent() == b.consequent();
    }
    return false;
}

bool operator<(const Formula& a, const Formula& b) {
    if (a == b) return false;
    return a.str() < b.str();
}

namespace {

void print(const Formula& f, std::string& out) {
    switch (f.kind()) {
        case Kind::Var:
        case Kind::Const: out += f.name(); break;
        case Kind::Neg:
            out += "n(";
            print(f.arg(), out);
            out += ')';
            break;
        case Kind::Impl:
            out += "i(";
            print(f.antecedent(), out);
            out += ',';
            print(f.consequent(), out);
            out += ')';
            break;
    }
}

class Parser {
public:
    Parser(std::string_view text, const ConstantSet& constants) : text_(text), constants_(constants) {}

    Formula parse() {
        Formula f = formula();
        skip_ws();
        if (pos_ != text_.size()) {
            if (text_[pos_] == ')') throw ParseError("unbalanced parentheses: unexpected ')'", pos_);
            throw ParseError("trailing input", pos_);
        }
        return f;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size()) {
            if (c == ')') throw ParseError("unbalanced parentheses: missing ')'", pos_);
            throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
        }
        if (text_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    Formula formula() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        if (!std::isalpha(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '_')
            throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        std::string_view ident = text_.substr(start, pos_ - start);
        std::size_t after = pos_;
        skip_ws();
        bool call = pos_ < text_.size() && text_[pos_] == '(';
        if (call && ident == "n") {
            ++pos_;
            Formula a = formula();
            expect(')');
            return Formula::neg(std::move(a));
        }
        if (call && ident == "i") {
            ++pos_;
            Formula a = formula();
            expect(',');
            Formula b = formula();
            expect(')');
            return Formula::impl(std::move(a), std::move(b));
        }
        if (call) throw ParseError("unknown connective '" + std::string(ident) + "'", start);
        pos_ = after;
        if (constants_.find(ident) != constants_.end()) return Formula::constant(ident);
        return Formula::var(ident);
    }

    std::string_view text_;
    const ConstantSet& constants_;
    std::size_t pos_ = 0;
};

void collect(const Formula& f, Kind kind, std::vector<Symbol>& out, std::unordered_set<Symbol>& seen) {
    switch (f.kind()) {
        case Kind::Var:
        case Kind::Const:
            if (f.kind() == kind && seen.insert(f.symbol()).second) out.push_back(f.symbol());
            break;
        case Kind::Neg: collect(f.arg(), kind, out, seen); break;
        case Kind::Impl:
            collect(f.antecedent(), kind, out, seen);
            collect(f.consequent(), kind, out, seen);
            break;
    }
}

}  // namespace

std::string Formula::str() const {
    std::string out;
    if (node_) print(*this, out);
    return out;
}

Formula parse_formula(std::string_view text, const ConstantSet& constants) {
    return Parser(text, constants).parse();
}

std::vector<Symbol> variables(const Formula& f) {
    std::vector<Symbol> out;
    std::unordered_set<Symbol> seen;
    collect(f, Kind::Var, out, seen);
    return out;
}

std::vector<Symbol> constants(const Formula& f) {
    std::vector<Symbol> out;
    std::unordered_set<Symbol> seen;
    collect(f, Kind::Const, out, seen);
    return out;
}

bool has_variables(const Formula& f) {
    switch (f.kind()) {
        case Kind::Var: return true;
        case Kind::Const: return false;
        case Kind::Neg: return has_variables(f.arg());
        case Kind::Impl: return has_variables(f.antecedent()) || has_variables(f.consequent());
    }
    return false;
}

bool is_subformula(const Formula& needle, const Formula& hay) {
    if (needle.weight() > hay.weight()) return false;
    if (needle == hay) return true;
    switch (hay.kind()) {
        case Kind::Neg: return is_subformula(needle, hay.arg());
        case Kind::Impl: return is_subformula(needle, hay.antecedent()) || is_subformula(needle, hay.consequent());
        default: return false;
    }
}

std::vector<Formula> subformulas(const Formula& f) {
    std::vector<Formula> out;
    std::unordered_set<Formula, FormulaHash> seen;
    std::vector<Formula> stack{f};
    while (!stack.empty()) {
        Formula g = stack.back();
        stack.pop_back();
        if (!seen.insert(g).second) continue;
        out.push_back(g);
        if (g.is_neg()) stack.push_back(g.arg());
        if (g.is_impl()) {
            stack.push_back(g.consequent());
            stack.push_back(g.antecedent());
        }
    }
    return out;
}

}  // namespace dnelim
