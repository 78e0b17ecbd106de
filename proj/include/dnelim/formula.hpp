#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dnelim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Interned proposition-letter name. Ids are stable for the process lifetime.
using Symbol = std::uint32_t;

Symbol intern(std::string_view name);
const std::string& symbol_name(Symbol s);

enum class Kind : std::uint8_t { Var, Const, Neg, Impl };

namespace detail {
struct FormulaNode;
}

/// Immutable formula tree over i (implication), n (negation) and letters.
///
/// Letters are either variables (open to substitution) or constants (specific
/// proposition letters occurring in assumptions). Which identifiers are
/// constants is decided by the caller at parse time, never by spelling.
/// Nodes are shared and never mutated, so copies are cheap and thread-safe.
class Formula {
public:
    Formula() = default;

    static Formula var(std::string_view name);
    static Formula var(Symbol s);
    static Formula constant(std::string_view name);
    static Formula constant(Symbol s);
    static Formula neg(Formula arg);
    static Formula impl(Formula antecedent, Formula consequent);

    bool empty() const { return node_ == nullptr; }
    Kind kind() const;
    bool is_var() const { return kind() == Kind::Var; }
    bool is_const() const { return kind() == Kind::Const; }
    bool is_atom() const { return kind() == Kind::Var || kind() == Kind::Const; }
    bool is_neg() const { return kind() == Kind::Neg; }
    bool is_impl() const { return kind() == Kind::Impl; }

    Symbol symbol() const;
    const std::string& name() const { return symbol_name(symbol()); }
    const Formula& arg() const;
    const Formula& antecedent() const { return arg(); }
    const Formula& consequent() const;

    /// Symbol count: every i, n and letter occurrence counts one.
    std::size_t weight() const;
    std::size_t hash() const;
    bool shares_node(const Formula& o) const { return node_ == o.node_; }
    /// Identity of the shared node, for memo tables keyed on structure sharing.
    const void* node_id() const { return node_.get(); }

    std::string str() const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
    /// Total order (by printed form) for deterministic containers.
    friend bool operator<(const Formula& a, const Formula& b);

private:
    explicit Formula(std::shared_ptr<const detail::FormulaNode> n) : node_(std::move(n)) {}

    std::shared_ptr<const detail::FormulaNode> node_;
};

namespace detail {
struct FormulaNode {
    Kind kind;
    Symbol symbol = 0;
    std::size_t size = 1;
    std::size_t hash = 0;
    Formula left;
    Formula right;
};
}  // namespace detail

inline Kind Formula::kind() const { return node_->kind; }
inline Symbol Formula::symbol() const { return node_->symbol; }
inline const Formula& Formula::arg() const { return node_->left; }
inline const Formula& Formula::consequent() const { return node_->right; }
inline std::size_t Formula::weight() const { return node_->size; }
inline std::size_t Formula::hash() const { return node_->hash; }

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Identifiers that parse as constants rather than variables.
using ConstantSet = std::set<std::string, std::less<>>;

/// Parse prefix notation: formula := ident | "n(" formula ")" | "i(" formula "," formula ")".
/// Whitespace is ignored. Throws ParseError on malformed input.
Formula parse_formula(std::string_view text, const ConstantSet& constants = {});

/// Variable symbols in first-occurrence order (left to right).
std::vector<Symbol> variables(const Formula& f);
/// Constant symbols in first-occurrence order.
std::vector<Symbol> constants(const Formula& f);
bool has_variables(const Formula& f);

bool is_subformula(const Formula& needle, const Formula& hay);
std::vector<Formula> subformulas(const Formula& f);

}  // namespace dnelim
