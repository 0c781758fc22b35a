// First-order formulas over the catalog's ordered signatures.
//
// Concrete syntax (UTF-8, case-sensitive):
//   connectives   not, and, or, implies
//   quantifiers   exists v (...), forall v (...)
//   atoms         t1 < t2, t1 = t2, P1(t), P2(t)
//   terms         variables, f(t), constants c0, c1, ..., parameter
//                 literals @{...} (payload grammar depends on the structure)
//
// Formulas are immutable shared trees with value-semantic handles;
// equality is structural.

#ifndef SEPMOD_LOGIC_HPP
#define SEPMOD_LOGIC_HPP

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sepmod/point.hpp"

namespace sepmod {

struct Signature {
    std::string name;
    StructureId sid;
    std::vector<std::pair<std::string, int>> relations;  // always contains < and =
    std::vector<std::pair<std::string, int>> functions;
    bool indexed_constants = false;  // c0, c1, ... (EHR)

    bool has_relation(const std::string& sym, int arity) const {
        for (auto& [s, a] : relations)
            if (s == sym && a == arity) return true;
        return false;
    }
    bool has_function(const std::string& sym, int arity) const {
        for (auto& [s, a] : functions)
            if (s == sym && a == arity) return true;
        return false;
    }
    bool is_reserved(const std::string& sym) const;
};

// ── Terms ────────────────────────────────────────────────────────────────

class Term {
public:
    enum class Kind { Var, Const, Apply, Param };

    static Term var(std::string name);
    static Term constant(long index);          // c_index
    static Term apply(std::string fn, Term arg);
    static Term param(Point p);

    Kind kind() const { return node_->kind; }
    const std::string& var_name() const { return node_->name; }
    long const_index() const { return node_->index; }
    const std::string& fn_name() const { return node_->name; }
    const Term& arg() const { return *node_->child; }
    const Point& point() const { return *node_->point; }

    std::string str() const;
    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node {
        Kind kind;
        std::string name;
        long index = 0;
        std::shared_ptr<const Term> child;
        std::optional<Point> point;
    };
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// ── Formulas ─────────────────────────────────────────────────────────────

class Formula {
public:
    enum class Kind { Atom, Not, And, Or, Implies, Exists, Forall };

    // rel is "<", "=", or a unary predicate symbol such as "P1".
    static Formula atom(std::string rel, std::vector<Term> terms);
    static Formula negate(Formula f);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula implies(Formula a, Formula b);
    static Formula exists(std::string var, Formula body);
    static Formula forall(std::string var, Formula body);

    Kind kind() const { return node_->kind; }
    const std::string& rel() const { return node_->symbol; }
    const std::vector<Term>& terms() const { return node_->terms; }
    const Formula& child(int i = 0) const { return node_->children[i]; }
    int child_count() const { return static_cast<int>(node_->children.size()); }
    const std::string& bound_var() const { return node_->symbol; }

    int quantifier_depth() const;
    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node {
        Kind kind;
        std::string symbol;  // relation symbol, or bound variable for quantifiers
        std::vector<Term> terms;
        std::vector<Formula> children;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// ── Operations ───────────────────────────────────────────────────────────

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"),
          position(pos) {}
};

Formula parse_formula(const std::string& text, const Signature& sig);
std::string format_formula(const Formula& f);

// Free variables in first-occurrence order.
std::vector<std::string> free_variables(const Formula& f);

// Replaces free occurrences of bound variables by parameter literals.
// Binding a variable with no free occurrence is a no-op.
Formula substitute(const Formula& f, const std::map<std::string, Point>& binding);

} // namespace sepmod

#endif
