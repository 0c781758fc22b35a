#include "sepmod/logic.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace sepmod {

bool Signature::is_reserved(const std::string& sym) const {
    static const char* keywords[] = {"not", "and", "or", "implies", "exists", "forall"};
    for (auto* k : keywords)
        if (sym == k) return true;
    for (auto& [s, a] : relations)
        if (s == sym) return true;
    for (auto& [s, a] : functions)
        if (s == sym) return true;
    if (indexed_constants && sym.size() >= 2 && sym[0] == 'c' &&
        std::all_of(sym.begin() + 1, sym.end(), [](unsigned char c) { return std::isdigit(c); }))
        return true;
    return false;
}

// ── Term ─────────────────────────────────────────────────────────────────

Term Term::var(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->name = std::move(name);
    return Term(n);
}

Term Term::constant(long index) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->index = index;
    return Term(n);
}

Term Term::apply(std::string fn, Term arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Apply;
    n->name = std::move(fn);
    n->child = std::make_shared<const Term>(std::move(arg));
    return Term(n);
}

Term Term::param(Point p) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Param;
    n->point = std::move(p);
    return Term(n);
}

std::string Term::str() const {
    switch (kind()) {
        case Kind::Var: return node_->name;
        case Kind::Const: return "c" + std::to_string(node_->index);
        case Kind::Apply: return node_->name + "(" + node_->child->str() + ")";
        default: return node_->point->literal();
    }
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Term::Kind::Var: return a.var_name() == b.var_name();
        case Term::Kind::Const: return a.const_index() == b.const_index();
        case Term::Kind::Apply: return a.fn_name() == b.fn_name() && a.arg() == b.arg();
        default: return a.point() == b.point();
    }
}

// ── Formula ──────────────────────────────────────────────────────────────

Formula Formula::atom(std::string rel, std::vector<Term> terms) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->symbol = std::move(rel);
    n->terms = std::move(terms);
    return Formula(n);
}

Formula Formula::negate(Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Not;
    n->children = {std::move(f)};
    return Formula(n);
}

Formula Formula::conj(Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::And;
    n->children = {std::move(a), std::move(b)};
    return Formula(n);
}

Formula Formula::disj(Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Or;
    n->children = {std::move(a), std::move(b)};
    return Formula(n);
}

Formula Formula::implies(Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Implies;
    n->children = {std::move(a), std::move(b)};
    return Formula(n);
}

Formula Formula::exists(std::string var, Formula body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Exists;
    n->symbol = std::move(var);
    n->children = {std::move(body)};
    return Formula(n);
}

Formula Formula::forall(std::string var, Formula body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Forall;
    n->symbol = std::move(var);
    n->children = {std::move(body)};
    return Formula(n);
}

int Formula::quantifier_depth() const {
    int d = 0;
    for (auto& c : node_->children) d = std::max(d, c.quantifier_depth());
    if (kind() == Kind::Exists || kind() == Kind::Forall) ++d;
    return d;
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    if (a.node_->symbol != b.node_->symbol) return false;
    if (a.node_->terms != b.node_->terms) return false;
    if (a.node_->children.size() != b.node_->children.size()) return false;
    for (std::size_t i = 0; i < a.node_->children.size(); ++i)
        if (!(a.node_->children[i] == b.node_->children[i])) return false;
    return true;
}

// ── Parser ───────────────────────────────────────────────────────────────

namespace {

struct Token {
    enum class Kind { Ident, LParen, RParen, Comma, Less, Equal, Param, End };
    Kind kind;
    std::string text;   // identifier text or parameter payload
    std::size_t pos;
};

class Lexer {
public:
    Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws();
        std::size_t start = i_;
        if (i_ >= text_.size()) return {Token::Kind::End, "", start};
        char c = text_[i_];
        if (c == '(') { ++i_; return {Token::Kind::LParen, "(", start}; }
        if (c == ')') { ++i_; return {Token::Kind::RParen, ")", start}; }
        if (c == ',') { ++i_; return {Token::Kind::Comma, ",", start}; }
        if (c == '<') { ++i_; return {Token::Kind::Less, "<", start}; }
        if (c == '=') { ++i_; return {Token::Kind::Equal, "=", start}; }
        if (c == '@') {
            if (i_ + 1 >= text_.size() || text_[i_ + 1] != '{')
                throw ParseError(start, "expected '{' after '@'");
            std::size_t close = text_.find('}', i_ + 2);
            if (close == std::string::npos)
                throw ParseError(start, "unterminated parameter literal");
            std::string payload = text_.substr(i_ + 2, close - i_ - 2);
            i_ = close + 1;
            return {Token::Kind::Param, payload, start};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
                ++j;
            std::string word = text_.substr(i_, j - i_);
            i_ = j;
            return {Token::Kind::Ident, word, start};
        }
        throw ParseError(start, std::string("unexpected character '") + c + "'");
    }

private:
    void skip_ws() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    }
    const std::string& text_;
    std::size_t i_ = 0;
};

class Parser {
public:
    Parser(const std::string& text, const Signature& sig)
        : lexer_(text), sig_(sig) {
        advance();
    }

    Formula parse() {
        Formula f = parse_implies();
        expect(Token::Kind::End, "trailing input after formula");
        return f;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    void expect(Token::Kind k, const char* msg) {
        if (tok_.kind != k) throw ParseError(tok_.pos, msg);
    }

    static bool is_keyword(const Token& t, const char* kw) {
        return t.kind == Token::Kind::Ident && t.text == kw;
    }

    Formula parse_implies() {
        Formula lhs = parse_or();
        if (is_keyword(tok_, "implies")) {
            advance();
            return Formula::implies(std::move(lhs), parse_implies());  // right assoc
        }
        return lhs;
    }

    Formula parse_or() {
        Formula lhs = parse_and();
        while (is_keyword(tok_, "or")) {
            advance();
            lhs = Formula::disj(std::move(lhs), parse_and());
        }
        return lhs;
    }

    Formula parse_and() {
        Formula lhs = parse_unary();
        while (is_keyword(tok_, "and")) {
            advance();
            lhs = Formula::conj(std::move(lhs), parse_unary());
        }
        return lhs;
    }

    Formula parse_unary() {
        if (is_keyword(tok_, "not")) {
            advance();
            return Formula::negate(parse_unary());
        }
        if (is_keyword(tok_, "exists") || is_keyword(tok_, "forall")) {
            bool ex = tok_.text == "exists";
            advance();
            expect(Token::Kind::Ident, "expected variable after quantifier");
            std::string var = tok_.text;
            if (sig_.is_reserved(var))
                throw ParseError(tok_.pos, "'" + var + "' is reserved and cannot be a variable");
            advance();
            expect(Token::Kind::LParen, "expected '(' after quantified variable");
            advance();
            Formula body = parse_implies();
            expect(Token::Kind::RParen, "expected ')' closing quantifier body");
            advance();
            return ex ? Formula::exists(var, std::move(body))
                      : Formula::forall(var, std::move(body));
        }
        if (tok_.kind == Token::Kind::LParen) {
            advance();
            Formula inner = parse_implies();
            expect(Token::Kind::RParen, "expected ')'");
            advance();
            return inner;
        }
        return parse_atom();
    }

    Formula parse_atom() {
        // Unary predicate atom P(t)?
        if (tok_.kind == Token::Kind::Ident && sig_.has_relation(tok_.text, 1)) {
            std::string rel = tok_.text;
            advance();
            expect(Token::Kind::LParen, "expected '(' after predicate symbol");
            advance();
            Term t = parse_term();
            expect(Token::Kind::RParen, "expected ')' closing predicate atom");
            advance();
            return Formula::atom(rel, {std::move(t)});
        }
        Term lhs = parse_term();
        if (tok_.kind == Token::Kind::Less) {
            advance();
            Term rhs = parse_term();
            return Formula::atom("<", {std::move(lhs), std::move(rhs)});
        }
        if (tok_.kind == Token::Kind::Equal) {
            advance();
            Term rhs = parse_term();
            return Formula::atom("=", {std::move(lhs), std::move(rhs)});
        }
        throw ParseError(tok_.pos, "expected '<' or '=' in atom");
    }

    Term parse_term() {
        if (tok_.kind == Token::Kind::Param) {
            Point p = [&] {
                try {
                    return Point::parse_payload(sig_.sid, tok_.text);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(tok_.pos, e.what());
                }
            }();
            advance();
            return Term::param(std::move(p));
        }
        expect(Token::Kind::Ident, "expected a term");
        std::string word = tok_.text;
        std::size_t pos = tok_.pos;

        // Indexed constant c<k>?
        if (sig_.indexed_constants && word.size() >= 2 && word[0] == 'c' &&
            std::all_of(word.begin() + 1, word.end(),
                        [](unsigned char ch) { return std::isdigit(ch); })) {
            advance();
            return Term::constant(std::stol(word.substr(1)));
        }

        // Function application f(t)?
        if (sig_.has_function(word, 1)) {
            advance();
            expect(Token::Kind::LParen, "expected '(' after function symbol");
            advance();
            Term arg = parse_term();
            expect(Token::Kind::RParen, "expected ')' closing function application");
            advance();
            return Term::apply(word, std::move(arg));
        }

        if (sig_.is_reserved(word))
            throw ParseError(pos, "unknown or misused symbol '" + word + "'");
        // Anything that *looks* like a symbol family we do not have is an error
        // rather than a fresh variable; catches e.g. f(x) over DLO.
        if (word.size() >= 2 && word[0] == 'c' &&
            std::all_of(word.begin() + 1, word.end(),
                        [](unsigned char ch) { return std::isdigit(ch); }))
            throw ParseError(pos, "signature has no constant family; '" + word + "' is invalid");
        advance();
        if (tok_.kind == Token::Kind::LParen)
            throw ParseError(pos, "unknown function or predicate symbol '" + word + "'");
        return Term::var(word);
    }

    Lexer lexer_;
    const Signature& sig_;
    Token tok_;
};

} // namespace

Formula parse_formula(const std::string& text, const Signature& sig) {
    return Parser(text, sig).parse();
}

// ── Printer ──────────────────────────────────────────────────────────────

namespace {

void format_rec(const Formula& f, std::string& out, bool parenthesize) {
    auto emit_child = [&](const Formula& c) {
        format_rec(c, out, c.kind() != Formula::Kind::Atom);
    };
    switch (f.kind()) {
        case Formula::Kind::Atom:
            if (f.terms().size() == 1) {
                out += f.rel();
                out += "(";
                out += f.terms()[0].str();
                out += ")";
            } else {
                out += f.terms()[0].str();
                out += " " + f.rel() + " ";
                out += f.terms()[1].str();
            }
            return;
        case Formula::Kind::Not:
            out += "not (";
            format_rec(f.child(), out, false);
            out += ")";
            return;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            out += f.kind() == Formula::Kind::Exists ? "exists " : "forall ";
            out += f.bound_var();
            out += " (";
            format_rec(f.child(), out, false);
            out += ")";
            return;
        default: {
            const char* op = f.kind() == Formula::Kind::And      ? " and "
                             : f.kind() == Formula::Kind::Or     ? " or "
                                                                 : " implies ";
            if (parenthesize) out += "(";
            emit_child(f.child(0));
            out += op;
            emit_child(f.child(1));
            if (parenthesize) out += ")";
            return;
        }
    }
}

} // namespace

std::string format_formula(const Formula& f) {
    std::string out;
    format_rec(f, out, false);
    return out;
}

// ── Free variables and substitution ──────────────────────────────────────

namespace {

void term_free_vars(const Term& t, const std::set<std::string>& bound,
                    std::vector<std::string>& out) {
    switch (t.kind()) {
        case Term::Kind::Var:
            if (!bound.count(t.var_name()) &&
                std::find(out.begin(), out.end(), t.var_name()) == out.end())
                out.push_back(t.var_name());
            return;
        case Term::Kind::Apply:
            term_free_vars(t.arg(), bound, out);
            return;
        default:
            return;
    }
}

void free_vars_rec(const Formula& f, std::set<std::string>& bound,
                   std::vector<std::string>& out) {
    switch (f.kind()) {
        case Formula::Kind::Atom:
            for (auto& t : f.terms()) term_free_vars(t, bound, out);
            return;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            bool was_bound = bound.count(f.bound_var()) > 0;
            bound.insert(f.bound_var());
            free_vars_rec(f.child(), bound, out);
            if (!was_bound) bound.erase(f.bound_var());
            return;
        }
        default:
            for (int i = 0; i < f.child_count(); ++i) free_vars_rec(f.child(i), bound, out);
            return;
    }
}

Term substitute_term(const Term& t, const std::map<std::string, Point>& binding) {
    switch (t.kind()) {
        case Term::Kind::Var: {
            auto it = binding.find(t.var_name());
            if (it != binding.end()) return Term::param(it->second);
            return t;
        }
        case Term::Kind::Apply:
            return Term::apply(t.fn_name(), substitute_term(t.arg(), binding));
        default:
            return t;
    }
}

Formula substitute_rec(const Formula& f, std::map<std::string, Point> binding) {
    if (binding.empty()) return f;
    switch (f.kind()) {
        case Formula::Kind::Atom: {
            std::vector<Term> terms;
            terms.reserve(f.terms().size());
            for (auto& t : f.terms()) terms.push_back(substitute_term(t, binding));
            return Formula::atom(f.rel(), std::move(terms));
        }
        case Formula::Kind::Not:
            return Formula::negate(substitute_rec(f.child(), binding));
        case Formula::Kind::And:
            return Formula::conj(substitute_rec(f.child(0), binding),
                                 substitute_rec(f.child(1), binding));
        case Formula::Kind::Or:
            return Formula::disj(substitute_rec(f.child(0), binding),
                                 substitute_rec(f.child(1), binding));
        case Formula::Kind::Implies:
            return Formula::implies(substitute_rec(f.child(0), binding),
                                    substitute_rec(f.child(1), binding));
        default: {
            // Bindings are point literals, so capture is impossible; the bound
            // variable simply shadows any binding of the same name.
            binding.erase(f.bound_var());
            Formula body = substitute_rec(f.child(), std::move(binding));
            return f.kind() == Formula::Kind::Exists
                       ? Formula::exists(f.bound_var(), std::move(body))
                       : Formula::forall(f.bound_var(), std::move(body));
        }
    }
}

} // namespace

std::vector<std::string> free_variables(const Formula& f) {
    std::set<std::string> bound;
    std::vector<std::string> out;
    free_vars_rec(f, bound, out);
    return out;
}

Formula substitute(const Formula& f, const std::map<std::string, Point>& binding) {
    return substitute_rec(f, binding);
}

} // namespace sepmod
