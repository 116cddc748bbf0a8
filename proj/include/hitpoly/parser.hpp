#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hitpoly/dickson.hpp"
#include "hitpoly/steenrod.hpp"

namespace hitpoly {

/// Abstract syntax for the expression language:
///   expr   := term ('+' term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' nat)?
///   atom   := 'x' nat | '0' | '1' | 'V(' nat ')' | 'Q(' nat ',' nat ')'
///           | 'Sq(' nat ')' '{' expr '}' | 'Chi(' nat ')' '{' expr '}'
///           | 'Word[' (('Sq'|'Chi') nat) (',' ...)* ']' '{' expr '}'
///           | '(' expr ')'
/// Whitespace is insignificant. Sums and products are flattened, and
/// redundant parentheses are not represented, so the canonical printer
/// round-trips: parse(print(parse(s))) == parse(s).
struct Expr {
    enum class Kind { Zero, One, Var, V, Q, Sum, Product, Power, Apply };
    Kind kind = Kind::Zero;
    std::uint64_t a = 0, b = 0;          // Var/V: index; Q: (n, s); Power: exponent
    OperatorWord word;                   // Apply
    std::vector<std::shared_ptr<const Expr>> children;
};
using ExprPtr = std::shared_ptr<const Expr>;

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& expected,
               const std::string& found)
        : std::runtime_error("parse error at line " + std::to_string(line) +
                             ", column " + std::to_string(column) + ": expected " +
                             expected + ", found " + found),
          line_(line), column_(column), expected_(expected) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t line_, column_;
    std::string expected_;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

struct Token {
    enum class Kind { Nat, Ident, Plus, Star, Caret, LParen, RParen, LBrace,
                      RBrace, LBracket, RBracket, Comma, End };
    Kind kind = Kind::End;
    std::uint64_t value = 0;   // Nat
    std::string text;          // Ident
    std::size_t line = 1, column = 1;

    std::string describe() const {
        switch (kind) {
            case Kind::Nat: return "number " + std::to_string(value);
            case Kind::Ident: return "'" + text + "'";
            case Kind::Plus: return "'+'";
            case Kind::Star: return "'*'";
            case Kind::Caret: return "'^'";
            case Kind::LParen: return "'('";
            case Kind::RParen: return "')'";
            case Kind::LBrace: return "'{'";
            case Kind::RBrace: return "'}'";
            case Kind::LBracket: return "'['";
            case Kind::RBracket: return "']'";
            case Kind::Comma: return "','";
            case Kind::End: return "end of input";
        }
        return "?";
    }
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && is_space(src_[pos_])) advance();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= src_.size()) return t; // End
        char c = src_[pos_];
        switch (c) {
            case '+': t.kind = Token::Kind::Plus; advance(); return t;
            case '*': t.kind = Token::Kind::Star; advance(); return t;
            case '^': t.kind = Token::Kind::Caret; advance(); return t;
            case '(': t.kind = Token::Kind::LParen; advance(); return t;
            case ')': t.kind = Token::Kind::RParen; advance(); return t;
            case '{': t.kind = Token::Kind::LBrace; advance(); return t;
            case '}': t.kind = Token::Kind::RBrace; advance(); return t;
            case '[': t.kind = Token::Kind::LBracket; advance(); return t;
            case ']': t.kind = Token::Kind::RBracket; advance(); return t;
            case ',': t.kind = Token::Kind::Comma; advance(); return t;
            default: break;
        }
        if (c >= '0' && c <= '9') {
            t.kind = Token::Kind::Nat;
            std::uint64_t v = 0;
            while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
                std::uint64_t digit = static_cast<std::uint64_t>(src_[pos_] - '0');
                if (v > (UINT64_MAX - digit) / 10)
                    throw ParseError(t.line, t.column, "a smaller number",
                                     "numeric overflow");
                v = v * 10 + digit;
                advance();
            }
            t.value = v;
            return t;
        }
        if (is_alpha(c)) {
            t.kind = Token::Kind::Ident;
            while (pos_ < src_.size() && is_alpha(src_[pos_])) {
                t.text += src_[pos_];
                advance();
            }
            return t;
        }
        throw ParseError(line_, column_, "a token", std::string("'") + c + "'");
    }

private:
    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
    static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1, column_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { cur_ = lexer_.next(); }

    ExprPtr parse() {
        ExprPtr e = parse_expr();
        expect(Token::Kind::End, "end of input");
        return e;
    }

private:
    using TK = Token::Kind;

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(cur_.line, cur_.column, expected, cur_.describe());
    }

    void bump() { cur_ = lexer_.next(); }

    Token expect(TK k, const std::string& what) {
        if (cur_.kind != k) fail(what);
        Token t = cur_;
        bump();
        return t;
    }

    std::uint64_t nat() { return expect(TK::Nat, "a number").value; }

    ExprPtr parse_expr() {
        auto node = std::make_shared<Expr>();
        node->kind = Expr::Kind::Sum;
        node->children.push_back(parse_term());
        while (cur_.kind == TK::Plus) {
            bump();
            node->children.push_back(parse_term());
        }
        if (node->children.size() == 1) return node->children[0];
        return node;
    }

    ExprPtr parse_term() {
        auto node = std::make_shared<Expr>();
        node->kind = Expr::Kind::Product;
        node->children.push_back(parse_factor());
        while (cur_.kind == TK::Star) {
            bump();
            node->children.push_back(parse_factor());
        }
        if (node->children.size() == 1) return node->children[0];
        return node;
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_atom();
        if (cur_.kind != TK::Caret) return base;
        bump();
        auto node = std::make_shared<Expr>();
        node->kind = Expr::Kind::Power;
        node->a = nat();
        node->children.push_back(std::move(base));
        return node;
    }

    ExprPtr parse_atom() {
        if (cur_.kind == TK::Nat) {
            if (cur_.value > 1) fail("'0' or '1' (the only constants)");
            auto node = std::make_shared<Expr>();
            node->kind = cur_.value ? Expr::Kind::One : Expr::Kind::Zero;
            bump();
            return node;
        }
        if (cur_.kind == TK::LParen) {
            bump();
            ExprPtr e = parse_expr();
            expect(TK::RParen, "')'");
            return e;
        }
        if (cur_.kind != TK::Ident)
            fail("'x', '0', '1', 'V', 'Q', 'Sq', 'Chi', 'Word' or '('");
        std::string name = cur_.text;
        auto node = std::make_shared<Expr>();
        if (name == "x") {
            bump();
            node->kind = Expr::Kind::Var;
            node->a = nat();
            if (node->a == 0) fail("a variable index >= 1");
            return node;
        }
        if (name == "V") {
            bump();
            expect(TK::LParen, "'('");
            node->kind = Expr::Kind::V;
            node->a = nat();
            if (node->a == 0) fail("an index >= 1 for V");
            expect(TK::RParen, "')'");
            return node;
        }
        if (name == "Q") {
            bump();
            expect(TK::LParen, "'('");
            node->kind = Expr::Kind::Q;
            node->a = nat();
            if (node->a == 0) fail("an index >= 1 for Q");
            expect(TK::Comma, "','");
            node->b = nat();
            expect(TK::RParen, "')'");
            return node;
        }
        if (name == "Sq" || name == "Chi") {
            bump();
            expect(TK::LParen, "'('");
            std::uint64_t i = nat();
            expect(TK::RParen, "')'");
            node->kind = Expr::Kind::Apply;
            node->word.factors.push_back(
                {name == "Sq" ? FactorKind::Sq : FactorKind::ChiSq, i});
            expect(TK::LBrace, "'{'");
            node->children.push_back(parse_expr());
            expect(TK::RBrace, "'}'");
            return node;
        }
        if (name == "Word") {
            bump();
            expect(TK::LBracket, "'['");
            node->kind = Expr::Kind::Apply;
            while (true) {
                Token op = expect(TK::Ident, "'Sq' or 'Chi'");
                if (op.text != "Sq" && op.text != "Chi")
                    throw ParseError(op.line, op.column, "'Sq' or 'Chi'",
                                     op.describe());
                node->word.factors.push_back(
                    {op.text == "Sq" ? FactorKind::Sq : FactorKind::ChiSq, nat()});
                if (cur_.kind != TK::Comma) break;
                bump();
            }
            expect(TK::RBracket, "']'");
            expect(TK::LBrace, "'{'");
            node->children.push_back(parse_expr());
            expect(TK::RBrace, "'}'");
            return node;
        }
        fail("'x', 'V', 'Q', 'Sq', 'Chi' or 'Word'");
    }

    Lexer lexer_;
    Token cur_;
};

} // namespace detail

inline ExprPtr parse(std::string_view text) { return detail::Parser(text).parse(); }

/// Canonical re-parseable rendering; parse(print(parse(s))) == parse(s).
inline std::string print(const ExprPtr& e) {
    auto wrap = [](const ExprPtr& child, bool need_parens) {
        std::string s = print(child);
        return need_parens ? "(" + s + ")" : s;
    };
    switch (e->kind) {
        case Expr::Kind::Zero: return "0";
        case Expr::Kind::One: return "1";
        case Expr::Kind::Var: return "x" + std::to_string(e->a);
        case Expr::Kind::V: return "V(" + std::to_string(e->a) + ")";
        case Expr::Kind::Q:
            return "Q(" + std::to_string(e->a) + "," + std::to_string(e->b) + ")";
        case Expr::Kind::Sum: {
            std::string s;
            for (const auto& c : e->children)
                s += (s.empty() ? "" : " + ") + print(c);
            return s;
        }
        case Expr::Kind::Product: {
            std::string s;
            for (const auto& c : e->children)
                s += (s.empty() ? "" : "*") + wrap(c, c->kind == Expr::Kind::Sum);
            return s;
        }
        case Expr::Kind::Power:
            return wrap(e->children[0], e->children[0]->kind == Expr::Kind::Sum ||
                                            e->children[0]->kind == Expr::Kind::Product ||
                                            e->children[0]->kind == Expr::Kind::Power) +
                   "^" + std::to_string(e->a);
        case Expr::Kind::Apply: {
            const auto& fs = e->word.factors;
            std::string head;
            if (fs.size() == 1) {
                head = std::string(fs[0].kind == FactorKind::Sq ? "Sq" : "Chi") + "(" +
                       std::to_string(fs[0].index) + ")";
            } else {
                head = "Word[";
                for (std::size_t j = 0; j < fs.size(); ++j)
                    head += std::string(j ? ", " : "") +
                            (fs[j].kind == FactorKind::Sq ? "Sq " : "Chi ") +
                            std::to_string(fs[j].index);
                head += "]";
            }
            return head + "{" + print(e->children[0]) + "}";
        }
    }
    return "?";
}

/// Structural equality (used to state the printer round-trip law).
inline bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind || a->a != b->a || a->b != b->b) return false;
    if (a->word.factors.size() != b->word.factors.size()) return false;
    for (std::size_t j = 0; j < a->word.factors.size(); ++j)
        if (a->word.factors[j].kind != b->word.factors[j].kind ||
            a->word.factors[j].index != b->word.factors[j].index)
            return false;
    if (a->children.size() != b->children.size()) return false;
    for (std::size_t j = 0; j < a->children.size(); ++j)
        if (!equal(a->children[j], b->children[j])) return false;
    return true;
}

/// Evaluate in a declared ambient variable count. Indices past nvars are
/// errors: the variable count is explicit, never inferred.
inline Polynomial eval(const ExprPtr& e, std::size_t nvars) {
    if (nvars == 0) throw EvalError("eval: nvars must be >= 1");
    switch (e->kind) {
        case Expr::Kind::Zero: return Polynomial::zero(nvars);
        case Expr::Kind::One: return Polynomial::one(nvars);
        case Expr::Kind::Var:
            if (e->a > nvars)
                throw EvalError("eval: x" + std::to_string(e->a) + " exceeds --vars " +
                                std::to_string(nvars));
            return Polynomial::var(nvars, e->a - 1);
        case Expr::Kind::V:
            if (e->a > nvars)
                throw EvalError("eval: V(" + std::to_string(e->a) + ") needs " +
                                std::to_string(e->a) + " variables");
            return v_poly(e->a).embedded(nvars);
        case Expr::Kind::Q: {
            if (e->b > e->a)
                throw EvalError("eval: Q(" + std::to_string(e->a) + "," +
                                std::to_string(e->b) + ") needs s <= n");
            if (e->a > nvars)
                throw EvalError("eval: Q(" + std::to_string(e->a) + "," +
                                std::to_string(e->b) + ") needs " +
                                std::to_string(e->a) + " variables");
            return dickson_q(e->a, e->b).embedded(nvars);
        }
        case Expr::Kind::Sum: {
            Polynomial p = Polynomial::zero(nvars);
            for (const auto& c : e->children) p = p + eval(c, nvars);
            return p;
        }
        case Expr::Kind::Product: {
            Polynomial p = Polynomial::one(nvars);
            for (const auto& c : e->children) p = p * eval(c, nvars);
            return p;
        }
        case Expr::Kind::Power: return eval(e->children[0], nvars).pow(e->a);
        case Expr::Kind::Apply: return apply_word(e->word, eval(e->children[0], nvars));
    }
    throw EvalError("eval: malformed expression");
}

inline Polynomial eval(std::string_view text, std::size_t nvars) {
    return eval(parse(text), nvars);
}

/// Canonical expression syntax for a polynomial, re-parseable by eval.
inline std::string to_expression(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& m : p.support()) {
        if (!s.empty()) s += " + ";
        s += m.degree() == 0 ? "1" : m.str();
    }
    return s;
}

} // namespace hitpoly
