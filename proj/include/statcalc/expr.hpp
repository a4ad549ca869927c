#pragma once

// Single-variable real expressions: parser, evaluator and canonical printer.
//
// Grammar (whitespace between tokens is ignored):
//
//   expression := term { ("+" | "-") term }
//   term       := unary { ("*" | "/") unary }
//   unary      := "-" unary | power
//   power      := primary [ "^" exponent ]          (right associative)
//   exponent   := "-" exponent | power
//   primary    := number | "x" | "pi" | "e" | function "(" expression ")"
//               | "(" expression ")"
//   function   := "sin" | "cos" | "tan" | "sec" | "exp" | "ln" | "sqrt" | "abs"
//   number     := digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
//               | "." digits [ exponent part ]
//
// Binding from tightest to loosest: "^", unary "-", "*" "/", "+" "-".
// Function calls require parentheses ("sin x" is rejected) and there is no
// implicit multiplication.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "statcalc/errors.hpp"
#include "statcalc/format.hpp"

namespace statcalc {

enum class Func { Sin, Cos, Tan, Sec, Exp, Ln, Sqrt, Abs };

inline const char* to_string(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Tan: return "tan";
        case Func::Sec: return "sec";
        case Func::Exp: return "exp";
        case Func::Ln: return "ln";
        case Func::Sqrt: return "sqrt";
        case Func::Abs: return "abs";
    }
    return "?";
}

inline std::optional<Func> function_from_name(std::string_view name) {
    static constexpr std::pair<std::string_view, Func> table[] = {
        {"sin", Func::Sin}, {"cos", Func::Cos}, {"tan", Func::Tan},   {"sec", Func::Sec},
        {"exp", Func::Exp}, {"ln", Func::Ln},   {"sqrt", Func::Sqrt}, {"abs", Func::Abs},
    };
    for (const auto& [n, f] : table)
        if (n == name) return f;
    return std::nullopt;
}

enum class NamedConstant { Pi, E };

/// Immutable expression tree. Copies share nodes, so an Expr can be handed to
/// any number of concurrent evaluators.
class Expr {
public:
    enum class Kind { Constant, Named, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

    static Expr constant(double v) { return Expr(make(Kind::Constant, v)); }
    static Expr named(NamedConstant c) {
        auto n = make(Kind::Named, c == NamedConstant::Pi ? std::numbers::pi : std::numbers::e);
        n->named = c;
        return Expr(std::move(n));
    }
    static Expr variable() { return Expr(make(Kind::Variable)); }
    static Expr negate(Expr a) {
        auto n = make(Kind::Negate);
        n->lhs = std::move(a.root_);
        return Expr(std::move(n));
    }
    static Expr binary(Kind k, Expr l, Expr r) {
        auto n = make(k);
        n->lhs = std::move(l.root_);
        n->rhs = std::move(r.root_);
        return Expr(std::move(n));
    }
    static Expr call(Func f, Expr a) {
        auto n = make(Kind::Call);
        n->func = f;
        n->lhs = std::move(a.root_);
        return Expr(std::move(n));
    }

    Kind kind() const { return root_->kind; }
    double value() const { return root_->value; }
    Func func() const { return root_->func; }
    NamedConstant named_constant() const { return root_->named; }
    Expr lhs() const { return Expr(root_->lhs); }
    Expr rhs() const { return Expr(root_->rhs); }

    std::size_t arity() const {
        switch (kind()) {
            case Kind::Constant:
            case Kind::Named:
            case Kind::Variable: return 0;
            case Kind::Negate:
            case Kind::Call: return 1;
            default: return 2;
        }
    }

    /// True when the tree never references x.
    bool is_constant() const { return !mentions_variable(*root_); }

    /// Canonical fully parenthesized text; parses back to the same tree.
    std::string str() const { return print(*root_); }

    double evaluate(double x) const { return eval(*root_, x); }
    double operator()(double x) const { return eval(*root_, x); }

    friend bool operator==(const Expr& a, const Expr& b) { return same(a.root_.get(), b.root_.get()); }

private:
    struct Node {
        Kind kind = Kind::Constant;
        double value = 0.0;
        Func func = Func::Sin;
        NamedConstant named = NamedConstant::Pi;
        std::shared_ptr<const Node> lhs, rhs;
    };

    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    static std::shared_ptr<Node> make(Kind k, double v = 0.0) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->value = v;
        return n;
    }

    static bool mentions_variable(const Node& n) {
        if (n.kind == Kind::Variable) return true;
        if (n.lhs && mentions_variable(*n.lhs)) return true;
        return n.rhs && mentions_variable(*n.rhs);
    }

    static bool same(const Node* a, const Node* b) {
        if (a == b) return true;
        if (!a || !b || a->kind != b->kind) return false;
        switch (a->kind) {
            case Kind::Constant:
                if (a->value != b->value) return false;
                break;
            case Kind::Named:
                if (a->named != b->named) return false;
                break;
            case Kind::Call:
                if (a->func != b->func) return false;
                break;
            default: break;
        }
        return same(a->lhs.get(), b->lhs.get()) && same(a->rhs.get(), b->rhs.get());
    }

    static const char* symbol(Kind k) {
        switch (k) {
            case Kind::Add: return "+";
            case Kind::Sub: return "-";
            case Kind::Mul: return "*";
            case Kind::Div: return "/";
            case Kind::Pow: return "^";
            default: return "?";
        }
    }

    static std::string print(const Node& n) {
        switch (n.kind) {
            case Kind::Constant:
                return n.value < 0 ? "(-" + format_real(-n.value) + ")" : format_real(n.value);
            case Kind::Named: return n.named == NamedConstant::Pi ? "pi" : "e";
            case Kind::Variable: return "x";
            case Kind::Negate: return "(-" + print(*n.lhs) + ")";
            case Kind::Call: return std::string(to_string(n.func)) + "(" + print(*n.lhs) + ")";
            default:
                return "(" + print(*n.lhs) + " " + symbol(n.kind) + " " + print(*n.rhs) + ")";
        }
    }

    static double checked(double r, double x, const Node& n) {
        if (!std::isfinite(r)) throw EvalError(EvalErrorKind::NonFinite, x, print(n));
        return r;
    }

    [[noreturn]] static void domain(double x, const Node& n) {
        throw EvalError(EvalErrorKind::Domain, x, print(n));
    }

    static double eval(const Node& n, double x) {
        switch (n.kind) {
            case Kind::Constant:
            case Kind::Named: return n.value;
            case Kind::Variable: return checked(x, x, n);
            case Kind::Negate: return -eval(*n.lhs, x);
            case Kind::Add: return checked(eval(*n.lhs, x) + eval(*n.rhs, x), x, n);
            case Kind::Sub: return checked(eval(*n.lhs, x) - eval(*n.rhs, x), x, n);
            case Kind::Mul: return checked(eval(*n.lhs, x) * eval(*n.rhs, x), x, n);
            case Kind::Div: {
                double num = eval(*n.lhs, x);
                double den = eval(*n.rhs, x);
                if (den == 0.0) domain(x, n);
                return checked(num / den, x, n);
            }
            case Kind::Pow: {
                double base = eval(*n.lhs, x);
                double ex = eval(*n.rhs, x);
                if (base < 0.0 && std::trunc(ex) != ex) domain(x, n);
                if (base == 0.0 && ex < 0.0) domain(x, n);
                return checked(std::pow(base, ex), x, n);
            }
            case Kind::Call: return checked(apply(n, eval(*n.lhs, x), x), x, n);
        }
        domain(x, n);
    }

    static double apply(const Node& n, double a, double x) {
        switch (n.func) {
            case Func::Sin: return std::sin(a);
            case Func::Cos: return std::cos(a);
            case Func::Tan: {
                if (std::cos(a) == 0.0) domain(x, n);
                return std::tan(a);
            }
            case Func::Sec: {
                double c = std::cos(a);
                if (c == 0.0) domain(x, n);
                return 1.0 / c;
            }
            case Func::Exp: return std::exp(a);
            case Func::Ln:
                if (a <= 0.0) domain(x, n);
                return std::log(a);
            case Func::Sqrt:
                if (a < 0.0) domain(x, n);
                return std::sqrt(a);
            case Func::Abs: return std::fabs(a);
        }
        domain(x, n);
    }

    std::shared_ptr<const Node> root_;
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr run() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expression", "empty input");
        Expr e = expression();
        skip_ws();
        if (pos_ < text_.size()) fail("operator or end of input", unexpected());
        return e;
    }

private:
    using Kind = Expr::Kind;

    Expr expression() {
        Expr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = Expr::binary(Kind::Add, std::move(lhs), term());
            else if (accept('-'))
                lhs = Expr::binary(Kind::Sub, std::move(lhs), term());
            else
                return lhs;
        }
    }

    Expr term() {
        Expr lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = Expr::binary(Kind::Mul, std::move(lhs), unary());
            else if (accept('/'))
                lhs = Expr::binary(Kind::Div, std::move(lhs), unary());
            else
                return lhs;
        }
    }

    Expr unary() {
        if (accept('-')) return Expr::negate(unary());
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (accept('^')) return Expr::binary(Kind::Pow, std::move(base), exponent());
        return base;
    }

    Expr exponent() {
        if (accept('-')) return Expr::negate(exponent());
        return power();
    }

    Expr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("number, x, constant, function or '('", "unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = expression();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("number, x, constant, function or '('", unexpected());
    }

    Expr number() {
        std::size_t start = pos_;
        auto digits = [&] {
            std::size_t d = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, ++d;
            return d;
        };
        std::size_t mantissa = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) {
            pos_ = start;
            fail("digit", "malformed number");
        }
        // An exponent marker only counts when digits follow; otherwise "2e"
        // leaves "e" for the caller to reject as implicit multiplication.
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                pos_ = look;
                digits();
            }
        }
        std::string_view lexeme = text_.substr(start, pos_ - start);
        std::string owned(lexeme);
        double v = 0.0;
        auto res = std::from_chars(owned.data(), owned.data() + owned.size(), v);
        if (res.ec != std::errc{} || res.ptr != owned.data() + owned.size() || !std::isfinite(v)) {
            pos_ = start;
            fail("finite number", "numeric literal '" + owned + "' out of range");
        }
        return Expr::constant(v);
    }

    Expr identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") return Expr::variable();
        if (name == "pi") return Expr::named(NamedConstant::Pi);
        if (name == "e") return Expr::named(NamedConstant::E);
        if (auto f = function_from_name(name)) {
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != '(')
                fail("'(' after function name", "function '" + std::string(name) + "' needs parentheses");
            ++pos_;
            Expr arg = expression();
            expect(')');
            return Expr::call(*f, std::move(arg));
        }
        pos_ = start;
        fail("x, pi, e or a function name", "unknown identifier '" + std::string(name) + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("'") + c + "'", unexpected());
    }

    std::string unexpected() const {
        if (pos_ >= text_.size()) return "unexpected end of input";
        return std::string("unexpected '") + text_[pos_] + "'";
    }

    [[noreturn]] void fail(const std::string& expected, const std::string& detail) const {
        throw ParseError(pos_ + 1, expected, detail);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(std::string_view text) { return detail::Parser(text).run(); }

inline double evaluate(const Expr& f, double x) { return f.evaluate(x); }

/// Parses an expression that must not mention x and returns its value, so
/// numeric inputs such as "pi/2" or "1e-3" share one syntax.
inline double parse_constant(std::string_view text) {
    Expr e = parse(text);
    if (!e.is_constant()) throw ParseError(1, "constant expression", "'x' is not allowed here");
    return e.evaluate(0.0);
}

}  // namespace statcalc
