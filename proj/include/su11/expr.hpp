#pragma once

// Small expression grammar for user-supplied Theta schedules:
//   expr   := term  { ('+'|'-') term }
//   term   := factor { ('*'|'/') factor }
//   factor := '-' factor | atom [ '^' factor ]   (right-assoc; unary binds looser than ^)
//   atom   := number | 't' | 'pi' | func '(' expr ')' | '(' expr ')'
// Derivatives are exact symbolic ones, never numerical.

#include <cctype>
#include <cmath>
#include <memory>
#include <string>

#include "su11/errors.hpp"

namespace su11 {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Fun };

    Kind kind;
    double value = 0.0;
    std::string fun;
    ExprPtr lhs, rhs;

    static ExprPtr constant(double v) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Const;
        e->value = v;
        return e;
    }
    static ExprPtr var() {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Var;
        return e;
    }
    static ExprPtr node(Kind k, ExprPtr l, ExprPtr r = nullptr) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->lhs = std::move(l);
        e->rhs = std::move(r);
        return e;
    }
    static ExprPtr call(std::string name, ExprPtr arg) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Fun;
        e->fun = std::move(name);
        e->lhs = std::move(arg);
        return e;
    }

    double eval(double t) const {
        switch (kind) {
            case Kind::Const: return value;
            case Kind::Var: return t;
            case Kind::Add: return lhs->eval(t) + rhs->eval(t);
            case Kind::Sub: return lhs->eval(t) - rhs->eval(t);
            case Kind::Mul: return lhs->eval(t) * rhs->eval(t);
            case Kind::Div: return lhs->eval(t) / rhs->eval(t);
            case Kind::Pow: return std::pow(lhs->eval(t), rhs->eval(t));
            case Kind::Neg: return -lhs->eval(t);
            case Kind::Fun: {
                const double x = lhs->eval(t);
                if (fun == "sin") return std::sin(x);
                if (fun == "cos") return std::cos(x);
                if (fun == "tan") return std::tan(x);
                if (fun == "arctan" || fun == "atan") return std::atan(x);
                if (fun == "sinh") return std::sinh(x);
                if (fun == "cosh") return std::cosh(x);
                if (fun == "tanh") return std::tanh(x);
                if (fun == "arcsinh" || fun == "asinh") return std::asinh(x);
                if (fun == "exp") return std::exp(x);
                if (fun == "sqrt") return std::sqrt(x);
                if (fun == "log") return std::log(x);
                throw InputError("unknown function: " + fun);
            }
        }
        throw InputError("malformed expression tree");
    }

    ExprPtr diff() const;
};

namespace detail {

inline ExprPtr mul(ExprPtr a, ExprPtr b) {
    if (a->kind == Expr::Kind::Const && a->value == 0.0) return Expr::constant(0.0);
    if (b->kind == Expr::Kind::Const && b->value == 0.0) return Expr::constant(0.0);
    if (a->kind == Expr::Kind::Const && a->value == 1.0) return b;
    if (b->kind == Expr::Kind::Const && b->value == 1.0) return a;
    return Expr::node(Expr::Kind::Mul, std::move(a), std::move(b));
}

inline ExprPtr add(ExprPtr a, ExprPtr b) {
    if (a->kind == Expr::Kind::Const && a->value == 0.0) return b;
    if (b->kind == Expr::Kind::Const && b->value == 0.0) return a;
    return Expr::node(Expr::Kind::Add, std::move(a), std::move(b));
}

} // namespace detail

inline ExprPtr Expr::diff() const {
    using K = Kind;
    auto self = [this] {
        auto e = std::make_shared<Expr>(*this);
        return ExprPtr(e);
    };
    switch (kind) {
        case K::Const: return constant(0.0);
        case K::Var: return constant(1.0);
        case K::Add: return detail::add(lhs->diff(), rhs->diff());
        case K::Sub: return node(K::Sub, lhs->diff(), rhs->diff());
        case K::Mul:
            return detail::add(detail::mul(lhs->diff(), rhs), detail::mul(lhs, rhs->diff()));
        case K::Div:
            // (u/v)' = u'/v - u v'/v^2
            return node(K::Sub, node(K::Div, lhs->diff(), rhs),
                        node(K::Div, detail::mul(lhs, rhs->diff()),
                             detail::mul(rhs, rhs)));
        case K::Pow: {
            // u^v * (v' log u + v u'/u)
            ExprPtr u = lhs, v = rhs;
            if (v->kind == K::Const) {
                // v * u^(v-1) * u'
                return detail::mul(constant(v->value),
                                   detail::mul(node(K::Pow, u, constant(v->value - 1.0)),
                                               u->diff()));
            }
            ExprPtr inner = detail::add(detail::mul(v->diff(), call("log", u)),
                                        node(K::Div, detail::mul(v, u->diff()), u));
            return detail::mul(self(), inner);
        }
        case K::Neg: return node(K::Neg, lhs->diff());
        case K::Fun: {
            ExprPtr inner = lhs->diff();
            ExprPtr outer;
            if (fun == "sin") outer = call("cos", lhs);
            else if (fun == "cos") outer = node(K::Neg, call("sin", lhs));
            else if (fun == "tan")
                outer = node(K::Div, constant(1.0),
                             node(K::Pow, call("cos", lhs), constant(2.0)));
            else if (fun == "arctan" || fun == "atan")
                outer = node(K::Div, constant(1.0),
                             detail::add(constant(1.0), detail::mul(lhs, lhs)));
            else if (fun == "sinh") outer = call("cosh", lhs);
            else if (fun == "cosh") outer = call("sinh", lhs);
            else if (fun == "tanh")
                outer = node(K::Div, constant(1.0),
                             node(K::Pow, call("cosh", lhs), constant(2.0)));
            else if (fun == "arcsinh" || fun == "asinh")
                outer = node(K::Div, constant(1.0),
                             call("sqrt", detail::add(constant(1.0), detail::mul(lhs, lhs))));
            else if (fun == "exp") outer = call("exp", lhs);
            else if (fun == "sqrt")
                outer = node(K::Div, constant(0.5), call("sqrt", lhs));
            else if (fun == "log") outer = node(K::Div, constant(1.0), lhs);
            else throw InputError("unknown function: " + fun);
            return detail::mul(std::move(outer), std::move(inner));
        }
    }
    throw InputError("malformed expression tree");
}

namespace detail {

class Parser {
public:
    explicit Parser(std::string src) : src_(std::move(src)) {}

    ExprPtr parse() {
        ExprPtr e = expression();
        skip_ws();
        if (pos_ != src_.size())
            throw InputError("trailing characters in expression at position " +
                             std::to_string(pos_));
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr expression() {
        ExprPtr e = term();
        for (;;) {
            if (eat('+')) e = Expr::node(Expr::Kind::Add, e, term());
            else if (eat('-')) e = Expr::node(Expr::Kind::Sub, e, term());
            else return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (eat('*')) e = Expr::node(Expr::Kind::Mul, e, factor());
            else if (eat('/')) e = Expr::node(Expr::Kind::Div, e, factor());
            else return e;
        }
    }

    // unary minus binds looser than '^', so -t^2 parses as -(t^2);
    // '^' is right-associative and its exponent may itself be signed (2^-3)
    ExprPtr factor() {
        if (eat('-')) return Expr::node(Expr::Kind::Neg, factor());
        ExprPtr base = atom();
        if (eat('^')) return Expr::node(Expr::Kind::Pow, base, factor());
        return base;
    }

    ExprPtr atom() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            ExprPtr e = expression();
            if (!eat(')')) throw InputError("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw InputError(std::string("unexpected character '") + c + "' in expression");
    }

    ExprPtr number() {
        skip_ws();
        std::size_t end = pos_;
        while (end < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[end])) || src_[end] == '.' ||
                src_[end] == 'e' || src_[end] == 'E' ||
                ((src_[end] == '+' || src_[end] == '-') && end > pos_ &&
                 (src_[end - 1] == 'e' || src_[end - 1] == 'E'))))
            ++end;
        const std::string tok = src_.substr(pos_, end - pos_);
        try {
            const double v = std::stod(tok);
            pos_ = end;
            return Expr::constant(v);
        } catch (const std::exception&) {
            throw InputError("bad numeric literal: " + tok);
        }
    }

    ExprPtr identifier() {
        skip_ws();
        std::size_t end = pos_;
        while (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) ||
                                     src_[end] == '_'))
            ++end;
        const std::string name = src_.substr(pos_, end - pos_);
        pos_ = end;
        if (name == "t") return Expr::var();
        if (name == "pi") return Expr::constant(M_PI);
        static const char* known[] = {"sin",  "cos",  "tan",     "arctan", "atan", "sinh",
                                      "cosh", "tanh", "arcsinh", "asinh",  "exp",  "sqrt",
                                      "log"};
        bool ok = false;
        for (const char* k : known)
            if (name == k) ok = true;
        if (!ok) throw InputError("unknown function: " + name);
        if (!eat('(')) throw InputError("expected '(' after function '" + name + "'");
        ExprPtr arg = expression();
        if (!eat(')')) throw InputError("expected ')' closing call to '" + name + "'");
        return Expr::call(name, arg);
    }

    std::string src_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline ExprPtr parse_expression(const std::string& src) {
    return detail::Parser(src).parse();
}

} // namespace su11
