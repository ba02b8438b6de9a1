#pragma once

// Small expression language used by the curve DSL: +,-,*,/,^, sin, cos,
// tan, sqrt, exp, log, the variable t and the constants pi and e.
// Expressions are evaluated directly on Jets, so every derivative of the
// parsed formula is exact.

#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "osculant/jet.hpp"

namespace osc {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t column)
        : std::runtime_error(msg + " at column " + std::to_string(column)),
          column(column) {}
    std::size_t column;  // 1-based
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
  public:
    enum class Kind { Const, Var, Neg, Sin, Cos, Tan, Sqrt, Exp, Log, Add, Sub, Mul, Div, Pow };

    static ExprPtr constant(double v) { return make(Kind::Const, v); }
    static ExprPtr variable() { return make(Kind::Var, 0.0); }
    static ExprPtr unary(Kind k, ExprPtr x) {
        auto e = make(k, 0.0);
        e->lhs_ = std::move(x);
        return e;
    }
    static ExprPtr binary(Kind k, ExprPtr x, ExprPtr y) {
        auto e = make(k, 0.0);
        e->lhs_ = std::move(x);
        e->rhs_ = std::move(y);
        return e;
    }

    Jet eval(const Jet& t) const {
        switch (kind_) {
            case Kind::Const: return Jet::constant(value_, t.order());
            case Kind::Var: return t;
            case Kind::Neg: return -lhs_->eval(t);
            case Kind::Sin: return sin(lhs_->eval(t));
            case Kind::Cos: return cos(lhs_->eval(t));
            case Kind::Tan: return tan(lhs_->eval(t));
            case Kind::Sqrt: return sqrt(lhs_->eval(t));
            case Kind::Exp: return exp(lhs_->eval(t));
            case Kind::Log: return log(lhs_->eval(t));
            case Kind::Add: return lhs_->eval(t) + rhs_->eval(t);
            case Kind::Sub: return lhs_->eval(t) - rhs_->eval(t);
            case Kind::Mul: return lhs_->eval(t) * rhs_->eval(t);
            case Kind::Div: return lhs_->eval(t) / rhs_->eval(t);
            case Kind::Pow: {
                Jet base = lhs_->eval(t);
                if (rhs_->isConstant()) return pow(base, rhs_->constantValue());
                return exp(rhs_->eval(t) * log(base));
            }
        }
        throw std::logic_error("unreachable expression kind");
    }

    double eval(double t) const { return eval(Jet::constant(t, 0)).value(); }

    bool isConstant() const {
        switch (kind_) {
            case Kind::Const: return true;
            case Kind::Var: return false;
            case Kind::Neg: case Kind::Sin: case Kind::Cos: case Kind::Tan:
            case Kind::Sqrt: case Kind::Exp: case Kind::Log:
                return lhs_->isConstant();
            default: return lhs_->isConstant() && rhs_->isConstant();
        }
    }
    double constantValue() const { return eval(0.0); }

  private:
    static std::shared_ptr<Expr> make(Kind k, double v) {
        auto e = std::make_shared<Expr>();
        e->kind_ = k;
        e->value_ = v;
        return e;
    }

    Kind kind_ = Kind::Const;
    double value_ = 0.0;
    ExprPtr lhs_, rhs_;

    friend class ExprParser;

  public:
    Expr() = default;
};

/// Recursive-descent parser with the usual precedence; ^ is right
/// associative and binds tighter than unary minus on its left operand.
class ExprParser {
  public:
    static ExprPtr parse(const std::string& src) {
        ExprParser p(src);
        ExprPtr e = p.parseSum();
        p.skipSpace();
        if (p.pos_ != src.size())
            throw ParseError("unexpected trailing input", p.pos_ + 1);
        return e;
    }

  private:
    explicit ExprParser(const std::string& src) : src_(src) {}

    void skipSpace() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skipSpace();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skipSpace();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    ExprPtr parseSum() {
        ExprPtr e = parseProduct();
        for (;;) {
            if (eat('+')) e = Expr::binary(Expr::Kind::Add, e, parseProduct());
            else if (eat('-')) e = Expr::binary(Expr::Kind::Sub, e, parseProduct());
            else return e;
        }
    }
    ExprPtr parseProduct() {
        ExprPtr e = parseUnary();
        for (;;) {
            if (eat('*')) e = Expr::binary(Expr::Kind::Mul, e, parseUnary());
            else if (eat('/')) e = Expr::binary(Expr::Kind::Div, e, parseUnary());
            else return e;
        }
    }
    ExprPtr parseUnary() {
        if (eat('-')) return Expr::unary(Expr::Kind::Neg, parseUnary());
        return parsePower();
    }
    ExprPtr parsePower() {
        ExprPtr e = parseAtom();
        if (eat('^')) {
            // right associative; -x^2 parses as -(x^2), x^-2 is allowed
            ExprPtr expo = eat('-') ? Expr::unary(Expr::Kind::Neg, parsePower()) : parsePower();
            return Expr::binary(Expr::Kind::Pow, e, expo);
        }
        return e;
    }
    ExprPtr parseAtom() {
        skipSpace();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_ + 1);
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = parseSum();
            if (!eat(')')) throw ParseError("expected ')'", pos_ + 1);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parseNumber();
        if (std::isalpha(static_cast<unsigned char>(c))) return parseIdent();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_ + 1);
    }
    ExprPtr parseNumber() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
            ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // 'e' was the Euler constant following a number: reject below
            }
        }
        try {
            std::size_t used = 0;
            double v = std::stod(src_.substr(start, pos_ - start), &used);
            if (used != pos_ - start) throw std::invalid_argument("partial");
            return Expr::constant(v);
        } catch (const std::exception&) {
            throw ParseError("malformed number", start + 1);
        }
    }
    ExprPtr parseIdent() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::string name = src_.substr(start, pos_ - start);
        if (name == "t") return Expr::variable();
        if (name == "pi") return Expr::constant(M_PI);
        if (name == "e") return Expr::constant(M_E);
        static const std::pair<const char*, Expr::Kind> fns[] = {
            {"sin", Expr::Kind::Sin},   {"cos", Expr::Kind::Cos}, {"tan", Expr::Kind::Tan},
            {"sqrt", Expr::Kind::Sqrt}, {"exp", Expr::Kind::Exp}, {"log", Expr::Kind::Log}};
        for (auto& [fname, kind] : fns) {
            if (name == fname) {
                if (!eat('(')) throw ParseError("expected '(' after function name", pos_ + 1);
                ExprPtr arg = parseSum();
                if (!eat(')')) throw ParseError("expected ')'", pos_ + 1);
                return Expr::unary(kind, arg);
            }
        }
        throw ParseError("unknown identifier '" + name + "'", start + 1);
    }

    const std::string& src_;
    std::size_t pos_ = 0;
};

}  // namespace osc
