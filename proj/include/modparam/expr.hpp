#pragma once

#include "modparam/rational.hpp"

#include <functional>
#include <memory>
#include <string>

namespace modparam {

// Rational expression in the coordinate functions X and Y with rational coefficients.
class Expr {
public:
    enum class Op { Const, X, Y, Add, Sub, Mul, Div, Neg, Pow };

    static Expr constant(const Rational& c);
    static Expr var_x();
    static Expr var_y();
    // Grammar: sums and products of X, Y, rationals and parentheses; '^' takes an integer exponent.
    static Expr parse(const std::string& text);

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr operator-() const;
    Expr pow(long e) const;

    // Replace X and Y by the given expressions.
    Expr substitute(const Expr& x, const Expr& y) const;
    std::string to_string() const;

    Op op() const { return node_->op; }

    // Generic evaluation; `lift` turns a rational constant into a value of type T.
    template <class T>
    T eval(const T& x, const T& y, const std::function<T(const Rational&)>& lift) const
    {
        return eval_node<T>(*node_, x, y, lift);
    }

private:
    struct Node {
        Op op;
        Rational value;
        long exponent = 0;
        std::shared_ptr<const Node> a, b;
    };
    std::shared_ptr<const Node> node_;

    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Expr make(Op op, const Expr* a, const Expr* b, Rational v = 0, long e = 0);

    template <class T>
    static T eval_node(const Node& n, const T& x, const T& y, const std::function<T(const Rational&)>& lift)
    {
        switch (n.op) {
        case Op::Const: return lift(n.value);
        case Op::X: return x;
        case Op::Y: return y;
        case Op::Add: return eval_node<T>(*n.a, x, y, lift) + eval_node<T>(*n.b, x, y, lift);
        case Op::Sub: return eval_node<T>(*n.a, x, y, lift) - eval_node<T>(*n.b, x, y, lift);
        case Op::Mul: return eval_node<T>(*n.a, x, y, lift) * eval_node<T>(*n.b, x, y, lift);
        case Op::Div: return eval_node<T>(*n.a, x, y, lift) / eval_node<T>(*n.b, x, y, lift);
        case Op::Neg: return lift(Rational(0)) - eval_node<T>(*n.a, x, y, lift);
        case Op::Pow: {
            T base = eval_node<T>(*n.a, x, y, lift);
            long e = n.exponent;
            bool inv = e < 0;
            if (inv)
                e = -e;
            T r = lift(Rational(1));
            while (e > 0) {
                if (e & 1)
                    r = r * base;
                e >>= 1;
                if (e)
                    base = base * base;
            }
            return inv ? lift(Rational(1)) / r : r;
        }
        }
        return lift(Rational(0));
    }

    static std::string node_string(const Node& n, int prec);
    static std::shared_ptr<const Node> subst(const std::shared_ptr<const Node>& n, const Expr& x, const Expr& y);
};

}
