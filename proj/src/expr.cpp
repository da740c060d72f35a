#include "modparam/expr.hpp"

#include "modparam/error.hpp"

#include <cctype>

namespace modparam {

Expr Expr::make(Op op, const Expr* a, const Expr* b, Rational v, long e)
{
    auto n = std::make_shared<Node>();
    n->op = op;
    n->value = v;
    n->exponent = e;
    if (a)
        n->a = a->node_;
    if (b)
        n->b = b->node_;
    return Expr(n);
}

Expr Expr::constant(const Rational& c) { return make(Op::Const, nullptr, nullptr, c); }
Expr Expr::var_x() { return make(Op::X, nullptr, nullptr); }
Expr Expr::var_y() { return make(Op::Y, nullptr, nullptr); }

Expr operator+(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Add, &a, &b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Sub, &a, &b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Mul, &a, &b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Div, &a, &b); }
Expr Expr::operator-() const { return make(Op::Neg, this, nullptr); }
Expr Expr::pow(long e) const { return make(Op::Pow, this, nullptr, 0, e); }

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Expr parse()
    {
        Expr e = sum();
        skip();
        if (pos_ != s_.size())
            error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void error(const std::string& what)
    {
        fail(Errc::ParseError, "expression '" + s_ + "' at position " + std::to_string(pos_) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr sum()
    {
        Expr e = product();
        while (true) {
            if (accept('+'))
                e = e + product();
            else if (accept('-'))
                e = e - product();
            else
                return e;
        }
    }

    Expr product()
    {
        Expr e = unary();
        while (true) {
            if (accept('*'))
                e = e * unary();
            else if (accept('/'))
                e = e / unary();
            else
                return e;
        }
    }

    Expr unary()
    {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }

    Expr power()
    {
        Expr base = atom();
        if (accept('^')) {
            skip();
            bool neg = accept('-');
            skip();
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                error("expected an integer exponent");
            long e = std::stol(s_.substr(start, pos_ - start));
            return base.pow(neg ? -e : e);
        }
        return base;
    }

    Expr atom()
    {
        skip();
        if (pos_ >= s_.size())
            error("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = sum();
            if (!accept(')'))
                error("expected ')'");
            return e;
        }
        if (c == 'X' || c == 'x') {
            ++pos_;
            return Expr::var_x();
        }
        if (c == 'Y' || c == 'y') {
            ++pos_;
            return Expr::var_y();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            return Expr::constant(parse_rational(s_.substr(start, pos_ - start)));
        }
        error("unexpected '" + std::string(1, c) + "'");
    }
};

}

Expr Expr::parse(const std::string& text) { return Parser(text).parse(); }

std::shared_ptr<const Expr::Node> Expr::subst(const std::shared_ptr<const Node>& n, const Expr& x, const Expr& y)
{
    switch (n->op) {
    case Op::Const: return n;
    case Op::X: return x.node_;
    case Op::Y: return y.node_;
    default: break;
    }
    auto m = std::make_shared<Node>(*n);
    if (n->a)
        m->a = subst(n->a, x, y);
    if (n->b)
        m->b = subst(n->b, x, y);
    return m;
}

Expr Expr::substitute(const Expr& x, const Expr& y) const { return Expr(subst(node_, x, y)); }

std::string Expr::node_string(const Node& n, int prec)
{
    auto wrap = [&](const std::string& s, int p) { return p < prec ? "(" + s + ")" : s; };
    switch (n.op) {
    case Op::Const: {
        std::string s = modparam::to_string(n.value);
        return (n.value < 0 || n.value.get_den() != 1) ? wrap(s, 3) : s;
    }
    case Op::X: return "X";
    case Op::Y: return "Y";
    case Op::Add: return wrap(node_string(*n.a, 1) + " + " + node_string(*n.b, 1), 1);
    case Op::Sub: return wrap(node_string(*n.a, 1) + " - " + node_string(*n.b, 2), 1);
    case Op::Mul: return wrap(node_string(*n.a, 2) + "*" + node_string(*n.b, 3), 2);
    case Op::Div: return wrap(node_string(*n.a, 2) + "/" + node_string(*n.b, 3), 2);
    case Op::Neg: return wrap("-" + node_string(*n.a, 3), 1);
    case Op::Pow: return wrap(node_string(*n.a, 4) + "^" + std::to_string(n.exponent), 3);
    }
    return "";
}

std::string Expr::to_string() const { return node_string(*node_, 0); }

}
