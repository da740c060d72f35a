#include "modparam/scalar.hpp"

#include "modparam/error.hpp"

namespace modparam {

bool Scalar::is_zero() const
{
    switch (kind()) {
    case Kind::Rational: return rational() == 0;
    case Kind::Cyclotomic: return cyclotomic().is_zero();
    case Kind::Residue: return residue().is_zero();
    }
    return false;
}

bool Scalar::is_unit() const
{
    if (kind() == Kind::Residue)
        return residue().is_unit();
    return !is_zero();
}

Scalar Scalar::inverse() const
{
    switch (kind()) {
    case Kind::Rational:
        require(rational() != 0, Errc::NonUnitLeadingCoefficient, "inverse of rational zero");
        return Scalar(Rational(1) / rational());
    case Kind::Cyclotomic: return Scalar(cyclotomic().inverse());
    case Kind::Residue: return Scalar(residue().inverse());
    }
    return *this;
}

Rational Scalar::to_rational() const
{
    switch (kind()) {
    case Kind::Rational: return rational();
    case Kind::Cyclotomic: return cyclotomic().rational_value();
    case Kind::Residue: fail(Errc::InvalidArgument, "residue has no rational value");
    }
    return 0;
}

Scalar Scalar::reduce_mod(std::uint64_t m) const
{
    switch (kind()) {
    case Kind::Rational: return Scalar(Residue(m, rational()));
    case Kind::Cyclotomic: return Scalar(Residue(m, cyclotomic().rational_value()));
    case Kind::Residue:
        require(residue().modulus() % m == 0, Errc::InvalidArgument, "incompatible residue reduction");
        return Scalar(Residue(m, static_cast<std::int64_t>(residue().value() % m)));
    }
    return *this;
}

Scalar Scalar::zero_like() const
{
    switch (kind()) {
    case Kind::Rational: return Scalar(Rational(0));
    case Kind::Cyclotomic: return Scalar(Cyclotomic(cyclotomic().field()));
    case Kind::Residue: return Scalar(Residue(residue().modulus(), 0));
    }
    return *this;
}

Scalar Scalar::one_like() const
{
    switch (kind()) {
    case Kind::Rational: return Scalar(Rational(1));
    case Kind::Cyclotomic: return Scalar(Cyclotomic(cyclotomic().field(), Rational(1)));
    case Kind::Residue: return Scalar(Residue(residue().modulus(), 1));
    }
    return *this;
}

void Scalar::unify(Scalar& a, Scalar& b)
{
    if (a.kind() == b.kind()) {
        if (a.kind() == Kind::Cyclotomic && a.cyclotomic().width() != b.cyclotomic().width()) {
            long L = lcm_long(a.cyclotomic().width(), b.cyclotomic().width());
            auto K = CyclotomicField::get(L);
            a = Scalar(a.cyclotomic().lift(K));
            b = Scalar(b.cyclotomic().lift(K));
        }
        return;
    }
    auto promote = [](Scalar& lo, const Scalar& hi) {
        if (hi.kind() == Kind::Cyclotomic && lo.kind() == Kind::Rational)
            lo = Scalar(Cyclotomic(hi.cyclotomic().field(), lo.rational()));
        else if (hi.kind() == Kind::Residue && lo.kind() == Kind::Rational)
            lo = Scalar(Residue(hi.residue().modulus(), lo.rational()));
        else
            fail(Errc::InvalidArgument, "cannot mix cyclotomic and residue scalars");
    };
    if (a.kind() == Kind::Rational)
        promote(a, b);
    else if (b.kind() == Kind::Rational)
        promote(b, a);
    else
        fail(Errc::InvalidArgument, "cannot mix cyclotomic and residue scalars");
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    if (kind() == Kind::Rational && o.kind() == Kind::Rational) {
        std::get<Rational>(v_) += o.rational();
        return *this;
    }
    Scalar b = o;
    unify(*this, b);
    std::visit([&](auto& x) { x += std::get<std::decay_t<decltype(x)>>(b.v_); }, v_);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    if (kind() == Kind::Rational && o.kind() == Kind::Rational) {
        std::get<Rational>(v_) -= o.rational();
        return *this;
    }
    Scalar b = o;
    unify(*this, b);
    std::visit([&](auto& x) { x -= std::get<std::decay_t<decltype(x)>>(b.v_); }, v_);
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (kind() == Kind::Rational && o.kind() == Kind::Rational) {
        std::get<Rational>(v_) *= o.rational();
        return *this;
    }
    Scalar b = o;
    unify(*this, b);
    std::visit([&](auto& x) { x *= std::get<std::decay_t<decltype(x)>>(b.v_); }, v_);
    return *this;
}

Scalar Scalar::operator-() const
{
    return std::visit([](const auto& x) { return Scalar(-x); }, v_);
}

std::string Scalar::to_string() const
{
    switch (kind()) {
    case Kind::Rational: return modparam::to_string(rational());
    case Kind::Cyclotomic: return cyclotomic().to_string();
    case Kind::Residue: return residue().to_string();
    }
    return "";
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (a.kind() == b.kind())
        return a.v_ == b.v_;
    Scalar x = a, y = b;
    Scalar::unify(x, y);
    return x.v_ == y.v_;
}

}
