#include "modparam/residue.hpp"

#include "modparam/error.hpp"

namespace modparam {

Residue::Residue(std::uint64_t m, std::int64_t v) : m_(m)
{
    require(m >= 2, Errc::InvalidArgument, "residue modulus must be at least 2");
    std::int64_t r = v % static_cast<std::int64_t>(m);
    if (r < 0)
        r += static_cast<std::int64_t>(m);
    v_ = static_cast<std::uint64_t>(r);
}

Residue::Residue(std::uint64_t m, const Rational& r) : m_(m)
{
    require(m >= 2, Errc::InvalidArgument, "residue modulus must be at least 2");
    Integer M = static_cast<unsigned long>(m);
    Integer g;
    mpz_gcd(g.get_mpz_t(), r.get_den_mpz_t(), M.get_mpz_t());
    require(g == 1, Errc::DenominatorNotCoprime,
            "denominator of " + modparam::to_string(r) + " shares a factor with " + std::to_string(m));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), r.get_den_mpz_t(), M.get_mpz_t());
    Integer v = mod_floor(Integer(r.get_num() * inv), M);
    v_ = v.get_ui();
}

bool Residue::is_unit() const
{
    return gcd_long(static_cast<long>(v_), static_cast<long>(m_)) == 1;
}

Residue Residue::inverse() const
{
    require(is_unit(), Errc::NonUnitLeadingCoefficient,
            std::to_string(v_) + " is not a unit modulo " + std::to_string(m_));
    return Residue(m_, inverse_mod(static_cast<long>(v_), static_cast<long>(m_)));
}

void Residue::check(const Residue& o) const
{
    require(m_ == o.m_, Errc::InvalidArgument, "mixed residue moduli");
}

Residue& Residue::operator+=(const Residue& o)
{
    check(o);
    v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) + o.v_) % m_);
    return *this;
}

Residue& Residue::operator-=(const Residue& o)
{
    check(o);
    v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) + m_ - o.v_) % m_);
    return *this;
}

Residue& Residue::operator*=(const Residue& o)
{
    check(o);
    v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) * o.v_) % m_);
    return *this;
}

}
