#include "modparam/rational.hpp"

#include "modparam/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace modparam {

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x)
{
    if (x.get_den() == 1)
        return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

namespace {

bool parse_int(const std::string& s, Integer& out)
{
    if (s.empty())
        return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            return false;
    out.set_str(s[0] == '+' ? s.substr(1) : s, 10);
    return true;
}

}

Rational parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    Integer num, den = 1;
    bool ok = parse_int(s.substr(0, slash), num);
    if (ok && slash != std::string::npos)
        ok = parse_int(s.substr(slash + 1), den) && den != 0;
    if (!ok)
        fail(Errc::ParseError, "not a rational number: '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational frac(const Integer& a, const Integer& b)
{
    require(b != 0, Errc::InvalidArgument, "zero denominator");
    Rational r(a, b);
    r.canonicalize();
    return r;
}

Rational pow(const Rational& x, long e)
{
    if (e < 0) {
        require(x != 0, Errc::InvalidArgument, "zero to a negative power");
        Rational inv = 1 / x;
        return pow(inv, -e);
    }
    Rational r(ipow(x.get_num(), e), ipow(x.get_den(), e));
    return r;
}

Integer ipow(const Integer& x, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
    return r;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer mod_floor(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

long gcd_long(long a, long b)
{
    a = std::labs(a);
    b = std::labs(b);
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long lcm_long(long a, long b)
{
    if (a == 0 || b == 0)
        return 0;
    return std::labs(a / gcd_long(a, b) * b);
}

long mod_long(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

long ext_gcd(long a, long b, long& x, long& y)
{
    long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        long q = a / b;
        long t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

long inverse_mod(long a, long m)
{
    long x, y;
    long g = ext_gcd(mod_long(a, m), m, x, y);
    require(g == 1, Errc::InvalidArgument, "not invertible modulo " + std::to_string(m));
    return mod_long(x, m);
}

std::vector<long> prime_factors(long n)
{
    std::vector<long> out;
    n = std::labs(n);
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

bool is_prime(long n)
{
    if (n < 2)
        return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return false;
    return true;
}

std::vector<long> primes_up_to(long n)
{
    std::vector<char> sieve(n + 1, 1);
    std::vector<long> out;
    for (long i = 2; i <= n; ++i) {
        if (!sieve[i])
            continue;
        out.push_back(i);
        for (long j = i * i; j <= n; j += i)
            sieve[j] = 0;
    }
    return out;
}

std::vector<long> divisors(long n)
{
    std::vector<long> out;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0)
            out.push_back(d);
    return out;
}

void poly_trim(QPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

QPoly poly_mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    poly_trim(r);
    return r;
}

QPoly poly_add(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i)
        r[i] += b[i];
    poly_trim(r);
    return r;
}

QPoly poly_sub(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i)
        r[i] -= b[i];
    poly_trim(r);
    return r;
}

void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r)
{
    QPoly bb = b;
    poly_trim(bb);
    require(!bb.empty(), Errc::InvalidArgument, "polynomial division by zero");
    r = a;
    poly_trim(r);
    q.clear();
    if (r.size() < bb.size())
        return;
    q.assign(r.size() - bb.size() + 1, Rational(0));
    const Rational lead = bb.back();
    const long db = static_cast<long>(bb.size()) - 1;
    for (long k = static_cast<long>(r.size()) - 1; k >= db; --k) {
        Rational c = r[k] / lead;
        size_t shift = static_cast<size_t>(k - db);
        q[shift] = c;
        if (c != 0)
            for (size_t i = 0; i < bb.size(); ++i)
                r[shift + i] -= c * bb[i];
    }
    poly_trim(q);
    poly_trim(r);
}

QPoly poly_gcd(const QPoly& a, const QPoly& b)
{
    QPoly x = a, y = b;
    poly_trim(x);
    poly_trim(y);
    while (!y.empty()) {
        QPoly q, r;
        poly_divmod(x, y, q, r);
        x = std::move(y);
        y = std::move(r);
    }
    if (!x.empty()) {
        Rational lead = x.back();
        for (auto& c : x)
            c /= lead;
    }
    return x;
}

Rational poly_eval(const QPoly& p, const Rational& x)
{
    Rational r = 0;
    for (size_t i = p.size(); i-- > 0;)
        r = r * x + p[i];
    return r;
}

std::vector<Integer> poly_primitive(const QPoly& p)
{
    QPoly q = p;
    poly_trim(q);
    if (q.empty())
        return {};
    Integer l = 1;
    for (auto& c : q)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> out;
    Integer g = 0;
    for (auto& c : q) {
        Rational t = c * l;
        out.push_back(t.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_num_mpz_t());
    }
    if (out.back() < 0)
        g = -g;
    for (auto& c : out)
        c /= g;
    return out;
}

std::string poly_to_string(const QPoly& p, const std::string& var)
{
    std::string s;
    for (size_t i = p.size(); i-- > 0;) {
        if (p[i] == 0)
            continue;
        Rational c = p[i];
        bool neg = c < 0;
        if (neg)
            c = -c;
        if (!s.empty())
            s += neg ? " - " : " + ";
        else if (neg)
            s += "-";
        bool unit = (c == 1 && i > 0);
        if (!unit)
            s += to_string(c);
        if (i > 0) {
            if (!unit)
                s += "*";
            s += var;
            if (i > 1)
                s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

}
