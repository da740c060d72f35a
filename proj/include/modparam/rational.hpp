#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace modparam {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

// Accepts "p", "-p", "p/q"; throws ParseError otherwise.
Rational parse_rational(const std::string& s);

// a / b in lowest terms.
Rational frac(const Integer& a, const Integer& b);
Rational pow(const Rational& x, long e);
Integer ipow(const Integer& x, unsigned long e);
bool is_integer(const Rational& x);
Integer floor_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& b);

long gcd_long(long a, long b);
long lcm_long(long a, long b);
long mod_long(long a, long m);
// Returns g and sets x, y with a x + b y = g.
long ext_gcd(long a, long b, long& x, long& y);
long inverse_mod(long a, long m);

std::vector<long> prime_factors(long n);
bool is_prime(long n);
std::vector<long> primes_up_to(long n);
std::vector<long> divisors(long n);

// Polynomials over Q in ascending-degree coefficient order.
using QPoly = std::vector<Rational>;
void poly_trim(QPoly& p);
QPoly poly_mul(const QPoly& a, const QPoly& b);
QPoly poly_add(const QPoly& a, const QPoly& b);
QPoly poly_sub(const QPoly& a, const QPoly& b);
void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly poly_gcd(const QPoly& a, const QPoly& b);
Rational poly_eval(const QPoly& p, const Rational& x);
// Scales to a primitive integer polynomial with positive leading coefficient.
std::vector<Integer> poly_primitive(const QPoly& p);
std::string poly_to_string(const QPoly& p, const std::string& var);

}
