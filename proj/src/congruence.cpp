#include "modparam/congruence.hpp"

#include "modparam/error.hpp"
#include "modparam/gamma0.hpp"
#include "modparam/modpoly.hpp"
#include "modparam/records.hpp"

#include <map>
#include <numeric>
#include <set>

namespace modparam {

Rational congruence_constant(const PeriodLattice& L1, const PeriodLattice& L2)
{
    if (L1.g2_exact != L2.g2_exact)
        return (L1.g2_exact - L2.g2_exact) / 20;
    if (L1.g3_exact != L2.g3_exact)
        return (L1.g3_exact - L2.g3_exact) / 28;
    fail(Errc::DegenerateDifference, "g2 and g3 agree: the two parametrizations coincide");
}

namespace {

bool divisible(const Rational& c, const Integer& m)
{
    if (c == 0)
        return true;
    Integer g;
    mpz_gcd(g.get_mpz_t(), c.get_den_mpz_t(), m.get_mpz_t());
    if (g != 1)
        return false;
    return mpz_divisible_p(c.get_num_mpz_t(), m.get_mpz_t()) != 0;
}

// Smallest D with D r integral for every root r of the monic f.
Integer integrality_denominator(const QPoly& f)
{
    long k = static_cast<long>(f.size()) - 1;
    std::map<long, long> need;
    for (long j = 1; j <= k; ++j) {
        const Rational& c = f[k - j];
        if (c == 0)
            continue;
        Integer den = c.get_den();
        require(den.fits_slong_p(), Errc::InvalidArgument, "denominator too large to factor");
        for (long p : prime_factors(den.get_si())) {
            Integer dd = den;
            long v = 0;
            while (mpz_divisible_ui_p(dd.get_mpz_t(), p)) {
                dd /= p;
                ++v;
            }
            need[p] = std::max(need[p], (v + j - 1) / j);
        }
    }
    Integer D = 1;
    for (auto [p, e] : need)
        for (long i = 0; i < e; ++i)
            D *= p;
    return D;
}

// Representatives of Z^2 / (row lattice of B), B integral with nonzero determinant.
std::vector<std::array<long, 2>> quotient_reps(const long B[2][2])
{
    long det = B[0][0] * B[1][1] - B[0][1] * B[1][0];
    long d = std::labs(det);
    require(d > 0, Errc::InvalidArgument, "degenerate sublattice");
    long adj[2][2] = {{B[1][1], -B[0][1]}, {-B[1][0], B[0][0]}};
    std::set<std::pair<long, long>> seen;
    std::vector<std::array<long, 2>> out;
    for (long u0 = 0; u0 < d; ++u0)
        for (long u1 = 0; u1 < d; ++u1) {
            long k0 = mod_long(u0 * adj[0][0] + u1 * adj[1][0], d);
            long k1 = mod_long(u0 * adj[0][1] + u1 * adj[1][1], d);
            if (seen.insert({k0, k1}).second)
                out.push_back({u0, u1});
        }
    require(static_cast<long>(out.size()) == d, Errc::InvalidArgument, "quotient enumeration failed");
    return out;
}

QSeries poly_of_series(const QPoly& p, const QSeries& x, long T)
{
    QSeries acc = QSeries::zero(T);
    for (size_t i = p.size(); i-- > 0;)
        acc = acc * x + QSeries::constant(p[i], T);
    return acc.truncate(T);
}

std::string term_string(const Rational& c, const std::string& mono, bool first)
{
    std::string s;
    Rational a = abs(c);
    if (first)
        s = c < 0 ? "-" : "";
    else
        s = c < 0 ? " - " : " + ";
    if (mono.empty())
        return s + a.get_str();
    if (a != 1)
        s += a.get_str() + "*";
    return s + mono;
}

}

std::string DifferenceForm::to_string(const std::string& var) const
{
    std::string add;
    if (additive != 0)
        add = (additive < 0 ? " - " : " + ") + Rational(abs(additive)).get_str();
    bool unit_num = numerator.size() == 1;
    if (unit_num && denominator.size() == 2) {
        // C / (var - T) written as (-C) / (T - var) when C is negative
        Rational T = -denominator[0];
        if (C < 0)
            return Rational(-C).get_str() + "/(" + T.get_str() + " - " + var + ")" + add;
        return C.get_str() + "/(" + var + (T < 0 ? " + " : " - ") + Rational(abs(T)).get_str() + ")" + add;
    }
    std::string num = unit_num ? "1" : "(" + poly_to_string(numerator, var) + ")";
    return C.get_str() + "*" + num + "/(" + poly_to_string(denominator, var) + ")" + add;
}

DifferenceForm difference_rational_form(const EllipticCurve& E1, const EllipticCurve& E2, long n_max, long bits)
{
    DifferenceForm R;
    R.E1 = E1;
    R.E2 = E2;
    const long T = std::max(n_max, 16L);
    NewformCoefficients f1 = newform_coefficients(E1, T + 8);
    NewformCoefficients f2 = newform_coefficients(E2, T + 8);
    for (long n = 1; n <= f1.size(); ++n)
        require(f1[n] == f2[n], Errc::NotIsogenous, "a_" + std::to_string(n) + " differs: the curves are not isogenous");

    PeriodLattice L1 = period_lattice(E1, bits), L2 = period_lattice(E2, bits);
    R.C = congruence_constant(L1, L2);
    LatticeRelation rel = lattice_relation(L1, L2);
    require(rel.kind != LatticeRelationKind::Unrelated, Errc::NotIsogenous, "the period lattices are not commensurable");
    R.relation = rel.kind;
    R.index_in_1 = rel.index_in_1;
    R.index_in_2 = rel.index_in_2;

    auto combo = [&](const PeriodLattice& L, long a, long b) {
        return L.w1 * Real(a, bits) + L.w2 * Real(b, bits);
    };
    Complex w3a = combo(L2, rel.l3[0][0], rel.l3[0][1]);
    Complex w3b = combo(L2, rel.l3[1][0], rel.l3[1][1]);

    PeriodLattice L3;
    if (rel.kind == LatticeRelationKind::Sublattice || rel.kind == LatticeRelationKind::Equal) {
        R.E3 = E1;
        R.e3_source = "E1";
        L3 = L1;
    } else if (rel.kind == LatticeRelationKind::Superlattice) {
        R.E3 = E2;
        R.e3_source = "E2";
        L3 = L2;
    } else {
        L3 = lattice_from_basis(w3a, w3b, bits);
        Real tol = ldexp(Real(1L, bits), -(bits / 3));
        Rational g2 = rational_reconstruct(L3.g2.re, Integer(1000000000L), tol);
        Rational g3 = rational_reconstruct(L3.g3.re, Integer(1000000000L), tol);
        Rational c4 = 12 * g2, c6 = 216 * g3;
        bool found = false;
        for (auto& rec : bundled_curves()) {
            EllipticCurve E = rec.curve();
            if (E.c4 == c4 && E.c6 == c6) {
                R.E3 = E;
                R.e3_source = rec.label;
                found = true;
                break;
            }
        }
        if (!found) {
            R.E3 = derive_invariants({Rational(0), Rational(0), Rational(0), -g2 / 4, -g3 / 4}, E1.conductor, "E3");
            R.e3_source = "short model";
        }
        L3.g2_exact = R.E3.g2();
        L3.g3_exact = R.E3.g3();
    }

    // Poles of wp1 - wp2 modulo L3: nonzero points of L1/L3 and L2/L3.
    std::vector<Complex> poles;
    {
        long B2[2][2] = {{rel.l3[0][0], rel.l3[0][1]}, {rel.l3[1][0], rel.l3[1][1]}};
        for (auto& u : quotient_reps(B2))
            if (u[0] || u[1])
                poles.push_back(combo(L2, u[0], u[1]));
        // L3 in L1 coordinates: B2 M^-1
        Rational det = rel.m[0][0] * rel.m[1][1] - rel.m[0][1] * rel.m[1][0];
        Rational inv[2][2] = {{rel.m[1][1] / det, -rel.m[0][1] / det}, {-rel.m[1][0] / det, rel.m[0][0] / det}};
        long B1[2][2];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Rational v = Rational(B2[i][0]) * inv[0][j] + Rational(B2[i][1]) * inv[1][j];
                require(is_integer(v), Errc::NotIsogenous, "intersection lattice is not contained in L1");
                B1[i][j] = v.get_num().get_si();
            }
        for (auto& u : quotient_reps(B1))
            if (u[0] || u[1])
                poles.push_back(combo(L1, u[0], u[1]));
    }
    std::vector<Complex> Q{Complex::one(bits)};
    Complex shift(Real(R.E3.b2 / 12, bits));
    for (auto& t : poles) {
        Complex x = wp(L3, t) - shift;
        std::vector<Complex> next(Q.size() + 1, Complex(bits));
        for (size_t i = 0; i < Q.size(); ++i) {
            next[i + 1] += Q[i];
            next[i] -= Q[i] * x;
        }
        Q = std::move(next);
    }
    Real tol = ldexp(Real(1L, bits), -(bits / 3));
    for (auto& c : Q) {
        Real scale = max(Real(1L, bits), abs(c.re));
        require(abs(c.im) < tol * scale, Errc::ReconstructionFailed, "pole polynomial is not real");
        Rational r = rational_reconstruct(c.re, Integer(1000000000L), tol * scale);
        R.denominator.push_back(r);
    }
    poly_trim(R.denominator);

    // Exact check: the pole x-coordinates are torsion of E3.
    long n = std::lcm(std::max(1L, R.index_in_1), std::max(1L, R.index_in_2));
    if (R.denominator.size() > 1) {
        QPoly sf = R.denominator;
        QPoly g = poly_gcd(sf, poly_derivative(sf));
        QPoly q, r;
        if (g.size() > 1) {
            poly_divmod(sf, g, q, r);
            sf = q;
        }
        poly_divmod(torsion_polynomial(R.E3, n), poly_monic(sf), q, r);
        poly_trim(r);
        require(r.empty() || (r.size() == 1 && r[0] == 0), Errc::ReconstructionFailed,
                "pole x-coordinates do not divide the " + std::to_string(n) + "-division polynomial");
    }
    for (auto& c : R.denominator)
        if (!is_integer(c))
            R.torsion_integral = false;

    // Numerator by exact linear algebra on q-expansions.
    QSeries X1 = expand_infinity(E1, f1, T).X;
    QSeries X2 = expand_infinity(E2, f2, T).X;
    QSeries X3 = R.e3_source == "E1" ? X1 : R.e3_source == "E2" ? X2 : expand_infinity(R.E3, f1, T).X;
    R.additive = (E2.b2 - E1.b2) / 12;
    QSeries g = X1 - X2 - QSeries::constant(R.additive, T);
    long dq = static_cast<long>(R.denominator.size()) - 1;
    QSeries lhs = (g * poly_of_series(R.denominator, X3, T)).truncate(T);
    std::vector<QSeries> pw{QSeries::constant(Rational(1), T)};
    for (long k = 1; k <= dq; ++k)
        pw.push_back((pw.back() * X3).truncate(T));
    long top = std::min(lhs.prec(), pw.back().prec());
    long lo = -2 * dq;
    require(top - lo > dq + 4, Errc::InsufficientPrecision, "raise n_max for the difference form");
    QMatrix A;
    std::vector<Rational> b;
    for (long m = lo; m < top; ++m) {
        std::vector<Rational> row;
        for (long k = 0; k <= dq; ++k)
            row.push_back(pw[k].coeff(m));
        A.push_back(row);
        b.push_back(lhs.coeff(m));
    }
    LinearSolution sol = solve_exact(A, b);
    require(sol.consistent && sol.unique, Errc::ReconstructionFailed,
            "X1 - X2 is not a rational function of X3 with the expected poles");
    QPoly P = sol.x;
    poly_trim(P);
    require(!P.empty(), Errc::DegenerateDifference, "X1 - X2 is constant");
    require(P.back() == R.C, Errc::ReconstructionFailed,
            "leading coefficient " + P.back().get_str() + " differs from C = " + R.C.get_str());
    R.numerator = poly_monic(P);
    R.verified_order = top;

    if (R.numerator.size() > 1)
        R.zeros = factor_over_q(R.numerator);
    if (R.denominator.size() > 1)
        R.poles = factor_over_q(R.denominator);
    for (auto& z : R.zeros) {
        Integer Di = integrality_denominator(z.f);
        long roots = (static_cast<long>(z.f.size()) - 1) * z.multiplicity;
        for (long i = 0; i < roots; ++i) {
            R.D_factors.push_back(Di);
            R.D *= Di;
        }
    }
    return R;
}

SturmResult sturm_check(const QSeries& f, const Integer& modulus, long weight, long index, long pole_order_sum)
{
    SturmResult r;
    Rational bound = Rational(weight * index, 12) - Rational(pole_order_sum);
    r.threshold = floor_div(bound.get_num(), bound.get_den()).get_si();
    r.enough_precision = f.prec() > r.threshold;
    for (long n = f.valuation(); n < f.prec(); ++n)
        if (!divisible(f.coeff(n), modulus)) {
            r.has_nonzero = true;
            r.first_nonzero = n;
            break;
        }
    r.proved = r.enough_precision && (!r.has_nonzero || r.first_nonzero > r.threshold);
    return r;
}

const char* congruence_decision_name(CongruenceDecision d)
{
    switch (d) {
    case CongruenceDecision::Proved:
        return "proved";
    case CongruenceDecision::Refuted:
        return "refuted";
    case CongruenceDecision::InsufficientPrecision:
        return "insufficient-precision";
    }
    return "?";
}

namespace {

std::optional<long> degree_of(const EllipticCurve& E)
{
    if (E.degree_override)
        return *E.degree_override;
    try {
        Parametrization P(E);
        return modular_degree(P);
    } catch (const Error&) {
        return std::nullopt;
    }
}

}

CongruenceVerdict parametrization_congruence(const EllipticCurve& E1, const EllipticCurve& E2, const Integer& modulus,
                                             long n_max, char coordinate, std::optional<long> d1,
                                             std::optional<long> d2)
{
    require(modulus >= 1, Errc::InvalidArgument, "modulus must be positive");
    require(coordinate == 'X' || coordinate == 'Y', Errc::InvalidArgument, "coordinate must be X or Y");
    CongruenceVerdict v;
    v.modulus = modulus;
    v.coordinate = coordinate;
    if (!d1)
        d1 = degree_of(E1);
    if (!d2)
        d2 = degree_of(E2);
    const long per_degree = coordinate == 'X' ? 2 : 3;
    bool degrees = d1 && d2;
    if (degrees) {
        v.d1 = *d1;
        v.d2 = *d2;
        v.threshold = per_degree * (v.d1 + v.d2);
    } else {
        v.note = "modular degree unavailable; only a refutation can be decided";
    }
    long T = std::max({n_max, 32L, degrees ? 4 * (v.threshold + 1) + 1 : 0L});
    v.window = T;

    auto series = [&](const EllipticCurve& E) {
        auto e = expand_infinity(E, newform_coefficients(E, T + 8), T);
        return coordinate == 'X' ? e.X : e.Y;
    };
    QSeries diff = series(E1) - series(E2);
    v.constant_term = diff.coeff(0);
    v.constant_congruent = divisible(v.constant_term, modulus);
    QSeries f = diff - QSeries::constant(v.constant_term, diff.prec());

    // Running gcd and its drops over the window.
    Integer g = 0;
    bool integral = true;
    for (long n = f.valuation(); n < f.prec(); ++n) {
        Rational c = f.coeff(n);
        if (c == 0)
            continue;
        if (!is_integer(c)) {
            integral = false;
            continue;
        }
        Integer ng;
        mpz_gcd(ng.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
        if (ng != g) {
            g = ng;
            v.witnesses.push_back({n, c, g});
        }
    }
    v.gcd_bound = g;
    if (!integral)
        v.note += (v.note.empty() ? "" : "; ") + std::string("non-integral coefficients in the window");

    // Only the coefficients through the Sturm threshold enter the proof.
    long scan_end = degrees ? v.threshold + 1 : T;
    SturmResult full = sturm_check(f.truncate(scan_end), modulus, 0, 1, 0);
    if (full.has_nonzero) {
        v.decision = CongruenceDecision::Refuted;
        return v;
    }
    if (!degrees) {
        v.decision = CongruenceDecision::InsufficientPrecision;
        return v;
    }
    const long index = Gamma0(std::lcm(E1.conductor, E2.conductor)).index();
    bool all = true;
    Integer m = modulus;
    for (long p : prime_factors(m.get_si())) {
        long e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            m /= p;
            ++e;
        }
        // f = 0 mod p makes f/p an integral meromorphic form with the same poles, so the
        // lemma applies again.
        QSeries h = f;
        long proved = 0;
        for (long k = 1; k <= e; ++k) {
            SturmResult r = sturm_check(h, Integer(p), 0, index, -v.threshold);
            if (!r.proved)
                break;
            ++proved;
            h = h * Rational(1, p);
        }
        v.prime_powers.push_back({p, proved});
        if (proved < e)
            all = false;
    }
    v.decision = all ? CongruenceDecision::Proved : CongruenceDecision::InsufficientPrecision;
    if (v.decision == CongruenceDecision::Proved) {
        v.soundness_checked = true;
        SturmResult wide = sturm_check(f.truncate(4 * (v.threshold + 1)), modulus, 0, 1, 0);
        v.soundness_ok = f.prec() >= 4 * (v.threshold + 1) && !wide.has_nonzero;
    }
    return v;
}

std::string BasisElement::expression() const
{
    std::string s;
    for (size_t i = 0; i < monomials.size(); ++i) {
        if (coefficients[i] == 0)
            continue;
        auto [a, b] = monomials[i];
        std::string mono;
        if (a == 1)
            mono = "X";
        else if (a > 1)
            mono = "X^" + std::to_string(a);
        if (b == 1)
            mono += mono.empty() ? "Y" : "*Y";
        s += term_string(coefficients[i], mono, s.empty());
    }
    return s.empty() ? "0" : s;
}

std::vector<BasisElement> reduced_basis(const EllipticCurve& E, long max_pole_order, long n_max)
{
    require(max_pole_order >= 0, Errc::InvalidArgument, "max_pole_order must be nonnegative");
    const long out_prec = std::max(n_max, 4L);
    const long T = out_prec + 2 * max_pole_order + 4;
    auto e = expand_infinity(E, newform_coefficients(E, T + 8), T);
    std::vector<long> orders;
    std::vector<std::pair<long, long>> monos;
    for (long k = 0; k <= max_pole_order; ++k) {
        if (k == 1)
            continue;
        orders.push_back(k);
        monos.push_back(k % 2 == 0 ? std::pair<long, long>{k / 2, 0} : std::pair<long, long>{(k - 3) / 2, 1});
    }
    auto monomial_series = [&](std::pair<long, long> m) {
        QSeries s = QSeries::constant(Rational(1), T);
        for (long i = 0; i < m.first; ++i)
            s = (s * e.X).truncate(T);
        if (m.second)
            s = (s * e.Y).truncate(T);
        return s;
    };
    std::vector<BasisElement> out;
    for (size_t i = 0; i < orders.size(); ++i) {
        long k = orders[i];
        BasisElement b;
        b.order = k;
        QSeries s = monomial_series(monos[i]);
        std::vector<Rational> c(i + 1, Rational(0));
        Rational lead = s.coeff(-k);
        require(lead != 0, Errc::ReconstructionFailed, "monomial has the wrong pole order");
        s = s * (1 / lead);
        c[i] = 1 / lead;
        for (size_t j = i; j-- > 0;) {
            Rational a = s.coeff(-orders[j]);
            if (a == 0)
                continue;
            s = s - out[j].series * a;
            // out[j] stores its coefficients by decreasing pole order
            const auto& oc = out[j].coefficients;
            for (size_t t = 0; t < oc.size(); ++t)
                c[j - t] -= a * oc[t];
        }
        // store by decreasing pole order
        for (size_t t = 0; t <= i; ++t) {
            b.monomials.push_back(monos[i - t]);
            b.coefficients.push_back(c[i - t]);
        }
        b.series = s;
        out.push_back(b);
    }
    for (auto& b : out) {
        require(b.series.prec() >= out_prec, Errc::InsufficientPrecision, "basis expansion lost precision");
        b.series = b.series.truncate(out_prec);
    }
    return out;
}

bool congruent_up_to_constant(const QSeries& s1, const QSeries& s2, const Integer& modulus)
{
    QSeries d = s1 - s2;
    for (long n = d.valuation(); n < d.prec(); ++n)
        if (n != 0 && !divisible(d.coeff(n), modulus))
            return false;
    return true;
}

}
