#include "CLI11.hpp"
#include "json.hpp"

#include "modparam/congruence.hpp"
#include "modparam/error.hpp"
#include "modparam/modpoly.hpp"
#include "modparam/records.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace modparam;
using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    long n_max = 0;
    long bits = kDefaultBits;
    long degree_bound = 0;
    std::string format = "json";
    std::string out;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<CurveRecord> extra_records;

EllipticCurve load_curve(const std::string& spec)
{
    if (spec.empty())
        throw UsageError("--curve is required");
    for (auto& r : extra_records)
        if (r.label == spec)
            return r.curve();
    return find_curve(spec).curve();
}

std::string rat(const Rational& x) { return to_string(x); }

template <class R>
json series_json(const LaurentSeries<R>& s)
{
    json c = json::array();
    for (long n = s.valuation(); n < s.prec(); ++n)
        c.push_back(ring_to_string(s.coeff(n)));
    return json{{"valuation", s.valuation()}, {"precision", s.prec()}, {"coefficients", c}};
}

json poly_json(const QPoly& p)
{
    json a = json::array();
    for (auto& c : p)
        a.push_back(rat(c));
    return a;
}

json jrational_json(const JRational& r)
{
    return json{{"numerator", poly_json(r.num)}, {"denominator", poly_json(r.den)}, {"text", r.to_string()}};
}

Point parse_point(const std::string& s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw UsageError("--point takes x,y");
    try {
        return Point::affine(Rational(s.substr(0, comma)), Rational(s.substr(comma + 1)));
    } catch (const std::invalid_argument&) {
        throw UsageError("--point takes rational coordinates x,y");
    }
}

QPoly parse_coefficients(const std::string& s)
{
    QPoly p;
    std::stringstream in(s);
    std::string tok;
    try {
        while (std::getline(in, tok, ','))
            p.push_back(Rational(tok));
    } catch (const std::invalid_argument&) {
        throw UsageError("--jpoly takes comma-separated rationals, constant term first");
    }
    for (auto& c : p)
        c.canonicalize();
    return p;
}

void emit(const RunConfig& cfg, const std::string& text)
{
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f)
        throw UsageError("cannot write " + cfg.out);
    f << text;
}

void emit(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2) + "\n"); }

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"") == std::string::npos)
        return s;
    std::string r = "\"";
    for (char c : s)
        r += c == '"' ? std::string("\"\"") : std::string(1, c);
    return r + "\"";
}

const Parametrization& parametrization(const EllipticCurve& E, long bits)
{
    static std::unique_ptr<Parametrization> P;
    P = std::make_unique<Parametrization>(E, bits);
    return *P;
}

// The divisor needs n_max large enough for j-recognition; grow it until it succeeds.
Divisor divisor_auto(const Parametrization& P, const Expr& e, const RunConfig& cfg)
{
    long n = cfg.n_max > 0 ? cfg.n_max : 10;
    for (;;) {
        try {
            return divisor_of(build_modular_function(P, e, 1, n), cfg.degree_bound);
        } catch (const Error& err) {
            if (err.code() != Errc::InsufficientPrecision || cfg.n_max > 0 || n >= 320)
                throw;
            n *= 2;
        }
    }
}

json divisor_json(const Divisor& D)
{
    json places = json::array();
    for (auto& p : D.places)
        places.push_back({{"minpoly", poly_json(p.minpoly)},
                          {"text", poly_to_string(p.minpoly, "j")},
                          {"irreducible", p.irreducible},
                          {"zeros", p.zeros},
                          {"poles", p.poles}});
    json cusps = json::array();
    for (auto& c : D.cusps)
        cusps.push_back({{"cusp", c.cusp}, {"label", c.label}, {"order", c.order}});
    QPoly pp = D.pole_polynomial();
    std::string factored;
    if (pp.size() > 1)
        for (auto& f : factor_over_q(pp)) {
            factored += (factored.empty() ? "" : "*") + ("(" + poly_to_string(f.f, "j") + ")");
            if (f.multiplicity > 1)
                factored += "^" + std::to_string(f.multiplicity);
        }
    return json{{"places", places},
                {"cusps", cusps},
                {"degree", D.degree()},
                {"pole_count", D.pole_count()},
                {"pole_polynomial", poly_json(pp)},
                {"pole_polynomial_text", poly_to_string(pp, "j")},
                {"pole_factors", factored}};
}

json preimage_json(const Preimage& r)
{
    return json{{"z", r.z.to_string()},
                {"minpoly", r.z.minpoly_string()},
                {"discriminant", r.z.discriminant().get_str()},
                {"coset", r.coset},
                {"gamma", r.gamma.to_string()},
                {"X", r.X.to_string(30)},
                {"Y", r.Y.to_string(30)}};
}

// j-polynomial and target from --point / --expr / --jpoly.
void preimage_inputs(const Parametrization& P, const std::string& point, const std::string& expr,
                     const std::string& jpoly, const RunConfig& cfg, QPoly& jp, PreimageTarget& target)
{
    if (point.empty() == expr.empty())
        throw UsageError("give exactly one of --point and --expr");
    Expr poles = Expr::var_x();
    if (!point.empty()) {
        Point p = parse_point(point);
        if (!on_curve(P.curve(), p))
            fail(Errc::InvalidArgument, "the point is not on the curve");
        target = p;
        poles = Expr::constant(Rational(1)) / (Expr::var_x() - Expr::constant(p.x));
    } else {
        target = Expr::parse(expr);
        poles = Expr::parse(expr);
    }
    jp = jpoly.empty() ? divisor_auto(P, poles, cfg).pole_polynomial() : parse_coefficients(jpoly);
}

int cmd_expand(const RunConfig& cfg, const std::string& curve, long cusp, const std::string& expr)
{
    EllipticCurve E = load_curve(curve);
    const Parametrization& P = parametrization(E, cfg.bits);
    long T = cfg.n_max > 0 ? cfg.n_max : 12;
    if (cusp < 0 || cusp >= static_cast<long>(P.group().cusps().size()))
        throw UsageError("--cusp must be in [0, " + std::to_string(P.group().cusps().size()) + ")");
    const CuspInfo& info = P.group().cusps()[cusp];
    json j{{"curve", E.label}, {"conductor", E.conductor}, {"cusp", {{"index", cusp}, {"label", info.to_string()}, {"width", info.width}}}};
    if (P.cusp_data(cusp).exact) {
        CuspExpansion e = P.expand(cusp, T);
        j["case"] = recursion_case_name(e.kind);
        j["ring"] = "Q";
        j["X"] = series_json(e.X);
        j["Y"] = series_json(e.Y);
        if (!expr.empty()) {
            Expr f = Expr::parse(expr);
            QSeries s = f.eval<QSeries>(e.X, e.Y, [&](const Rational& c) { return QSeries::constant(c, T); });
            j["expr"] = {{"text", f.to_string()}, {"series", series_json(s)}};
        }
    } else {
        CuspExpansionC e = P.expand_cyclotomic(cusp, T);
        j["case"] = recursion_case_name(e.kind);
        j["ring"] = "Q(zeta_" + std::to_string(info.width) + ")";
        j["X"] = series_json(e.X);
        j["Y"] = series_json(e.Y);
        if (!expr.empty())
            throw UsageError("--expr is supported at cusps with rational expansions only");
    }
    emit(cfg, j);
    return 0;
}

int cmd_modpoly(const RunConfig& cfg, const std::string& curve, const std::string& expr, const std::vector<long>& which)
{
    EllipticCurve E = load_curve(curve);
    const Parametrization& P = parametrization(E, cfg.bits);
    Expr f = Expr::parse(expr.empty() ? "X" : expr);
    std::vector<long> idx = which;
    if (idx.empty())
        for (long i = 0; i < P.group().index(); ++i)
            idx.push_back(i);
    auto r = recognize_coefficients(P, f, idx, cfg.degree_bound);
    json coeffs = json::array();
    for (size_t i = 0; i < idx.size(); ++i) {
        json c = jrational_json(r[i]);
        c["index"] = idx[i];
        coeffs.push_back(c);
    }
    emit(cfg, json{{"curve", E.label}, {"expr", f.to_string()}, {"degree", P.group().index()}, {"coefficients", coeffs}});
    return 0;
}

int cmd_divisor(const RunConfig& cfg, const std::string& curve, const std::string& expr)
{
    EllipticCurve E = load_curve(curve);
    const Parametrization& P = parametrization(E, cfg.bits);
    Expr f = Expr::parse(expr.empty() ? "X" : expr);
    json j{{"curve", E.label}, {"expr", f.to_string()}};
    j.update(divisor_json(divisor_auto(P, f, cfg)));
    emit(cfg, j);
    return 0;
}

int cmd_preimage(const RunConfig& cfg, const std::string& curve, const std::string& point, const std::string& expr,
                 const std::string& jpoly)
{
    EllipticCurve E = load_curve(curve);
    const Parametrization& P = parametrization(E, cfg.bits);
    QPoly jp;
    PreimageTarget target;
    preimage_inputs(P, point, expr, jpoly, cfg, jp, target);
    json pre = json::array();
    for (auto& r : preimage_search(P, jp, target, cfg.bits))
        pre.push_back(preimage_json(r));
    emit(cfg, json{{"curve", E.label}, {"j_polynomial", poly_to_string(jp, "j")}, {"preimages", pre}});
    return 0;
}

int cmd_cm_check(const RunConfig& cfg, const std::string& curve, const std::string& point, const std::string& expr,
                 const std::string& jpoly, const std::vector<long>& ms)
{
    EllipticCurve E = load_curve(curve);
    const Parametrization& P = parametrization(E, cfg.bits);
    QPoly jp;
    PreimageTarget target;
    preimage_inputs(P, point, expr, jpoly, cfg, jp, target);
    std::vector<long> mlist = ms;
    if (mlist.empty())
        for (long Q : P.group().exact_divisors())
            if (Q > 1)
                mlist.push_back(Q);
    json out = json::array();
    for (auto& r : preimage_search(P, jp, target, cfg.bits)) {
        json checks = json::array();
        for (long m : mlist) {
            bool fixed = atkin_lehner_fixes(E.conductor, m, r.z);
            json c{{"m", m}, {"fixed", fixed}, {"fixes_point_of_X0N", atkin_lehner_fixes_point(E.conductor, m, r.z)}};
            try {
                CMVerdict v = cm_criterion(r.z, m, fixed);
                if (v.fixed) {
                    c["D"] = v.D.get_str();
                    c["witness"] = v.witness;
                }
                c["note"] = v.note;
            } catch (const Error& e) {
                c["error"] = e.what();
            }
            checks.push_back(c);
        }
        json p = preimage_json(r);
        p["atkin_lehner"] = checks;
        out.push_back(p);
    }
    emit(cfg, json{{"curve", E.label}, {"j_polynomial", poly_to_string(jp, "j")}, {"preimages", out}});
    return 0;
}

int cmd_congruence(const RunConfig& cfg, const std::string& c1, const std::string& c2, const std::string& mod,
                   const std::string& coord, std::optional<long> d1, std::optional<long> d2)
{
    if (c2.empty())
        throw UsageError("--curve2 is required");
    if (mod.empty())
        throw UsageError("--mod is required");
    if (coord != "X" && coord != "Y")
        throw UsageError("--coordinate must be X or Y");
    Integer m;
    if (m.set_str(mod, 10) != 0 || m < 1)
        throw UsageError("--mod takes a positive integer");
    EllipticCurve E1 = load_curve(c1), E2 = load_curve(c2);
    CongruenceVerdict v = parametrization_congruence(E1, E2, m, cfg.n_max, coord[0], d1, d2);
    json wit = json::array();
    for (auto& w : v.witnesses)
        wit.push_back({{"n", w.n}, {"coefficient", rat(w.coefficient)}, {"gcd", w.gcd.get_str()}});
    json pp = json::array();
    for (auto [p, e] : v.prime_powers)
        pp.push_back({{"p", p}, {"proved_exponent", e}});
    json j{{"curve1", E1.label},
           {"curve2", E2.label},
           {"coordinate", std::string(1, v.coordinate)},
           {"modulus", v.modulus.get_str()},
           {"decision", congruence_decision_name(v.decision)},
           {"threshold", v.threshold},
           {"degrees", json::array({v.d1, v.d2})},
           {"window", v.window},
           {"constant_term", rat(v.constant_term)},
           {"constant_congruent", v.constant_congruent},
           {"gcd_bound", v.gcd_bound.get_str()},
           {"witnesses", wit},
           {"prime_powers", pp},
           {"soundness_checked", v.soundness_checked},
           {"soundness_ok", v.soundness_ok}};
    if (!v.note.empty())
        j["note"] = v.note;
    try {
        DifferenceForm F = difference_rational_form(E1, E2, std::max(cfg.n_max, 40L), cfg.bits);
        json zeros = json::array(), poles = json::array();
        for (auto& z : F.zeros)
            zeros.push_back({{"factor", poly_to_string(z.f, "X")}, {"multiplicity", z.multiplicity}});
        for (auto& z : F.poles)
            poles.push_back({{"factor", poly_to_string(z.f, "X")}, {"multiplicity", z.multiplicity}});
        j["difference_form"] = {{"E3", F.e3_source},
                                {"C", rat(F.C)},
                                {"numerator", poly_to_string(F.numerator, "X3")},
                                {"denominator", poly_to_string(F.denominator, "X3")},
                                {"additive", rat(F.additive)},
                                {"zeros", zeros},
                                {"poles", poles},
                                {"D", F.D.get_str()},
                                {"C_over_D", rat(F.modulus())},
                                {"torsion_integral", F.torsion_integral},
                                {"text", F.to_string("X3")}};
    } catch (const Error& e) {
        j["difference_form"] = {{"error", e.what()}};
    }
    emit(cfg, j);
    return 0;
}

int cmd_basis(const RunConfig& cfg, const std::string& curve, long order, long terms)
{
    EllipticCurve E = load_curve(curve);
    long K = order > 0 ? order : 6;
    long T = terms > 0 ? terms : 4;
    auto basis = reduced_basis(E, K, T);
    if (cfg.format == "json") {
        json rows = json::array();
        for (auto& b : basis)
            rows.push_back({{"order", b.order}, {"element", b.expression()}, {"series", series_json(b.series)}});
        emit(cfg, json{{"curve", E.label}, {"basis", rows}});
        return 0;
    }
    std::string s = "order,element";
    for (long n = -K; n < T; ++n)
        s += ",q^" + std::to_string(n);
    s += "\n";
    for (auto& b : basis) {
        s += std::to_string(b.order) + "," + csv_quote(b.expression());
        for (long n = -K; n < T; ++n)
            s += "," + rat(b.series.coeff(n));
        s += "\n";
    }
    emit(cfg, s);
    return 0;
}

// Boundary of the union of F and S T^j F, |j| <= (N-1)/2, truncated at height H.
std::vector<std::pair<std::string, std::vector<Complex>>> boundary_path(long N, long samples, long H, long bits)
{
    auto S = [&](const Complex& w) { return -(Complex::one(bits) / w); };
    auto vertical = [&](const Rational& x, bool up) {
        std::vector<Complex> v;
        Real lo = sqrt(Real(3L, bits)) / Real(2L, bits);
        Real hi(H, bits);
        for (long s = 0; s <= samples; ++s) {
            Real t = lo + (hi - lo) * Real(Rational(up ? s : samples - s, samples), bits);
            v.push_back(Complex(Real(x, bits), t));
        }
        return v;
    };
    auto arc = [&](long j) {
        std::vector<Complex> v;
        for (long s = 0; s <= samples; ++s) {
            Rational r = Rational(1, 3) - Rational(s, 6 * samples);
            v.push_back(S(Complex(Real(j, bits)) + Complex::exp_2pi_i(r, bits)));
        }
        return v;
    };
    auto mapped = [&](std::vector<Complex> v) {
        for (auto& z : v)
            z = S(z);
        return v;
    };
    long h = (N - 1) / 2;
    std::vector<std::pair<std::string, std::vector<Complex>>> edges;
    edges.push_back({"left", vertical(Rational(-1, 2), false)});
    for (long j = 1; j <= h; ++j)
        edges.push_back({"arc" + std::to_string(j), arc(j)});
    edges.push_back({"to0", mapped(vertical(Rational(2 * h + 1, 2), true))});
    edges.push_back({"from0", mapped(vertical(Rational(-(2 * h + 1), 2), false))});
    for (long j = -h; j <= -1; ++j)
        edges.push_back({"arc" + std::to_string(j), arc(j)});
    edges.push_back({"right", vertical(Rational(1, 2), true)});
    return edges;
}

int cmd_eichler_plot(const RunConfig& cfg, const std::string& curve, long samples, long height, const std::string& path)
{
    EllipticCurve E = load_curve(curve);
    const Parametrization& P = parametrization(E, cfg.bits);
    long bits = cfg.bits;
    NewformCoefficients f = P.newform(64);
    const PeriodLattice& L = P.lattice();
    std::ostringstream out;
    out << "re_z,im_z,re_eps,im_eps,edge\n";
    auto row = [&](const Complex& z, const Complex& e, const std::string& edge) {
        out << z.re.to_string(15) << "," << z.im.to_string(15) << "," << e.re.to_string(15) << ","
            << e.im.to_string(15) << "," << edge << "\n";
    };
    if (!path.empty()) {
        std::vector<Complex> vs;
        std::stringstream in(path);
        std::string tok;
        while (std::getline(in, tok, ';')) {
            auto c = tok.find(',');
            if (c == std::string::npos)
                throw UsageError("--path takes x,y;x,y;...");
            vs.push_back(Complex(Real(std::stod(tok.substr(0, c)), bits), Real(std::stod(tok.substr(c + 1)), bits)));
        }
        for (auto& s : eichler_trace(f, L, vs, std::max(1L, samples), bits))
            row(s.z, s.eps, "path");
        emit(cfg, out.str());
        return 0;
    }
    long N = E.conductor;
    if (prime_factors(N) != std::vector<long>{N})
        fail(Errc::InvalidArgument, "the built-in boundary path needs a prime conductor");
    Complex first(bits), last(bits);
    bool have = false;
    for (auto& [name, pts] : boundary_path(N, samples, height, bits))
        for (auto& z : pts) {
            Complex e = P.eichler(z, bits);
            row(z, e, name);
            if (!have)
                first = e;
            have = true;
            last = e;
        }
    // Closure: the two vertical edges of F are identified by T.
    LatticePoint closure = snap_to_lattice(L, last - first, bits);
    out << "# closure defect " << closure.n1 << "*w1 + " << closure.n2 << "*w2\n";
    // Arc j is carried to arc j' by (-j, -1; j j' + 1, j') when j j' = -1 mod N.
    long h = (N - 1) / 2;
    for (long a = 1; a <= h; ++a)
        for (long b = -h; b <= h; ++b) {
            if (b == 0 || (a * b + 1) % N != 0 || a * b + 1 == 0)
                continue;
            Mat2 g{-a, -1, a * b + 1, b};
            Complex z0 = -(Complex::one(bits) / (Complex(Real(a, bits)) + Complex::i(bits)));
            LatticePoint period = snap_to_lattice(L, P.eichler(g.apply(z0), bits) - P.eichler(z0, bits), bits);
            out << "# arc pairing " << a << " -> " << b << " by " << g.to_string() << " period " << period.n1
                << "*w1 + " << period.n2 << "*w2\n";
        }
    emit(cfg, out.str());
    return 0;
}

int cmd_degrees(const RunConfig& cfg, const std::vector<std::string>& curves)
{
    std::vector<std::string> labels = curves;
    if (labels.empty())
        for (auto& r : bundled_curves())
            labels.push_back(r.label);
    json out = json::array();
    for (auto& l : labels) {
        EllipticCurve E = load_curve(l);
        json j{{"curve", E.label}, {"conductor", E.conductor}};
        try {
            Parametrization P(E, cfg.bits);
            j["degree"] = modular_degree(P);
            j["area_estimate"] = modular_degree_area(P);
        } catch (const Error& e) {
            j["degree"] = nullptr;
            j["error"] = e.what();
        }
        out.push_back(j);
    }
    emit(cfg, json{{"degrees", out}});
    return 0;
}

}

int main(int argc, char** argv)
{
    CLI::App app{"Modular parametrizations of elliptic curves"};
    app.require_subcommand(1);
    RunConfig cfg;
    if (const char* env = std::getenv("MODPARAM_BITS"))
        cfg.bits = std::atol(env);
    std::string data_file;
    app.add_option("--bits", cfg.bits, "working precision in bits")->check(CLI::Range(64L, 1L << 16));
    app.add_option("--order", cfg.n_max, "series order (0 picks a default)")->check(CLI::NonNegativeNumber);
    app.add_option("--degree-bound", cfg.degree_bound, "degree bound for j-recognition")->check(CLI::NonNegativeNumber);
    app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", cfg.out, "output file (default stdout)");
    app.add_option("--data", data_file, "extra curve file")->check(CLI::ExistingFile);
    app.fallthrough();

    std::string curve, curve2, expr, point, jpoly, mod, coord = "X", path;
    long cusp = 0, max_order = 6, terms = 4, samples = 24, height = 2;
    std::vector<long> which, ms;
    std::vector<std::string> curves;
    std::optional<long> d1, d2;

    auto* expand = app.add_subcommand("expand", "q-expansions of X and Y at a cusp");
    expand->add_option("--curve", curve)->required();
    expand->add_option("--cusp", cusp, "cusp index (0 is infinity)");
    expand->add_option("--expr", expr, "also expand an expression in X, Y");

    auto* modpoly = app.add_subcommand("modpoly", "coefficients of the modular polynomial as functions of j");
    modpoly->add_option("--curve", curve)->required();
    modpoly->add_option("--expr", expr);
    modpoly->add_option("--coeff", which, "indices of the coefficients wanted");

    auto* divisor = app.add_subcommand("divisor", "divisor of an expression on X0(N)");
    divisor->add_option("--curve", curve)->required();
    divisor->add_option("--expr", expr);

    auto* preimage = app.add_subcommand("preimage", "CM points of X0(N) over a point or over the poles of an expression");
    auto* cm = app.add_subcommand("cm-check", "Atkin-Lehner fixed points and the discriminant criterion");
    for (auto* sc : {preimage, cm}) {
        sc->add_option("--curve", curve)->required();
        sc->add_option("--point", point, "x,y");
        sc->add_option("--expr", expr);
        sc->add_option("--jpoly", jpoly, "j-polynomial coefficients, constant first");
    }
    cm->add_option("--m", ms, "Atkin-Lehner indices (default: all)");

    auto* cong = app.add_subcommand("congruence", "decide a congruence between two parametrizations");
    cong->add_option("--curve", curve)->required();
    cong->add_option("--curve2", curve2)->required();
    cong->add_option("--mod", mod)->required();
    cong->add_option("--coordinate", coord, "X or Y");
    cong->add_option("--d1", d1, "modular degree of the first curve");
    cong->add_option("--d2", d2, "modular degree of the second curve");

    auto* basis = app.add_subcommand("basis", "row-reduced basis of Q[X, Y] by pole order");
    basis->add_option("--curve", curve)->required();
    basis->add_option("--max-pole", max_order, "largest pole order")->check(CLI::PositiveNumber);
    basis->add_option("--terms", terms, "coefficients q^n for n < terms")->check(CLI::PositiveNumber);

    auto* plot = app.add_subcommand("eichler-plot", "CSV trace of the Eichler integral");
    plot->add_option("--curve", curve)->required();
    plot->add_option("--samples", samples, "samples per edge")->check(CLI::PositiveNumber);
    plot->add_option("--height", height, "truncation height at the cusps")->check(CLI::PositiveNumber);
    plot->add_option("--path", path, "polyline x,y;x,y;... instead of the domain boundary");

    auto* degrees = app.add_subcommand("degrees", "modular degrees");
    degrees->add_option("--curve", curves, "curves (default: all bundled)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!data_file.empty())
            extra_records = parse_curve_file(data_file);
        if (basis->parsed() && !app.get_option("--format")->count())
            cfg.format = "csv";
        if (expand->parsed())
            return cmd_expand(cfg, curve, cusp, expr);
        if (modpoly->parsed())
            return cmd_modpoly(cfg, curve, expr, which);
        if (divisor->parsed())
            return cmd_divisor(cfg, curve, expr);
        if (preimage->parsed())
            return cmd_preimage(cfg, curve, point, expr, jpoly);
        if (cm->parsed())
            return cmd_cm_check(cfg, curve, point, expr, jpoly, ms);
        if (cong->parsed())
            return cmd_congruence(cfg, curve, curve2, mod, coord, d1, d2);
        if (basis->parsed())
            return cmd_basis(cfg, curve, max_order, terms);
        if (plot->parsed())
            return cmd_eichler_plot(cfg, curve, samples, height, path);
        if (degrees->parsed())
            return cmd_degrees(cfg, curves);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.code() == Errc::InvalidArgument ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 2;
}
