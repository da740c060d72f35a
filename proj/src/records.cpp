#include "modparam/records.hpp"

#include "modparam/error.hpp"

#include <fstream>
#include <sstream>

namespace modparam {

namespace {

const char* const kBundled = R"(# label a1,a2,a3,a4,a6 N [manin=k] [degree=d]
11a1 0,-1,1,-10,-20 11
26b1 1,-1,1,-3,3 26
14a1 1,0,1,4,-6 14
14a2 1,0,1,-36,-70 14
15a3 1,1,1,-5,2 15
15a4 1,1,1,35,-28 15
96a3 0,1,0,-32,60 96
48a5 0,1,0,-384,2772 48
37a1 0,0,1,-1,0 37
)";

std::string where(long line_no)
{
    return line_no > 0 ? "line " + std::to_string(line_no) + ": " : "";
}

long parse_positive(const std::string& s, const std::string& what, long line_no)
{
    Rational r = parse_rational(s);
    if (!is_integer(r) || r <= 0 || !r.get_num().fits_slong_p())
        fail(Errc::ParseError, where(line_no) + what + " must be a positive integer: '" + s + "'");
    return r.get_num().get_si();
}

bool looks_like_ainvs(const std::string& s) { return s.find(',') != std::string::npos; }

}

EllipticCurve CurveRecord::curve() const
{
    std::array<Rational, 5> a;
    for (int i = 0; i < 5; ++i)
        a[i] = Rational(ainvs[i]);
    EllipticCurve E = derive_invariants(a, conductor, label);
    E.manin = manin;
    E.degree_override = degree;
    return E;
}

std::string CurveRecord::to_line() const
{
    std::string s;
    if (!label.empty())
        s = label + " ";
    for (int i = 0; i < 5; ++i)
        s += (i ? "," : "") + ainvs[i].get_str();
    s += " " + std::to_string(conductor);
    if (manin != 1)
        s += " manin=" + std::to_string(manin);
    if (degree)
        s += " degree=" + std::to_string(*degree);
    return s;
}

std::optional<CurveRecord> parse_curve_line(const std::string& line0, long line_no)
{
    std::string line = line0.substr(0, line0.find('#'));
    std::istringstream in(line);
    std::vector<std::string> tok;
    for (std::string t; in >> t;)
        tok.push_back(t);
    if (tok.empty())
        return std::nullopt;
    CurveRecord r;
    size_t i = 0;
    if (!looks_like_ainvs(tok[0]))
        r.label = tok[i++];
    if (i >= tok.size() || !looks_like_ainvs(tok[i]))
        fail(Errc::ParseError, where(line_no) + "expected a1,a2,a3,a4,a6");
    std::vector<std::string> parts;
    std::stringstream ss(tok[i++]);
    for (std::string p; std::getline(ss, p, ',');)
        parts.push_back(p);
    if (parts.size() != 5)
        fail(Errc::ParseError, where(line_no) + "expected five a-invariants");
    for (int k = 0; k < 5; ++k) {
        Rational v = parse_rational(parts[k]);
        if (!is_integer(v))
            fail(Errc::ParseError, where(line_no) + "a-invariants must be integers");
        r.ainvs[k] = v.get_num();
    }
    if (i >= tok.size())
        fail(Errc::ParseError, where(line_no) + "missing conductor");
    r.conductor = parse_positive(tok[i++], "conductor", line_no);
    for (; i < tok.size(); ++i) {
        const std::string& t = tok[i];
        if (t.rfind("manin=", 0) == 0)
            r.manin = parse_positive(t.substr(6), "manin", line_no);
        else if (t.rfind("degree=", 0) == 0)
            r.degree = parse_positive(t.substr(7), "degree", line_no);
        else
            fail(Errc::ParseError, where(line_no) + "unexpected token '" + t + "'");
    }
    r.curve();
    return r;
}

std::vector<CurveRecord> parse_curve_text(const std::string& text)
{
    std::vector<CurveRecord> out;
    std::istringstream in(text);
    long no = 0;
    for (std::string line; std::getline(in, line);) {
        ++no;
        if (auto r = parse_curve_line(line, no))
            out.push_back(*r);
    }
    return out;
}

std::vector<CurveRecord> parse_curve_file(const std::string& path)
{
    std::ifstream in(path);
    require(static_cast<bool>(in), Errc::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_curve_text(ss.str());
}

const char* bundled_curve_text() { return kBundled; }

const std::vector<CurveRecord>& bundled_curves()
{
    static const std::vector<CurveRecord> curves = parse_curve_text(kBundled);
    return curves;
}

CurveRecord find_curve(const std::string& spec)
{
    for (const auto& r : bundled_curves())
        if (r.label == spec)
            return r;
    if (looks_like_ainvs(spec)) {
        auto r = parse_curve_line(spec);
        if (r)
            return *r;
    }
    fail(Errc::InvalidArgument, "unknown curve '" + spec + "'");
}

}
