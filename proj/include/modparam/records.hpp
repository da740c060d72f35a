#pragma once

#include "modparam/curve.hpp"

#include <optional>
#include <string>
#include <vector>

namespace modparam {

struct CurveRecord {
    std::string label;
    std::array<Integer, 5> ainvs;
    long conductor = 0;
    long manin = 1;
    std::optional<long> degree;

    EllipticCurve curve() const;
    std::string to_line() const;
};

// `label? a1,a2,a3,a4,a6 N [manin=k] [degree=d]`; '#' starts a comment.
std::optional<CurveRecord> parse_curve_line(const std::string& line, long line_no = 0);
std::vector<CurveRecord> parse_curve_text(const std::string& text);
std::vector<CurveRecord> parse_curve_file(const std::string& path);

// The curves shipped with the library.
const std::vector<CurveRecord>& bundled_curves();
const char* bundled_curve_text();
// A bundled label, or an inline record such as "0,-1,1,-10,-20 11".
CurveRecord find_curve(const std::string& spec);

}
