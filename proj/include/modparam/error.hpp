#pragma once

#include <stdexcept>
#include <string>

namespace modparam {

enum class Errc {
    SingularCurve,
    NonUnitLeadingCoefficient,
    DenominatorNotCoprime,
    NoRationalInBall,
    PrimeTooLarge,
    PrecisionUnreachable,
    ConvergenceBudgetExceeded,
    LatticeSnapFailed,
    ReconstructionFailed,
    RecursionSingular,
    CosetDecompositionFailed,
    ExpansionUndefined,
    GaloisResidue,
    InsufficientPrecision,
    NoMatch,
    NoPreimageFound,
    CriterionViolated,
    DegenerateDifference,
    NotIsogenous,
    TorsionNotIntegral,
    ConductorMismatch,
    ParseError,
    InvalidArgument,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what)
{
    if (!cond)
        fail(code, what);
}

}
