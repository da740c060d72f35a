#include "modparam/error.hpp"

namespace modparam {

const char* errc_name(Errc e)
{
    switch (e) {
    case Errc::SingularCurve: return "SingularCurve";
    case Errc::NonUnitLeadingCoefficient: return "NonUnitLeadingCoefficient";
    case Errc::DenominatorNotCoprime: return "DenominatorNotCoprime";
    case Errc::NoRationalInBall: return "NoRationalInBall";
    case Errc::PrimeTooLarge: return "PrimeTooLarge";
    case Errc::PrecisionUnreachable: return "PrecisionUnreachable";
    case Errc::ConvergenceBudgetExceeded: return "ConvergenceBudgetExceeded";
    case Errc::LatticeSnapFailed: return "LatticeSnapFailed";
    case Errc::ReconstructionFailed: return "ReconstructionFailed";
    case Errc::RecursionSingular: return "RecursionSingular";
    case Errc::CosetDecompositionFailed: return "CosetDecompositionFailed";
    case Errc::ExpansionUndefined: return "ExpansionUndefined";
    case Errc::GaloisResidue: return "GaloisResidue";
    case Errc::InsufficientPrecision: return "InsufficientPrecision";
    case Errc::NoMatch: return "NoMatch";
    case Errc::NoPreimageFound: return "NoPreimageFound";
    case Errc::CriterionViolated: return "CriterionViolated";
    case Errc::DegenerateDifference: return "DegenerateDifference";
    case Errc::NotIsogenous: return "NotIsogenous";
    case Errc::TorsionNotIntegral: return "TorsionNotIntegral";
    case Errc::ConductorMismatch: return "ConductorMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}
