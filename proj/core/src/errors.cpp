#include "rolldist/errors.hpp"

namespace rolldist {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::SingularFrame: return "SingularFrame";
        case ErrorKind::IsotropicMetric: return "IsotropicMetric";
        case ErrorKind::DivisionBySingularJet: return "DivisionBySingularJet";
        case ErrorKind::SqrtNearZero: return "SqrtNearZero";
        case ErrorKind::OrderExceeded: return "OrderExceeded";
        case ErrorKind::OrderExhausted: return "OrderExhausted";
        case ErrorKind::DegreeOverflow: return "DegreeOverflow";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::TangencyViolated: return "TangencyViolated";
        case ErrorKind::GenericityViolated: return "GenericityViolated";
        case ErrorKind::IsotropicNormal: return "IsotropicNormal";
        case ErrorKind::CZero: return "CZero";
        case ErrorKind::MZero: return "MZero";
        case ErrorKind::DegenerateB1Denominator: return "DegenerateB1Denominator";
        case ErrorKind::StepUnderflow: return "StepUnderflow";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorKind::UnknownSurface: return "UnknownSurface";
        case ErrorKind::UnknownCheckName: return "UnknownCheckName";
        case ErrorKind::ScenarioSyntaxError: return "ScenarioSyntaxError";
        case ErrorKind::FileError: return "FileError";
    }
    return "Unknown";
}

} // namespace rolldist
