#pragma once

#include <stdexcept>
#include <string>

namespace rolldist {

// Reason codes double as skip-reason tallies in grid sweeps.
enum class ErrorKind {
    SingularFrame,
    IsotropicMetric,
    DivisionBySingularJet,
    SqrtNearZero,
    OrderExceeded,
    OrderExhausted,
    DegreeOverflow,
    ArityMismatch,
    TangencyViolated,
    GenericityViolated,
    IsotropicNormal,
    CZero,
    MZero,
    DegenerateB1Denominator,
    StepUnderflow,
    SyntaxError,
    UnknownIdentifier,
    UnknownSurface,
    UnknownCheckName,
    ScenarioSyntaxError,
    FileError,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace rolldist
