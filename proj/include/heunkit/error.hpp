#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heunkit {

enum class ErrorKind {
    ZeroDenominator,
    PoleAtSample,
    NotRegular,
    LogarithmicCase,
    FuchsViolation,
    CollidingSingularities,
    OutsideRadius,
    TruncationFailure,
    UnknownKind,
    NotReducible,
    DegenerateReduction,
    SingularityTooClose,
    StepUnderflow,
    DegenerateSystem,
    IllConditioned,
    NonConvergence,
    NonConverged,
    OverflowGuard,
    PoleParameter,
    SlowConvergence,
    DegenerateShift,
    ParameterPole,
    InvalidArgument,
    ParseError,
    UnknownVerb,
    MissingOption,
    MalformedComplex,
};

std::string_view error_name(ErrorKind kind) noexcept;

// Every domain failure in the toolkit is reported through this type; the kind
// is what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace heunkit
