#include "heunkit/error.hpp"

namespace heunkit {

std::string_view error_name(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::PoleAtSample: return "PoleAtSample";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::LogarithmicCase: return "LogarithmicCase";
    case ErrorKind::FuchsViolation: return "FuchsViolation";
    case ErrorKind::CollidingSingularities: return "CollidingSingularities";
    case ErrorKind::OutsideRadius: return "OutsideRadius";
    case ErrorKind::TruncationFailure: return "TruncationFailure";
    case ErrorKind::UnknownKind: return "UnknownKind";
    case ErrorKind::NotReducible: return "NotReducible";
    case ErrorKind::DegenerateReduction: return "DegenerateReduction";
    case ErrorKind::SingularityTooClose: return "SingularityTooClose";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::DegenerateSystem: return "DegenerateSystem";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NonConverged: return "NonConverged";
    case ErrorKind::OverflowGuard: return "OverflowGuard";
    case ErrorKind::PoleParameter: return "PoleParameter";
    case ErrorKind::SlowConvergence: return "SlowConvergence";
    case ErrorKind::DegenerateShift: return "DegenerateShift";
    case ErrorKind::ParameterPole: return "ParameterPole";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownVerb: return "UnknownVerb";
    case ErrorKind::MissingOption: return "MissingOption";
    case ErrorKind::MalformedComplex: return "MalformedComplex";
    }
    return "Unknown";
}

} // namespace heunkit
