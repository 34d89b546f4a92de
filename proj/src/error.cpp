#include "renormlab/error.hpp"

namespace rlab {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::ImproperScalingData: return "ImproperScalingData";
    case ErrorKind::NoRootFound: return "NoRootFound";
    case ErrorKind::InfeasibleData: return "InfeasibleData";
    case ErrorKind::JunctionMismatch: return "JunctionMismatch";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::NotRenormalizable: return "NotRenormalizable";
    case ErrorKind::FlatCritical: return "FlatCritical";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::NotMonotoneOnT: return "NotMonotoneOnT";
    case ErrorKind::NotExpanding: return "NotExpanding";
    case ErrorKind::WordTooShort: return "WordTooShort";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::GapOverlap: return "GapOverlap";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::PoleError: return "PoleError";
    case ErrorKind::NotDifferentiable: return "NotDifferentiable";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

} // namespace rlab
