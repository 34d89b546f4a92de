#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

/// Error categories shared by every module. The CLI maps them to exit codes.
enum class ErrorKind {
    Domain,
    OutsideDomain,
    DepthExceeded,
    ImproperScalingData,
    NoRootFound,
    InfeasibleData,
    JunctionMismatch,
    NotMonotone,
    NotRenormalizable,
    FlatCritical,
    DegenerateConfiguration,
    NotMonotoneOnT,
    NotExpanding,
    WordTooShort,
    TooLarge,
    GapOverlap,
    PrecisionExhausted,
    PoleError,
    NotDifferentiable,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace rlab
