#pragma once

#include <stdexcept>
#include <string>

namespace blowup {

enum class ErrorCode {
    InvalidDimension,
    DimensionMismatch,
    EmptyKernel,
    Precondition,
    OutOfDomain,
    UnknownExample,
    MeanZeroViolation,
    OverlappingOrbits,
    NotAGroup,
    Parse,
    SearchFailure,
    PartialCover,
    LpFailure,
    IntegratorFailure,
    WindowTooShort,
    SingularMap,
    Inconsistency,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Exit-status protocol shared by the CLI: 1 = checked and negative,
// 2 = bad input, 3 = internal or solver failure.
int exit_status(ErrorCode code);

}  // namespace blowup
