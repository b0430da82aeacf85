#include "blowup/errors.hpp"

namespace blowup {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidDimension: return "invalid-dimension";
        case ErrorCode::DimensionMismatch: return "dimension-mismatch";
        case ErrorCode::EmptyKernel: return "empty-kernel";
        case ErrorCode::Precondition: return "precondition-violation";
        case ErrorCode::OutOfDomain: return "out-of-domain";
        case ErrorCode::UnknownExample: return "unknown-example";
        case ErrorCode::MeanZeroViolation: return "mean-zero-violation";
        case ErrorCode::OverlappingOrbits: return "overlapping-orbits";
        case ErrorCode::NotAGroup: return "not-a-group";
        case ErrorCode::Parse: return "parse-error";
        case ErrorCode::SearchFailure: return "search-failure";
        case ErrorCode::PartialCover: return "partial-cover";
        case ErrorCode::LpFailure: return "solver-error";
        case ErrorCode::IntegratorFailure: return "integrator-error";
        case ErrorCode::WindowTooShort: return "window-too-short";
        case ErrorCode::SingularMap: return "singular-map";
        case ErrorCode::Inconsistency: return "inconsistency";
    }
    return "unknown";
}

int exit_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidDimension:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::EmptyKernel:
        case ErrorCode::Precondition:
        case ErrorCode::OutOfDomain:
        case ErrorCode::UnknownExample:
        case ErrorCode::MeanZeroViolation:
        case ErrorCode::OverlappingOrbits:
        case ErrorCode::NotAGroup:
        case ErrorCode::Parse:
        case ErrorCode::WindowTooShort:
            return 2;
        case ErrorCode::SearchFailure:
        case ErrorCode::PartialCover:
            return 1;
        case ErrorCode::LpFailure:
        case ErrorCode::IntegratorFailure:
        case ErrorCode::SingularMap:
        case ErrorCode::Inconsistency:
            return 3;
    }
    return 3;
}

}  // namespace blowup
