#pragma once

#include <stdexcept>
#include <string>

namespace fdo {

// Stable machine-readable error codes; the CLI maps each to exactly one
// "error" payload and exit code 1 (UsageError maps to exit code 2).
enum class ErrorCode {
    NotAUnit,
    PrecisionExhausted,
    NotInvertible,
    NotNormalized,
    ZeroOrder,
    NotLaxForm,
    NotDifferential,
    DenominatorNotMonic,
    NoSolutionAtPrecision,
    WindowTooSmall,
    UnderdeterminedAtDepth,
    FNotCertified,
    NotCommutingAtWindow,
    NoRelationWithinBudget,
    DepthExceeded,
    DivisionByZero,
    ParseError,
    UsageError,
    Internal,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}

    ErrorCode code() const { return code_; }
    const char* code_name() const { return error_code_name(code_); }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

} // namespace fdo
