#pragma once

#include <stdexcept>
#include <string>

namespace lueq {

enum class ErrorCode {
    NotHermitian,
    NoConvergence,
    NotOrthonormal,
    BadDims,
    NotNormalized,
    NotPositive,
    BadTrace,
    BadPartition,
    KindMismatch,
    NotUnitary,
    DimMismatch,
    NotPure,
    BadArgs,
    TooLarge,
    MixedDims,
    ParseError,
};

const char* to_string(ErrorCode code);

/// Every failure in the library surfaces as an Error carrying a code that
/// names the violated precondition or invariant.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lueq
