#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bpgeo {

enum class ErrorCode {
    NonFinite,
    NotSquare,
    NegativeEntry,
    RowSum,
    ColSum,
    BadExponent,
    UnsupportedExponent,
    DegenerateExponent,
    DimensionTooLarge,
    BadDimension,
    InvalidPermutation,
    SizeMismatch,
    MatchingFailed,
    NoConvergence,
    NoBracket,
    NonPositiveEntry,
    NoClosedForm,
    ParseError,
    IoError,
    InvalidArgument,
};

/// Stable snake_case name used in JSON error reports.
std::string_view to_string(ErrorCode code) noexcept;

/// All library failures are reported through this exception.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail),
          code_(code),
          detail_(std::move(detail)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace bpgeo
