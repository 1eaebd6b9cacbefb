#include "bpgeo/error.hpp"

namespace bpgeo {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NonFinite: return "non_finite";
    case ErrorCode::NotSquare: return "not_square";
    case ErrorCode::NegativeEntry: return "negative_entry";
    case ErrorCode::RowSum: return "row_sum";
    case ErrorCode::ColSum: return "col_sum";
    case ErrorCode::BadExponent: return "bad_exponent";
    case ErrorCode::UnsupportedExponent: return "unsupported_exponent";
    case ErrorCode::DegenerateExponent: return "degenerate_exponent";
    case ErrorCode::DimensionTooLarge: return "dimension_too_large";
    case ErrorCode::BadDimension: return "bad_dimension";
    case ErrorCode::InvalidPermutation: return "invalid_permutation";
    case ErrorCode::SizeMismatch: return "size_mismatch";
    case ErrorCode::MatchingFailed: return "matching_failed";
    case ErrorCode::NoConvergence: return "no_convergence";
    case ErrorCode::NoBracket: return "no_bracket";
    case ErrorCode::NonPositiveEntry: return "non_positive_entry";
    case ErrorCode::NoClosedForm: return "no_closed_form";
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::IoError: return "io_error";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    }
    return "unknown";
}

}  // namespace bpgeo
