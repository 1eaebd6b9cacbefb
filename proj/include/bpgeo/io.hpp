#pragma once

// Matrix file formats.
//
// Text: first line "n", then n lines of n whitespace-separated decimals.
// Written with 17 significant digits so that parsing recovers every double
// bit for bit.
//
// JSON: {"n": 3, "rows": [[...], [...], [...]]}

#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "bpgeo/mat.hpp"

namespace bpgeo::io {

Mat parse_matrix_text(std::string_view text);
std::string format_matrix_text(const Mat& m);

Mat matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Mat& m);

/// Text or JSON, decided by the first non-blank character ('{' means JSON).
Mat parse_matrix(std::string_view text);

/// Reads a matrix from a file; "-" reads standard input. Errors name the path.
Mat load_matrix(const std::string& path, std::istream& stdin_stream);

}  // namespace bpgeo::io
