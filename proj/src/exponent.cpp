#include "bpgeo/exponent.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "bpgeo/error.hpp"

namespace bpgeo {

Exponent::Exponent(double p) : p_(p) {
    if (std::isnan(p) || p < 1.0)
        throw Error(ErrorCode::BadExponent, "p must lie in [1, inf], got " + std::to_string(p));
}

Exponent Exponent::parse(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "inf" || lower == "infinity") return inf();

    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw Error(ErrorCode::BadExponent, "cannot parse exponent '" + std::string(text) + "'");
    return Exponent(value);
}

Exponent Exponent::conjugate() const {
    if (is_one()) return inf();
    if (is_inf()) return one();
    return Exponent(p_ / (p_ - 1.0));
}

std::string Exponent::to_string() const {
    if (is_inf()) return "inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p_);
    return std::string(buf, ptr);
}

}  // namespace bpgeo
