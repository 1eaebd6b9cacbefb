#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace bpgeo {

/// Hölder exponent p in [1, inf]. The max-norm is represented by +infinity.
///
/// Validation happens once, at construction; every function taking an
/// Exponent can assume 1 <= p <= inf.
class Exponent {
public:
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    /// Throws Error(BadExponent) if p is NaN or p < 1.
    explicit Exponent(double p);

    static Exponent one() { return Exponent(1.0); }
    static Exponent two() { return Exponent(2.0); }
    static Exponent inf() { return Exponent(kInf); }

    /// Accepts "inf" (any case), "infinity", or a decimal >= 1.
    static Exponent parse(std::string_view text);

    double value() const noexcept { return p_; }
    bool is_one() const noexcept { return p_ == 1.0; }
    bool is_two() const noexcept { return p_ == 2.0; }
    bool is_inf() const noexcept { return p_ == kInf; }
    bool has_exact_norm() const noexcept { return is_one() || is_two() || is_inf(); }

    /// q with 1/p + 1/q = 1.
    Exponent conjugate() const;

    std::string to_string() const;

    friend bool operator==(Exponent a, Exponent b) noexcept { return a.p_ == b.p_; }

private:
    double p_;
};

}  // namespace bpgeo
