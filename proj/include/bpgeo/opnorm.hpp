#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "bpgeo/exponent.hpp"
#include "bpgeo/mat.hpp"

namespace bpgeo {

enum class NormMethod { ExactP1, ExactP2, ExactPInf, PowerLowerBound, ExhaustiveOracle };

std::string_view to_string(NormMethod m) noexcept;

/// Induced l^p -> l^p norm value with a unit-p-norm vector attaining it.
struct NormEstimate {
    double value = 0.0;
    std::vector<double> certificate;
    int iterations = 0;
    int restarts_used = 0;
    NormMethod method = NormMethod::ExactP1;
    /// false when no restart met rel_tol within max_iter; value is still the best seen.
    bool converged = true;

    /// Only PowerLowerBound is a one-sided bound.
    bool is_lower_bound() const noexcept { return method == NormMethod::PowerLowerBound; }
};

/// Max absolute column sum (p = 1), max absolute row sum (p = inf), or the
/// largest singular value (p = 2). Throws UnsupportedExponent otherwise.
NormEstimate opnorm_exact(const Mat& a, Exponent p);

struct PowerConfig {
    int restarts = 0;  ///< 0 selects 8 + 2n
    int max_iter = 500;
    double rel_tol = 1e-12;
    std::uint64_t seed = 0;
};

/// Lower bound on ||A||_p for 1 < p < inf by the nonlinear power method
///
///     x <- normalize_p( dual_q( A^T dual_p(A x) ) ),
///
/// where dual_p(y)_k = sign(y_k) |y_k|^(p-1). Along each run ||A x||_p never
/// decreases, so the best run is a certified lower bound.
///
/// Start vectors, in order: e/||e||_p; the n-1 two-level patterns with m
/// leading entries n-m and n-m trailing entries -m (1 <= m < n); then
/// Gaussian draws from Rng(seed) normalised to the unit p-sphere. Runs are
/// combined by maximum value, ties going to the lowest restart index.
///
/// Throws BadExponent unless 1 < p < inf.
NormEstimate opnorm_estimate(const Mat& a, Exponent p, const PowerConfig& cfg = {});

/// opnorm_exact for p in {1, 2, inf}, opnorm_estimate otherwise.
NormEstimate opnorm(const Mat& a, Exponent p, const PowerConfig& cfg = {});

/// Brute-force maximisation of ||A x||_p over the unit p-sphere for n = 2 or 3.
///
/// n = 2: x(theta) = (cos theta, sin theta), theta on `grid` samples of [0, pi).
/// n = 3: three two-angle charts, one per cube face (x_k = 1, the other two
/// coordinates tan(alpha), tan(beta), alpha and beta on (grid/4 + 1) samples of
/// [-pi/4, pi/4]); together they cover the sphere up to sign with no poles.
/// The best grid cells are then refined locally (golden section for n = 2,
/// shrinking compass search for n = 3). Accurate to about 1e-7 for grid >= 3600.
///
/// Throws DimensionTooLarge for n > 3, InvalidArgument for grid < 360.
NormEstimate opnorm_oracle_small(const Mat& a, Exponent p, int grid = 3600);

}  // namespace bpgeo
