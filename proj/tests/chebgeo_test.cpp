#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "bpgeo/chebgeo.hpp"
#include "bpgeo/sampling.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

using bpgeo::ChebyshevStrategy;
using bpgeo::ErrorCode;
using bpgeo::Exponent;
using bpgeo::Mat;
using bpgeo::RadiusMethod;

// Reference value of ||J_3 - I_3||_3, re-derived from the closed form and
// from the two-angle oracle before being frozen here.
constexpr double kRadius3AtP3 = 1.0257760076904303;

double closed_form_n3_reference(double p) {
    return std::pow(std::pow(2.0, p - 1) + 1, 1 / p) * std::pow(std::pow(2.0, 1 / (p - 1)) + 1, 1 - 1 / p) / 3;
}

/// Two-level formula written out directly, maximised over every block size m.
double two_level_max_all_m(std::size_t n, double p) {
    double best = 1.0;
    for (std::size_t m = 1; m < n; ++m) {
        const double r = static_cast<double>(n) / static_cast<double>(m);
        const double v =
            std::pow(std::pow(r - 1, p - 1) + 1, 1 / p) * std::pow(std::pow(r - 1, 1 / (p - 1)) + 1, 1 - 1 / p) / r;
        best = std::max(best, v);
    }
    return best;
}

bpgeo::DoublyStochastic sample(std::uint64_t seed, std::size_t n) {
    bpgeo::SamplerConfig cfg;
    cfg.seed = seed;
    return seed % 2 ? bpgeo::random_sinkhorn(n, cfg) : bpgeo::random_birkhoff_mixture(n, cfg);
}

void expect_consistent(const bpgeo::RadiusReport& r) {
    EXPECT_LE(r.lower_bound, r.value);
    EXPECT_LE(r.value, r.upper_bound + 1e-9);
}

bool has_warning(const bpgeo::RadiusReport& r, std::string_view needle) {
    return std::any_of(r.warnings.begin(), r.warnings.end(),
                       [&](const std::string& w) { return w.find(needle) != std::string::npos; });
}

TEST(BoundingRadius, L1Examples) {
    for (std::size_t n = 1; n <= 6; ++n)
        EXPECT_DOUBLE_EQ(bpgeo::bounding_radius_l1(bpgeo::averager(n)).value, 2 * (1 - 1.0 / n));
    EXPECT_EQ(bpgeo::bounding_radius_l1(bpgeo::DoublyStochastic::from_permutation(bpgeo::PermutationMatrix::identity(4)))
                  .value,
              2.0);
    const auto half = bpgeo::validate_doubly_stochastic(Mat::from_rows({{0.5, 0.5}, {0.5, 0.5}}));
    const auto r = bpgeo::bounding_radius_l1(half);
    EXPECT_EQ(r.value, 1.0);
    EXPECT_EQ(r.method, RadiusMethod::FormulaP1);
    expect_consistent(r);
}

TEST(BoundingRadius, LinfExamples) {
    EXPECT_DOUBLE_EQ(bpgeo::bounding_radius_linf(bpgeo::averager(3)).value, 4.0 / 3.0);
    EXPECT_EQ(bpgeo::bounding_radius_linf(bpgeo::DoublyStochastic::from_permutation(bpgeo::PermutationMatrix::identity(2)))
                  .value,
              2.0);
    const auto d = bpgeo::validate_doubly_stochastic(
        Mat::from_rows({{0.1, 0.45, 0.45}, {0.45, 0.1, 0.45}, {0.45, 0.45, 0.1}}));
    const auto r = bpgeo::bounding_radius_linf(d);
    EXPECT_DOUBLE_EQ(r.value, 1.8);
    EXPECT_EQ(r.method, RadiusMethod::FormulaPInf);
    ASSERT_TRUE(r.maximizer.has_value());
    EXPECT_EQ((*r.maximizer)[0], 0);
}

TEST(BoundingRadius, MaximizerSitsOnTheMinimumEntry) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto d = sample(seed, 2 + seed % 5);
        const auto r = bpgeo::bounding_radius_l1(d);
        ASSERT_TRUE(r.maximizer.has_value());
        const double m = bpgeo::min_entry(d.mat());
        bool on_min = false;
        for (std::size_t i = 0; i < d.n(); ++i) on_min |= d(i, (*r.maximizer)[i]) == m;
        EXPECT_TRUE(on_min);
        EXPECT_NEAR(bpgeo::opnorm_exact(d.mat() - r.maximizer->to_mat(), Exponent::one()).value, r.value, 1e-12);
    }
}

TEST(Enumerate, AveragerExamples) {
    for (std::size_t n = 2; n <= 5; ++n) {
        EXPECT_NEAR(bpgeo::bounding_radius_enumerate(bpgeo::averager(n), Exponent::one()).value, 2 * (1 - 1.0 / n),
                    1e-15);
        EXPECT_NEAR(bpgeo::bounding_radius_enumerate(bpgeo::averager(n), Exponent::two()).value, 1.0, 1e-12);
    }
    EXPECT_BPGEO_ERROR(bpgeo::bounding_radius_enumerate(bpgeo::averager(9), Exponent::one()),
                       ErrorCode::DimensionTooLarge);
}

TEST(Enumerate, AgreesWithFormulaAndPlacesOneOnArgmin) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t n = 2 + seed % 4;
        const auto d = sample(seed + 100, n);
        const auto brute = bpgeo::bounding_radius_enumerate(d, Exponent::one());
        EXPECT_NEAR(brute.value, bpgeo::bounding_radius_l1(d).value, 1e-12);
        EXPECT_EQ(brute.method, RadiusMethod::PermutationEnumeration);
        ASSERT_TRUE(brute.maximizer.has_value());
        const double m = bpgeo::min_entry(d.mat());
        bool on_min = false;
        for (std::size_t i = 0; i < n; ++i) on_min |= d(i, (*brute.maximizer)[i]) == m;
        EXPECT_TRUE(on_min) << "seed " << seed;
        EXPECT_NEAR(bpgeo::bounding_radius_enumerate(d, Exponent::inf()).value, bpgeo::bounding_radius_linf(d).value,
                    1e-12);
    }
}

TEST(Enumerate, GeneralExponentIsFlaggedAsLowerBound) {
    const auto r = bpgeo::bounding_radius_enumerate(sample(3, 3), Exponent(3.0));
    EXPECT_TRUE(has_warning(r, "lower bound"));
    expect_consistent(r);
}

TEST(Chebyshev, ClosedValues) {
    EXPECT_EQ(bpgeo::chebyshev_radius(5, Exponent::one()).value, 1.6);
    EXPECT_EQ(bpgeo::chebyshev_radius(7, Exponent::two()).value, 1.0);
    for (std::size_t n = 2; n <= 8; ++n) {
        const double expected = 2 * (1 - 1.0 / static_cast<double>(n));
        const auto r1 = bpgeo::chebyshev_radius(n, Exponent::one());
        const auto rinf = bpgeo::chebyshev_radius(n, Exponent::inf());
        EXPECT_EQ(r1.value, expected);
        EXPECT_EQ(rinf.value, expected);
        EXPECT_EQ(r1.method, RadiusMethod::FormulaP1);
        EXPECT_EQ(rinf.method, RadiusMethod::FormulaPInf);
        const auto r2 = bpgeo::chebyshev_radius(n, Exponent::two());
        EXPECT_NEAR(r2.value, 1.0, 1e-10);
        EXPECT_EQ(r2.method, RadiusMethod::FormulaP2);
        for (const auto& r : {r1, rinf, r2}) expect_consistent(r);
    }
}

TEST(Chebyshev, DimensionTwoAndThree) {
    for (double p : {1.1, 1.5, 3.0, 8.0}) {
        const auto r = bpgeo::chebyshev_radius(2, Exponent(p));
        EXPECT_EQ(r.value, 1.0);
        EXPECT_EQ(r.method, RadiusMethod::FormulaN2);
    }
    const auto r3 = bpgeo::chebyshev_radius(3, Exponent(3.0));
    EXPECT_NEAR(r3.value, kRadius3AtP3, 1e-12);
    EXPECT_EQ(r3.method, RadiusMethod::ClosedFormN3);
    expect_consistent(r3);
    const double oracle = bpgeo::opnorm_oracle_small(bpgeo::averager(3).mat() - Mat::identity(3), Exponent(3.0)).value;
    EXPECT_NEAR(oracle, kRadius3AtP3, 1e-7);
}

TEST(Chebyshev, ConjectureRouteIsTagged) {
    const auto r = bpgeo::chebyshev_radius(5, Exponent(3.0));
    EXPECT_EQ(r.method, RadiusMethod::Conjecture);
    EXPECT_TRUE(has_warning(r, "conjectured"));
    expect_consistent(r);
    EXPECT_BPGEO_ERROR(bpgeo::chebyshev_radius(5, Exponent(3.0), ChebyshevStrategy::Exact), ErrorCode::NoClosedForm);
    const auto b = bpgeo::chebyshev_radius(5, Exponent(3.0), ChebyshevStrategy::Bounds);
    EXPECT_EQ(b.method, RadiusMethod::Bounds);
    EXPECT_EQ(b.value, bpgeo::radius_bounds(5, Exponent(3.0)).second);
}

TEST(Chebyshev, EnumerationStrategyMatchesFormulas) {
    for (std::size_t n = 2; n <= 6; ++n) {
        for (auto p : {Exponent::one(), Exponent::two(), Exponent::inf()}) {
            const auto brute = bpgeo::chebyshev_radius(n, p, ChebyshevStrategy::Enumerate);
            const auto formula = bpgeo::chebyshev_radius(n, p, ChebyshevStrategy::Exact);
            EXPECT_NEAR(brute.value, formula.value, 1e-10) << n << " " << p.to_string();
        }
    }
}

TEST(Chebyshev, RadiusExceedsOneAwayFromEqualityCases) {
    for (std::size_t n = 3; n <= 6; ++n)
        for (double p : {1.5, 3.0}) {
            const double est =
                bpgeo::opnorm_estimate(bpgeo::averager(n).mat() - Mat::identity(n), Exponent(p)).value;
            EXPECT_GE(est, 1 + 1e-4) << n << " " << p;
            const auto [lo, hi] = bpgeo::radius_bounds(n, Exponent(p));
            EXPECT_GE(est, lo - 1e-12);
            EXPECT_LE(est, hi + 1e-12);
        }
}

TEST(ClosedForm, Examples) {
    EXPECT_NEAR(bpgeo::closed_form_radius_n3(Exponent(2.0)), 1.0, 1e-15);
    EXPECT_NEAR(bpgeo::closed_form_radius_n3(Exponent(3.0)), kRadius3AtP3, 1e-15);
    EXPECT_NEAR(bpgeo::closed_form_radius_n3(Exponent(1.5)), bpgeo::closed_form_radius_n3(Exponent(3.0)), 1e-14);
    EXPECT_BPGEO_ERROR(bpgeo::closed_form_radius_n3(Exponent::one()), ErrorCode::BadExponent);
    EXPECT_BPGEO_ERROR(bpgeo::closed_form_radius_n3(Exponent::inf()), ErrorCode::BadExponent);
}

TEST(ClosedForm, MatchesOracleAndDirectEvaluation) {
    const Mat a = bpgeo::averager(3).mat() - Mat::identity(3);
    for (double p : {1.2, 1.5, 2.5, 3.0, 4.0, 5.0}) {
        const double cf = bpgeo::closed_form_radius_n3(Exponent(p));
        EXPECT_NEAR(cf, closed_form_n3_reference(p), 1e-14);
        EXPECT_NEAR(bpgeo::opnorm_oracle_small(a, Exponent(p)).value, cf, 1e-5) << p;
    }
}

TEST(Bounds, Examples) {
    for (double p : {1.3, 3.0, 6.0}) {
        const auto [lo, hi] = bpgeo::radius_bounds(2, Exponent(p));
        EXPECT_EQ(lo, 1.0);
        EXPECT_NEAR(hi, 1.0, 1e-15);
    }
    for (std::size_t n = 2; n <= 8; ++n) {
        const auto [lo, hi] = bpgeo::radius_bounds(n, Exponent(2.0));
        EXPECT_EQ(lo, 1.0);
        EXPECT_EQ(hi, 1.0);
    }
    const auto [lo, hi] = bpgeo::radius_bounds(3, Exponent(3.0));
    EXPECT_EQ(lo, 1.0);
    EXPECT_NEAR(hi, std::cbrt(4.0 / 3.0), 1e-15);
    EXPECT_NEAR(hi, 1.100642, 1e-6);
    EXPECT_BPGEO_ERROR(bpgeo::radius_bounds(3, Exponent::one()), ErrorCode::BadExponent);
}

TEST(ConjectureRoot, Examples) {
    EXPECT_BPGEO_ERROR(bpgeo::conjecture_root(Exponent(2.0)), ErrorCode::DegenerateExponent);
    const double x3 = bpgeo::conjecture_root(Exponent(3.0));
    EXPECT_NEAR(x3, 0.0893, 1e-4);
    EXPECT_LE(std::fabs(bpgeo::conjecture_function(x3, 2.0)), 1e-10);
}

TEST(ConjectureRoot, MatchesIndependentBisection) {
    for (double p : {1.2, 1.5, 2.5, 3.0, 4.0, 5.0}) {
        const double rho = p - 1;
        auto f = [rho](double x) {
            return rho * (1 + std::pow(x, 1 / rho)) * (1 - std::pow(x, rho - 1)) +
                   (1 + std::pow(x, rho)) * (1 - std::pow(x, 1 / rho - 1));
        };
        const double reference = bpgeo::testing::bisect_root(f, 1e-3);
        ASSERT_TRUE(std::isfinite(reference)) << p;
        EXPECT_NEAR(bpgeo::conjecture_root(Exponent(p)), reference, 1e-12) << p;
    }
}

TEST(ConjectureRadius, Examples) {
    const auto c3 = bpgeo::conjecture_radius(3, Exponent(3.0));
    EXPECT_EQ(c3.m1, 2);
    EXPECT_EQ(c3.m2, 3);
    EXPECT_NEAR(c3.value, bpgeo::closed_form_radius_n3(Exponent(3.0)), 1e-9);
    EXPECT_NEAR(c3.rho, 2.0, 0.0);
    EXPECT_NEAR(bpgeo::conjecture_radius(2, Exponent(3.0)).value, 1.0, 1e-9);
    const auto c4 = bpgeo::conjecture_radius(4, Exponent(3.0));
    const auto [lo, hi] = bpgeo::radius_bounds(4, Exponent(3.0));
    EXPECT_GE(c4.value, lo);
    EXPECT_LE(c4.value, hi);
    EXPECT_NEAR(c4.value, bpgeo::opnorm_estimate(bpgeo::averager(4).mat() - Mat::identity(4), Exponent(3.0)).value,
                1e-4);
}

TEST(ConjectureRadius, BlockSizesFollowTheRoot) {
    for (std::size_t n = 2; n <= 9; ++n)
        for (double p : {1.2, 1.5, 3.0, 5.0}) {
            const auto c = bpgeo::conjecture_radius(n, Exponent(p));
            const double ratio = static_cast<double>(n) / (c.x_p + 1);
            EXPECT_EQ(c.m1, static_cast<int>(std::floor(ratio)));
            EXPECT_EQ(c.m2, static_cast<int>(std::ceil(ratio)));
            EXPECT_GT(c.x_p, 0.0);
            EXPECT_LT(c.x_p, 1.0);
            EXPECT_LE(std::fabs(bpgeo::conjecture_function(c.x_p, c.rho)), 1e-10);
            // Two candidates never beat the full sweep over block sizes.
            EXPECT_LE(c.value, two_level_max_all_m(n, p) + 1e-12);
        }
}

TEST(ConjectureRadius, MatchesClosedFormOnLogGrid) {
    // 50 points, log-spaced, split across (1, 2) and (2, 6).
    std::vector<double> grid;
    for (int k = 0; k < 25; ++k) grid.push_back(std::exp(std::log(1.05) + (std::log(1.95) - std::log(1.05)) * k / 24));
    for (int k = 0; k < 25; ++k) grid.push_back(std::exp(std::log(2.05) + (std::log(6.0) - std::log(2.05)) * k / 24));
    ASSERT_EQ(grid.size(), 50u);
    for (double p : grid)
        EXPECT_NEAR(bpgeo::conjecture_radius(3, Exponent(p)).value, bpgeo::closed_form_radius_n3(Exponent(p)), 1e-9)
            << p;
}

TEST(ConjectureRadius, ConjugateExponentsAgree) {
    for (double p : {1.2, 1.5, 3.0, 5.0})
        for (std::size_t n = 2; n <= 8; ++n)
            EXPECT_NEAR(bpgeo::conjecture_radius(n, Exponent(p)).value,
                        bpgeo::conjecture_radius(n, Exponent(p).conjugate()).value, 1e-9)
                << n << " " << p;
}

TEST(ConjectureRadius, ConsistentWithLowerBoundsAndBounds) {
    for (std::size_t n : {4u, 5u, 6u})
        for (double p : {1.5, 3.0, 5.0}) {
            const double conj = bpgeo::conjecture_radius(n, Exponent(p)).value;
            const double est =
                bpgeo::opnorm_estimate(bpgeo::averager(n).mat() - Mat::identity(n), Exponent(p)).value;
            EXPECT_GE(conj, est - 1e-5) << n << " " << p;
            const auto [lo, hi] = bpgeo::radius_bounds(n, Exponent(p));
            EXPECT_GE(conj, lo);
            EXPECT_LE(conj, hi);
        }
}

TEST(Center, Examples) {
    const auto j4 = bpgeo::center_certificate(bpgeo::averager(4), Exponent::one(), 1e-9);
    EXPECT_TRUE(j4.is_center_candidate);
    EXPECT_DOUBLE_EQ(j4.attained, 1.5);
    EXPECT_DOUBLE_EQ(j4.reference, 1.5);

    const auto i3 = bpgeo::center_certificate(
        bpgeo::DoublyStochastic::from_permutation(bpgeo::PermutationMatrix::identity(3)), Exponent::one(), 1e-9);
    EXPECT_FALSE(i3.is_center_candidate);
    EXPECT_DOUBLE_EQ(i3.attained, 2.0);
    EXPECT_DOUBLE_EQ(i3.reference, 4.0 / 3.0);

    Mat m = bpgeo::averager(3).mat();
    m(0, 0) += 0.05;
    m(1, 1) += 0.05;
    m(0, 1) -= 0.05;
    m(1, 0) -= 0.05;
    const auto perturbed = bpgeo::center_certificate(bpgeo::validate_doubly_stochastic(m), Exponent::one(), 1e-9);
    EXPECT_FALSE(perturbed.is_center_candidate);
    EXPECT_NEAR(perturbed.attained, 2 * (1 - (1.0 / 3.0 - 0.05)), 1e-12);
}

TEST(Center, AveragerPassesAtEveryExponent) {
    for (std::size_t n = 2; n <= 5; ++n)
        for (double p : {1.0, 1.5, 2.0, 3.0, Exponent::kInf}) {
            const double tol = (p == 1.0 || p == 2.0 || std::isinf(p)) ? 1e-9 : 1e-6;
            EXPECT_TRUE(bpgeo::center_certificate(bpgeo::averager(n), Exponent(p), tol).is_center_candidate)
                << n << " " << p;
        }
}

TEST(Equidistance, Examples) {
    const auto a = bpgeo::equidistance_check(Exponent::one(), 4);
    EXPECT_TRUE(a.equidistant);
    EXPECT_DOUBLE_EQ(a.min_distance, 1.5);
    EXPECT_EQ(a.permutations, 24u);
    const auto b = bpgeo::equidistance_check(Exponent::two(), 3);
    EXPECT_TRUE(b.equidistant);
    EXPECT_NEAR(b.max_distance, 1.0, 1e-12);
    const auto c = bpgeo::equidistance_check(Exponent(3.0), 3);
    EXPECT_TRUE(c.equidistant);
    EXPECT_NEAR(c.min_distance, kRadius3AtP3, 1e-6);
    EXPECT_BPGEO_ERROR(bpgeo::equidistance_check(Exponent::one(), 7), ErrorCode::DimensionTooLarge);
}

TEST(SpectrumShift, Examples) {
    for (std::size_t n = 1; n <= 8; ++n) EXPECT_TRUE(bpgeo::spectrum_shift_check(bpgeo::averager(n), 1e-8).holds);
    bpgeo::Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(8);
        const auto p = bpgeo::DoublyStochastic::from_permutation(bpgeo::random_permutation(n, rng));
        EXPECT_TRUE(bpgeo::spectrum_shift_check(p, 1e-8).holds);
    }
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        bpgeo::SamplerConfig cfg;
        cfg.seed = seed;
        EXPECT_TRUE(bpgeo::spectrum_shift_check(bpgeo::random_sinkhorn(6, cfg), 1e-8).holds);
    }
    EXPECT_BPGEO_ERROR(bpgeo::spectrum_shift_check(bpgeo::averager(33), 1e-8), ErrorCode::DimensionTooLarge);
}

TEST(SpectrumShift, ReportsBothDegreeRaisedPolynomials) {
    const auto d = bpgeo::averager(3);
    const auto report = bpgeo::spectrum_shift_check(d, 1e-8);
    ASSERT_EQ(report.lhs.size(), 5u);
    ASSERT_EQ(report.rhs.size(), 5u);
    EXPECT_LE(report.max_deviation, 1e-12);
}

}  // namespace
