#include "bpgeo/chebgeo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "bpgeo/error.hpp"
#include "bpgeo/sampling.hpp"

namespace bpgeo {

std::string_view to_string(RadiusMethod m) noexcept {
    switch (m) {
    case RadiusMethod::FormulaP1: return "formula_p1";
    case RadiusMethod::FormulaPInf: return "formula_pinf";
    case RadiusMethod::FormulaP2: return "formula_p2";
    case RadiusMethod::FormulaN2: return "formula_n2";
    case RadiusMethod::ClosedFormN3: return "closed_form_n3";
    case RadiusMethod::Conjecture: return "conjecture";
    case RadiusMethod::PermutationEnumeration: return "permutation_enumeration";
    case RadiusMethod::Estimate: return "estimate";
    case RadiusMethod::Bounds: return "bounds";
    }
    return "unknown";
}

namespace {

constexpr const char* kConjectured = "conjectured, unproven";
constexpr const char* kLowerBound = "value is a lower bound";

void require_open_exponent(Exponent p, const char* what) {
    if (p.is_one() || p.is_inf())
        throw Error(ErrorCode::BadExponent, std::string(what) + " needs 1 < p < inf, got " + p.to_string());
}

/// J_n - I_n.
Mat centered_identity_gap(std::size_t n) { return averager(n).mat() - Mat::identity(n); }

RadiusReport min_entry_radius(const DoublyStochastic& d, RadiusMethod method) {
    const std::size_t n = d.n();
    std::size_t l = 0, k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (d(i, j) < d(l, k)) {
                l = i;
                k = j;
            }
    std::vector<int> sigma(n);
    for (std::size_t i = 0; i < n; ++i) sigma[i] = static_cast<int>(i);
    std::swap(sigma[l], sigma[k]);  // identity with rows l and k exchanged has sigma(l) = k

    RadiusReport r;
    r.value = 2.0 * (1.0 - d(l, k));
    r.method = method;
    r.lower_bound = r.value;
    r.upper_bound = r.value;
    r.maximizer = PermutationMatrix(std::move(sigma));
    return r;
}

/// ((r-1)^(p-1) + 1)^(1/p) ((r-1)^(1/(p-1)) + 1)^(1-1/p) / r with r = n/m.
double two_level_value(std::size_t n, int m, double p) {
    if (static_cast<std::size_t>(m) >= n) return 1.0;
    const double r = static_cast<double>(n) / m;
    const double a = std::pow(std::pow(r - 1.0, p - 1.0) + 1.0, 1.0 / p);
    const double b = std::pow(std::pow(r - 1.0, 1.0 / (p - 1.0)) + 1.0, 1.0 - 1.0 / p);
    return a * b / r;
}

}  // namespace

RadiusReport bounding_radius_l1(const DoublyStochastic& d) { return min_entry_radius(d, RadiusMethod::FormulaP1); }

RadiusReport bounding_radius_linf(const DoublyStochastic& d) { return min_entry_radius(d, RadiusMethod::FormulaPInf); }

RadiusReport bounding_radius_enumerate(const DoublyStochastic& d, Exponent p, const PowerConfig& cfg) {
    const std::size_t n = d.n();
    if (n > kMaxBallEnumerationDim)
        throw Error(ErrorCode::DimensionTooLarge, "permutation enumeration supports n <= 8, got " + std::to_string(n));

    double best = -1.0;
    std::optional<PermutationMatrix> arg;
    for_each_permutation(n, [&](const PermutationMatrix& perm) {
        Mat diff = d.mat();
        for (std::size_t i = 0; i < n; ++i) diff(i, static_cast<std::size_t>(perm[i])) -= 1.0;
        const double v = opnorm(diff, p, cfg).value;
        if (v > best || (v == best && perm < *arg)) {
            best = v;
            arg = perm;
        }
    });

    RadiusReport r;
    r.value = best;
    r.method = RadiusMethod::PermutationEnumeration;
    r.maximizer = std::move(arg);
    r.lower_bound = best;
    if (p.has_exact_norm()) {
        r.upper_bound = best;
    } else {
        // Riesz-Thorin: ||A||_p <= ||A||_1^(1/p) ||A||_inf^(1-1/p), and r_1 = r_inf.
        r.upper_bound = 2.0 * (1.0 - min_entry(d.mat()));
        r.warnings.emplace_back(kLowerBound);
    }
    return r;
}

std::pair<double, double> radius_bounds(std::size_t n, Exponent p) {
    require_open_exponent(p, "radius_bounds");
    if (n < 2) throw Error(ErrorCode::BadDimension, "radius_bounds needs n >= 2");
    const double base = 2.0 * static_cast<double>(n - 1) / static_cast<double>(n);
    return {1.0, std::pow(base, std::fabs(2.0 / p.value() - 1.0))};
}

double closed_form_radius_n3(Exponent p) {
    require_open_exponent(p, "closed_form_radius_n3");
    const double q = p.value();
    return std::pow(std::pow(2.0, q - 1.0) + 1.0, 1.0 / q) *
           std::pow(std::pow(2.0, 1.0 / (q - 1.0)) + 1.0, 1.0 - 1.0 / q) / 3.0;
}

double conjecture_function(double x, double rho) {
    return rho * (1.0 + std::pow(x, 1.0 / rho)) * (1.0 - std::pow(x, rho - 1.0)) +
           (1.0 + std::pow(x, rho)) * (1.0 - std::pow(x, 1.0 / rho - 1.0));
}

double conjecture_root(Exponent p) {
    require_open_exponent(p, "conjecture_root");
    if (p.is_two()) throw Error(ErrorCode::DegenerateExponent, "the conjecture function vanishes identically at p = 2");
    const double rho = p.value() - 1.0;
    auto f = [rho](double x) { return conjecture_function(x, rho); };

    constexpr int kSteps = 1000;
    double lo = 0.0, hi = 0.0;
    bool found = false;
    double f_prev = f(1.0 / kSteps);
    for (int k = 1; k < kSteps - 1; ++k) {
        const double x = static_cast<double>(k) / kSteps;
        if (f_prev == 0.0) return x;
        const double x_next = static_cast<double>(k + 1) / kSteps;
        const double f_next = f(x_next);
        if (std::signbit(f_prev) != std::signbit(f_next)) {
            lo = x;
            hi = x_next;
            found = true;
            break;
        }
        f_prev = f_next;
    }
    if (!found) throw Error(ErrorCode::NoBracket, "no sign change of the conjecture function on (0, 1) for p = " + p.to_string());

    const bool lo_negative = std::signbit(f(lo));
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == lo_negative) lo = mid;
        else hi = mid;
    }
    const double root = std::fabs(f(lo)) <= std::fabs(f(hi)) ? lo : hi;
    if (std::fabs(f(root)) > 1e-10)
        throw Error(ErrorCode::NoConvergence, "bisection residual above 1e-10 for p = " + p.to_string());
    return root;
}

ConjectureResult conjecture_radius(std::size_t n, Exponent p) {
    if (n < 2) throw Error(ErrorCode::BadDimension, "conjecture_radius needs n >= 2");
    ConjectureResult c;
    c.p = p.value();
    c.rho = p.value() - 1.0;
    c.x_p = conjecture_root(p);
    const double t = static_cast<double>(n) / (c.x_p + 1.0);
    c.m1 = static_cast<int>(std::floor(t));
    c.m2 = static_cast<int>(std::ceil(t));
    c.value = std::max(two_level_value(n, c.m1, c.p), two_level_value(n, c.m2, c.p));
    return c;
}

RadiusReport chebyshev_radius(std::size_t n, Exponent p, ChebyshevStrategy strategy, const PowerConfig& cfg) {
    if (n == 0) throw Error(ErrorCode::BadDimension, "n must be >= 1");
    RadiusReport r;
    auto exact = [&](double value, RadiusMethod m) {
        r.value = value;
        r.method = m;
        r.lower_bound = value;
        r.upper_bound = value;
        if (!p.has_exact_norm() && n >= 2) std::tie(r.lower_bound, r.upper_bound) = radius_bounds(n, p);
        return r;
    };

    if (n == 1) {
        // Omega_1 is the single point [1].
        return exact(0.0, RadiusMethod::PermutationEnumeration);
    }

    switch (strategy) {
    case ChebyshevStrategy::Enumerate: {
        RadiusReport e = bounding_radius_enumerate(averager(n), p, cfg);
        if (!p.has_exact_norm()) {
            const auto [lo, hi] = radius_bounds(n, p);
            e.lower_bound = std::max(e.lower_bound, lo);
            e.upper_bound = std::min(e.upper_bound, hi);
            e.value = std::max(e.value, e.lower_bound);
        }
        return e;
    }
    case ChebyshevStrategy::Bounds: {
        if (p.has_exact_norm()) break;  // the bounds collapse onto the exact value
        std::tie(r.lower_bound, r.upper_bound) = radius_bounds(n, p);
        r.value = r.upper_bound;
        r.method = RadiusMethod::Bounds;
        r.warnings.emplace_back("value is the upper bound");
        return r;
    }
    case ChebyshevStrategy::Conjecture: {
        const ConjectureResult c = conjecture_radius(n, p);
        std::tie(r.lower_bound, r.upper_bound) = radius_bounds(n, p);
        r.value = c.value;
        r.method = RadiusMethod::Conjecture;
        r.warnings.emplace_back(kConjectured);
        return r;
    }
    case ChebyshevStrategy::Auto:
    case ChebyshevStrategy::Exact: break;
    }

    const double nd = static_cast<double>(n);
    if (p.is_one()) return exact(2.0 * (1.0 - 1.0 / nd), RadiusMethod::FormulaP1);
    if (p.is_inf()) return exact(2.0 * (1.0 - 1.0 / nd), RadiusMethod::FormulaPInf);
    if (p.is_two()) return exact(1.0, RadiusMethod::FormulaP2);
    if (n == 2) return exact(1.0, RadiusMethod::FormulaN2);
    if (n == 3) return exact(closed_form_radius_n3(p), RadiusMethod::ClosedFormN3);
    if (strategy == ChebyshevStrategy::Exact)
        throw Error(ErrorCode::NoClosedForm,
                    "no proven formula for n = " + std::to_string(n) + ", p = " + p.to_string());

    std::tie(r.lower_bound, r.upper_bound) = radius_bounds(n, p);
    const NormEstimate est = opnorm_estimate(centered_identity_gap(n), p, cfg);
    r.lower_bound = std::max(r.lower_bound, est.value);
    try {
        const ConjectureResult c = conjecture_radius(n, p);
        r.value = c.value;
        r.method = RadiusMethod::Conjecture;
        r.warnings.emplace_back(kConjectured);
        if (est.value > c.value + 1e-9) {
            r.warnings.emplace_back("power-method lower bound exceeds the conjectured value");
            r.value = est.value;
            r.method = RadiusMethod::Estimate;
        } else {
            // Agreement to rounding; keep lower <= value.
            r.lower_bound = std::min(r.lower_bound, r.value);
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoBracket && e.code() != ErrorCode::NoConvergence) throw;
        r.value = r.lower_bound;
        r.method = RadiusMethod::Estimate;
        r.warnings.emplace_back(kLowerBound);
        r.warnings.emplace_back("conjecture unavailable: " + e.detail());
    }
    return r;
}

CenterCertificate center_certificate(const DoublyStochastic& d, Exponent p, double tol, const PowerConfig& cfg) {
    if (d.n() > kMaxBallEnumerationDim)
        throw Error(ErrorCode::DimensionTooLarge, "center_certificate enumerates permutations; n <= 8");
    RadiusReport ball = bounding_radius_enumerate(d, p, cfg);
    CenterCertificate c;
    c.attained = ball.value;
    c.worst_permutation = *ball.maximizer;
    c.reference = opnorm(centered_identity_gap(d.n()), p, cfg).value;
    c.is_center_candidate = c.attained <= c.reference + tol;
    return c;
}

EquidistanceReport equidistance_check(Exponent p, std::size_t n, const PowerConfig& cfg) {
    if (n > 6) throw Error(ErrorCode::DimensionTooLarge, "equidistance_check supports n <= 6");
    const Mat j = averager(n).mat();
    EquidistanceReport rep;
    rep.tolerance = p.has_exact_norm() ? 1e-9 : 1e-6;
    rep.min_distance = std::numeric_limits<double>::infinity();
    rep.max_distance = -1.0;
    for_each_permutation(n, [&](const PermutationMatrix& perm) {
        const double v = opnorm(j - perm.to_mat(), p, cfg).value;
        rep.min_distance = std::min(rep.min_distance, v);
        rep.max_distance = std::max(rep.max_distance, v);
        ++rep.permutations;
    });
    rep.equidistant = rep.max_distance - rep.min_distance <= rep.tolerance;
    return rep;
}

SpectrumShiftReport spectrum_shift_check(const DoublyStochastic& d, double tol) {
    const std::size_t n = d.n();
    if (n > 32) throw Error(ErrorCode::DimensionTooLarge, "spectrum_shift_check supports n <= 32");
    SpectrumShiftReport rep;
    rep.lhs = char_poly(d.mat() - averager(n).mat()).times_linear(1.0).coeffs();
    rep.rhs = char_poly(d.mat()).coeffs();
    rep.rhs.push_back(0.0);
    double biggest = 0.0;
    for (std::size_t k = 0; k < rep.lhs.size(); ++k) {
        biggest = std::max({biggest, std::fabs(rep.lhs[k]), std::fabs(rep.rhs[k])});
        rep.max_deviation = std::max(rep.max_deviation, std::fabs(rep.lhs[k] - rep.rhs[k]));
    }
    rep.scale = 1.0 + biggest;
    rep.holds = rep.max_deviation <= tol * rep.scale;
    return rep;
}

}  // namespace bpgeo
