#include "bpgeo/opnorm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bpgeo/error.hpp"
#include "bpgeo/kernels.hpp"
#include "bpgeo/rng.hpp"

namespace bpgeo {

std::string_view to_string(NormMethod m) noexcept {
    switch (m) {
    case NormMethod::ExactP1: return "exact_p1";
    case NormMethod::ExactP2: return "exact_p2";
    case NormMethod::ExactPInf: return "exact_pinf";
    case NormMethod::PowerLowerBound: return "power_lower_bound";
    case NormMethod::ExhaustiveOracle: return "exhaustive_oracle";
    }
    return "unknown";
}

namespace {

/// ||A x||_p / ||x||_p, 0 for x = 0.
double ratio(const Mat& a, std::span<const double> x, Exponent p) {
    const double den = vector_pnorm(x, p);
    if (den == 0.0) return 0.0;
    return vector_pnorm(multiply(a, x), p) / den;
}

void normalize(std::vector<double>& x, Exponent p) {
    const double s = vector_pnorm(x, p);
    if (s > 0.0)
        for (double& v : x) v /= s;
}

/// sign(y_k) |y_k|^power, with y pre-scaled by max |y_k| to stay finite.
std::vector<double> signed_power(std::span<const double> y, double power) {
    const double scale = kernels::active().max_abs(y.data(), y.size());
    std::vector<double> out(y.size(), 0.0);
    if (scale == 0.0) return out;
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (y[k] == 0.0) continue;
        out[k] = std::copysign(std::pow(std::fabs(y[k]) / scale, power), y[k]);
    }
    return out;
}

bool all_zero(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

struct RunResult {
    double value = 0.0;
    std::vector<double> x;
    int iterations = 0;
    bool converged = false;
};

RunResult power_run(const Mat& a, Exponent p, std::vector<double> x, const PowerConfig& cfg) {
    const std::size_t n = a.n();
    const double pm1 = p.value() - 1.0;
    const double qm1 = 1.0 / pm1;

    // Degenerate starts (x = 0 or A x = 0) are nudged off the null space.
    for (int attempt = 0; attempt < 4; ++attempt) {
        normalize(x, p);
        if (!all_zero(x) && !all_zero(multiply(a, x))) break;
        for (std::size_t k = 0; k < n; ++k) x[k] += 0.1 * static_cast<double>(k + 1 + attempt) / static_cast<double>(n);
    }
    normalize(x, p);

    RunResult r;
    std::vector<double> y = multiply(a, x);
    r.value = vector_pnorm(y, p);
    r.x = x;
    if (r.value == 0.0) {
        r.converged = true;
        return r;
    }
    for (int it = 1; it <= cfg.max_iter; ++it) {
        r.iterations = it;
        std::vector<double> w = multiply_transposed(a, signed_power(y, pm1));
        if (all_zero(w)) {
            r.converged = true;
            break;
        }
        std::vector<double> x_next = signed_power(w, qm1);
        normalize(x_next, p);
        std::vector<double> y_next = multiply(a, x_next);
        const double v_next = vector_pnorm(y_next, p);
        if (v_next < r.value) {
            // Rounding-level decrease: the ascent has stalled at a fixed point.
            r.converged = true;
            break;
        }
        const bool small = v_next - r.value <= cfg.rel_tol * v_next;
        r.value = v_next;
        r.x = std::move(x_next);
        y = std::move(y_next);
        if (small) {
            r.converged = true;
            break;
        }
    }
    return r;
}

std::vector<std::vector<double>> start_vectors(std::size_t n, int restarts, std::uint64_t seed) {
    std::vector<std::vector<double>> starts;
    starts.reserve(static_cast<std::size_t>(restarts));
    starts.emplace_back(n, 1.0);
    for (std::size_t m = 1; m < n && starts.size() < static_cast<std::size_t>(restarts); ++m) {
        std::vector<double> v(n);
        for (std::size_t k = 0; k < n; ++k) v[k] = k < m ? static_cast<double>(n - m) : -static_cast<double>(m);
        starts.push_back(std::move(v));
    }
    Rng rng(seed);
    while (starts.size() < static_cast<std::size_t>(restarts)) {
        std::vector<double> v(n);
        for (double& x : v) x = rng.normal();
        starts.push_back(std::move(v));
    }
    starts.resize(static_cast<std::size_t>(restarts));
    return starts;
}

}  // namespace

NormEstimate opnorm_exact(const Mat& a, Exponent p) {
    const std::size_t n = a.n();
    const auto& k = kernels::active();
    NormEstimate est;
    if (p.is_one()) {
        std::vector<double> col(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) k.abs_accumulate(a.row(i).data(), col.data(), n);
        const auto best = static_cast<std::size_t>(std::max_element(col.begin(), col.end()) - col.begin());
        est.value = col[best];
        est.certificate.assign(n, 0.0);
        est.certificate[best] = 1.0;
        est.method = NormMethod::ExactP1;
    } else if (p.is_inf()) {
        std::size_t best = 0;
        double best_sum = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = k.abs_sum(a.row(i).data(), n);
            if (s > best_sum) {
                best_sum = s;
                best = i;
            }
        }
        est.value = best_sum;
        est.certificate.resize(n);
        for (std::size_t j = 0; j < n; ++j) est.certificate[j] = a(best, j) < 0.0 ? -1.0 : 1.0;
        est.method = NormMethod::ExactPInf;
    } else if (p.is_two()) {
        Mat vectors(n);
        const std::vector<double> evals = symmetric_eigenvalues(a.transpose() * a, &vectors);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = vectors(i, n - 1);
        normalize(v, p);
        est.value = vector_pnorm(multiply(a, v), p);
        est.certificate = std::move(v);
        est.method = NormMethod::ExactP2;
    } else {
        throw Error(ErrorCode::UnsupportedExponent, "no exact formula for p = " + p.to_string());
    }
    return est;
}

NormEstimate opnorm_estimate(const Mat& a, Exponent p, const PowerConfig& cfg) {
    if (p.is_one() || p.is_inf())
        throw Error(ErrorCode::BadExponent, "the power method needs 1 < p < inf, got " + p.to_string());
    if (cfg.max_iter < 1 || !(cfg.rel_tol > 0.0))
        throw Error(ErrorCode::InvalidArgument, "max_iter must be >= 1 and rel_tol positive");
    const std::size_t n = a.n();
    const int restarts = cfg.restarts > 0 ? cfg.restarts : 8 + 2 * static_cast<int>(n);

    NormEstimate best;
    best.method = NormMethod::PowerLowerBound;
    best.value = -1.0;
    best.converged = false;
    bool any_converged = false;
    int total_iters = 0;
    for (auto& start : start_vectors(n, restarts, cfg.seed)) {
        RunResult r = power_run(a, p, std::move(start), cfg);
        total_iters += r.iterations;
        any_converged = any_converged || r.converged;
        if (r.value > best.value) {
            best.value = r.value;
            best.certificate = std::move(r.x);
        }
    }
    best.value = ratio(a, best.certificate, p);
    best.iterations = total_iters;
    best.restarts_used = restarts;
    best.converged = any_converged;
    return best;
}

NormEstimate opnorm(const Mat& a, Exponent p, const PowerConfig& cfg) {
    if (p.has_exact_norm()) return opnorm_exact(a, p);
    return opnorm_estimate(a, p, cfg);
}

namespace {

std::vector<double> sphere2(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Maximises f on [lo, hi] assuming it is unimodal there.
template <class F>
double golden_max(F&& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

}  // namespace

NormEstimate opnorm_oracle_small(const Mat& a, Exponent p, int grid) {
    const std::size_t n = a.n();
    if (n > 3) throw Error(ErrorCode::DimensionTooLarge, "the exhaustive oracle supports n <= 3");
    if (n < 2) throw Error(ErrorCode::BadDimension, "the exhaustive oracle needs n >= 2");
    if (grid < 360) throw Error(ErrorCode::InvalidArgument, "grid must be >= 360");

    constexpr double pi = std::numbers::pi;
    NormEstimate est;
    est.method = NormMethod::ExhaustiveOracle;
    est.value = -1.0;
    auto consider = [&](std::vector<double> x) {
        const double v = ratio(a, x, p);
        if (v > est.value) {
            est.value = v;
            est.certificate = std::move(x);
        }
    };

    if (n == 2) {
        const double h = pi / grid;
        std::vector<double> f(static_cast<std::size_t>(grid));
        for (int k = 0; k < grid; ++k) f[static_cast<std::size_t>(k)] = ratio(a, sphere2(k * h), p);
        // f has period pi, so the sample ring wraps around.
        std::vector<int> peaks;
        for (int k = 0; k < grid; ++k) {
            const double prev = f[static_cast<std::size_t>((k + grid - 1) % grid)];
            const double next = f[static_cast<std::size_t>((k + 1) % grid)];
            const double cur = f[static_cast<std::size_t>(k)];
            if (cur >= prev && cur >= next) peaks.push_back(k);
        }
        std::sort(peaks.begin(), peaks.end(),
                  [&](int x, int y) { return f[static_cast<std::size_t>(x)] > f[static_cast<std::size_t>(y)]; });
        if (peaks.size() > 8) peaks.resize(8);
        for (int k : peaks) {
            consider(sphere2(k * h));
            const double t = golden_max([&](double th) { return ratio(a, sphere2(th), p); }, (k - 1) * h, (k + 1) * h);
            consider(sphere2(t));
        }
        est.iterations = grid;
    } else {
        // Three charts, one per cube face: coordinate k is 1 and the other two are
        // tan(alpha), tan(beta) with alpha, beta in [-pi/4, pi/4]. Up to sign they cover
        // the sphere without the pole singularity of spherical angles, which matters
        // because maximisers for p near 1 sit close to the coordinate axes.
        const int side = grid / 4 + 1;
        const double h = (pi / 2.0) / (side - 1);
        auto chart = [](int k, double alpha, double beta) {
            std::vector<double> x(3);
            x[static_cast<std::size_t>(k)] = 1.0;
            x[static_cast<std::size_t>((k + 1) % 3)] = std::tan(alpha);
            x[static_cast<std::size_t>((k + 2) % 3)] = std::tan(beta);
            return x;
        };
        const std::size_t per_chart = static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
        std::vector<double> f(3 * per_chart);
        auto at = [&](int k, int i, int j) -> double& {
            return f[static_cast<std::size_t>(k) * per_chart + static_cast<std::size_t>(i * side + j)];
        };
        auto angle = [&](int i) { return -pi / 4.0 + i * h; };
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < side; ++i)
                for (int j = 0; j < side; ++j) at(k, i, j) = ratio(a, chart(k, angle(i), angle(j)), p);

        struct Peak {
            int k, i, j;
        };
        std::vector<Peak> peaks;
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < side; ++i)
                for (int j = 0; j < side; ++j) {
                    const double cur = at(k, i, j);
                    bool peak = true;
                    for (int di = -1; di <= 1 && peak; ++di)
                        for (int dj = -1; dj <= 1; ++dj) {
                            const int i2 = i + di, j2 = j + dj;
                            if ((di == 0 && dj == 0) || i2 < 0 || i2 >= side || j2 < 0 || j2 >= side) continue;
                            if (at(k, i2, j2) > cur) {
                                peak = false;
                                break;
                            }
                        }
                    if (peak) peaks.push_back({k, i, j});
                }
        std::sort(peaks.begin(), peaks.end(),
                  [&](const Peak& x, const Peak& y) { return at(x.k, x.i, x.j) > at(y.k, y.i, y.j); });
        if (peaks.size() > 8) peaks.resize(8);

        // Compass search in chart coordinates; the chart stays valid past +-pi/4.
        static constexpr int dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
        const double limit = pi / 2.0 - 1e-3;
        for (const Peak& pk : peaks) {
            double alpha = angle(pk.i), beta = angle(pk.j);
            double cur = at(pk.k, pk.i, pk.j);
            double step = h;
            while (step > 1e-13) {
                bool moved = false;
                for (const auto& d : dirs) {
                    const double a2 = alpha + d[0] * step, b2 = beta + d[1] * step;
                    if (std::fabs(a2) > limit || std::fabs(b2) > limit) continue;
                    const double v = ratio(a, chart(pk.k, a2, b2), p);
                    if (v > cur) {
                        cur = v;
                        alpha = a2;
                        beta = b2;
                        moved = true;
                    }
                }
                if (!moved) step *= 0.5;
            }
            consider(chart(pk.k, alpha, beta));
        }
        est.iterations = static_cast<int>(3 * per_chart);
    }
    normalize(est.certificate, p);
    est.value = ratio(a, est.certificate, p);
    return est;
}

}  // namespace bpgeo
