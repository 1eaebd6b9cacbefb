#include "bpgeo/sampling.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "bpgeo/error.hpp"

namespace bpgeo {

void SamplerConfig::check() const {
    if (!(sinkhorn_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "sinkhorn_tol must be positive");
    if (sinkhorn_max_iter < 1) throw Error(ErrorCode::InvalidArgument, "sinkhorn_max_iter must be >= 1");
    if (mixture_terms < 1) throw Error(ErrorCode::InvalidArgument, "mixture_terms must be >= 1");
}

DoublyStochastic sinkhorn(const Mat& m, const SamplerConfig& cfg) {
    cfg.check();
    const std::size_t n = m.n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!(m(i, j) > 0.0))
                throw Error(ErrorCode::NonPositiveEntry,
                            "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not positive");

    Mat a = m;
    std::vector<double> sums(n);
    auto row_sums = [&] {
        for (std::size_t i = 0; i < n; ++i) sums[i] = std::accumulate(a.row(i).begin(), a.row(i).end(), 0.0);
    };
    auto col_sums = [&] {
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sums[j] += a(i, j);
    };
    auto worst = [&] {
        double w = 0.0;
        for (double s : sums) w = std::max(w, std::fabs(s - 1.0));
        return w;
    };

    for (int it = 0; it < cfg.sinkhorn_max_iter; ++it) {
        row_sums();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) /= sums[i];
        col_sums();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) /= sums[j];
        // Columns are exact up to rounding after the last pass; rows decide.
        row_sums();
        if (worst() <= cfg.sinkhorn_tol) {
            col_sums();
            if (worst() <= cfg.sinkhorn_tol) return validate_doubly_stochastic(a, std::max(cfg.sinkhorn_tol, kDefaultValidationTol));
        }
    }
    throw Error(ErrorCode::NoConvergence,
                "sinkhorn did not balance within " + std::to_string(cfg.sinkhorn_max_iter) + " iterations");
}

DoublyStochastic random_sinkhorn(std::size_t n, const SamplerConfig& cfg) {
    Rng rng(cfg.seed);
    Mat m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = std::exp(rng.uniform());
    return sinkhorn(m, cfg);
}

DoublyStochastic random_birkhoff_mixture(std::size_t n, const SamplerConfig& cfg) {
    cfg.check();
    if (n == 0) throw Error(ErrorCode::BadDimension, "n must be >= 1");
    Rng rng(cfg.seed);
    const auto k = static_cast<std::size_t>(cfg.mixture_terms);
    std::vector<PermutationMatrix> perms;
    perms.reserve(k);
    for (std::size_t t = 0; t < k; ++t) perms.push_back(random_permutation(n, rng));
    std::vector<double> weights(k);
    for (double& w : weights) w = rng.exponential();
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (total == 0.0) std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(k));
    else
        for (double& w : weights) w /= total;
    return permutation_mixture(weights, perms);
}

DoublyStochastic permutation_mixture(std::span<const double> weights, std::span<const PermutationMatrix> perms) {
    if (weights.size() != perms.size() || perms.empty())
        throw Error(ErrorCode::SizeMismatch, "need one weight per permutation");
    const std::size_t n = perms.front().n();
    Mat m(n);
    for (std::size_t t = 0; t < perms.size(); ++t) {
        if (perms[t].n() != n) throw Error(ErrorCode::SizeMismatch, "permutations of different sizes");
        if (!(weights[t] >= 0.0)) throw Error(ErrorCode::InvalidArgument, "mixture weights must be nonnegative");
        for (std::size_t i = 0; i < n; ++i) m(i, static_cast<std::size_t>(perms[t][i])) += weights[t];
    }
    return validate_doubly_stochastic(m);
}

void for_each_permutation(std::size_t n, const std::function<void(const PermutationMatrix&)>& visit) {
    if (n == 0) throw Error(ErrorCode::BadDimension, "n must be >= 1");
    if (n > kMaxEnumerationDim)
        throw Error(ErrorCode::DimensionTooLarge, "enumeration supports n <= 10, got " + std::to_string(n));
    std::vector<int> a(n);
    std::iota(a.begin(), a.end(), 0);
    std::vector<std::size_t> c(n, 0);
    visit(PermutationMatrix(a));
    std::size_t i = 1;
    while (i < n) {
        if (c[i] < i) {
            if (i % 2 == 0) std::swap(a[0], a[i]);
            else std::swap(a[c[i]], a[i]);
            visit(PermutationMatrix(a));
            ++c[i];
            i = 1;
        } else {
            c[i] = 0;
            ++i;
        }
    }
}

std::vector<PermutationMatrix> enumerate_permutations(std::size_t n) {
    std::vector<PermutationMatrix> out;
    for_each_permutation(n, [&](const PermutationMatrix& p) { out.push_back(p); });
    return out;
}

PermutationMatrix random_permutation(std::size_t n, Rng& rng) {
    if (n == 0) throw Error(ErrorCode::BadDimension, "n must be >= 1");
    std::vector<int> s(n);
    std::iota(s.begin(), s.end(), 0);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(s[i], s[rng.below(i + 1)]);
    return PermutationMatrix(std::move(s));
}

PermutationMatrix random_permutation(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return random_permutation(n, rng);
}

}  // namespace bpgeo
