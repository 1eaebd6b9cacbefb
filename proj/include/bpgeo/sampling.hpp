#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bpgeo/mat.hpp"
#include "bpgeo/rng.hpp"

namespace bpgeo {

struct SamplerConfig {
    std::uint64_t seed = 0;
    double sinkhorn_tol = 1e-10;
    int sinkhorn_max_iter = 100000;
    int mixture_terms = 8;

    /// Throws InvalidArgument if any invariant is violated.
    void check() const;
};

/// Alternating row/column normalisation of a strictly positive matrix.
/// Stops once every row and column sum is within cfg.sinkhorn_tol of 1.
DoublyStochastic sinkhorn(const Mat& m, const SamplerConfig& cfg);

/// exp(U[0,1]) entries, balanced by sinkhorn.
DoublyStochastic random_sinkhorn(std::size_t n, const SamplerConfig& cfg);

/// Sum of cfg.mixture_terms random permutations weighted by a uniform
/// Dirichlet draw (normalised exponentials).
DoublyStochastic random_birkhoff_mixture(std::size_t n, const SamplerConfig& cfg);

/// sum_i weights[i] * perms[i]; weights must be positive and sum to 1.
DoublyStochastic permutation_mixture(std::span<const double> weights, std::span<const PermutationMatrix> perms);

inline constexpr std::size_t kMaxEnumerationDim = 10;

/// Visits all n! permutations once each (iterative Heap's algorithm).
/// Throws DimensionTooLarge for n > 10.
void for_each_permutation(std::size_t n, const std::function<void(const PermutationMatrix&)>& visit);

std::vector<PermutationMatrix> enumerate_permutations(std::size_t n);

/// Fisher-Yates: for i = n-1 down to 1, swap sigma[i] with sigma[below(i+1)].
PermutationMatrix random_permutation(std::size_t n, Rng& rng);
PermutationMatrix random_permutation(std::size_t n, std::uint64_t seed);

}  // namespace bpgeo
