#pragma once

#include <cstdint>
#include <span>

namespace bpgeo {

/// xoshiro256** 1.0 (Blackman & Vigna), state seeded by four successive
/// splitmix64 outputs of the 64-bit seed. All derived draws below are
/// specified in terms of next() only, so any port that reproduces the
/// generator reproduces every sampled matrix.
///
/// This generator is fixed; changing it invalidates stored test corpora.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept;

    std::uint64_t next() noexcept;

    /// (next() >> 11) * 2^-53, in [0, 1).
    double uniform() noexcept;

    /// Uniform integer in [0, bound) by rejection on the top bits. bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept;

    /// -log(1 - uniform()).
    double exponential() noexcept;

    /// Box-Muller using two uniform() draws; the second variate is discarded.
    double normal() noexcept;

private:
    std::uint64_t s_[4];
};

}  // namespace bpgeo
