#pragma once

// Data-parallel inner loops shared by the dense matrix code.
//
// Every kernel has a portable scalar reference implementation. When the
// build and the running CPU both support AVX2+FMA, an intrinsics variant is
// selected at first use. The two are required to agree to a few ulps (sums
// are reassociated across lanes), which tests/kernels_test.cpp checks.
//
// Setting BPGEO_FORCE_SCALAR=1 in the environment pins the scalar table.

#include <cstddef>
#include <string_view>

namespace bpgeo::kernels {

struct KernelTable {
    std::string_view name;
    /// sum_k a[k] * b[k]
    double (*dot)(const double* a, const double* b, std::size_t len);
    /// sum_k |a[k]|
    double (*abs_sum)(const double* a, std::size_t len);
    /// max_k |a[k]|, 0 for len == 0
    double (*max_abs)(const double* a, std::size_t len);
    /// acc[k] += |a[k]|
    void (*abs_accumulate)(const double* a, double* acc, std::size_t len);
    /// y[k] += alpha * x[k]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t len);
    /// max_k |a[k] - b[k]|
    double (*max_abs_diff)(const double* a, const double* b, std::size_t len);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_table() noexcept;

/// Table chosen for this process (AVX2 if available, else scalar).
const KernelTable& active() noexcept;

}  // namespace bpgeo::kernels
