#pragma once

#include <cstddef>

namespace bpgeo::kernels {

namespace scalar {
double dot(const double* a, const double* b, std::size_t len);
double abs_sum(const double* a, std::size_t len);
double max_abs(const double* a, std::size_t len);
void abs_accumulate(const double* a, double* acc, std::size_t len);
void axpy(double alpha, const double* x, double* y, std::size_t len);
double max_abs_diff(const double* a, const double* b, std::size_t len);
}  // namespace scalar

#if defined(BPGEO_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t len);
double abs_sum(const double* a, std::size_t len);
double max_abs(const double* a, std::size_t len);
void abs_accumulate(const double* a, double* acc, std::size_t len);
void axpy(double alpha, const double* x, double* y, std::size_t len);
double max_abs_diff(const double* a, const double* b, std::size_t len);
}  // namespace avx2
#endif

}  // namespace bpgeo::kernels
