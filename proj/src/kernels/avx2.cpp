// Compiled with -mavx2 -mfma. Only reached through the dispatch table after
// a runtime CPU check, so nothing here may be inlined into generic code.
#include "kernels_impl.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace bpgeo::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d v) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(sign, v);
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_max_sd(lo, sh));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t len) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= len; k += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc);
    double s = hsum(acc);
    for (; k < len; ++k) s += a[k] * b[k];
    return s;
}

double abs_sum(const double* a, std::size_t len) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= len; k += 4) acc = _mm256_add_pd(acc, abs_pd(_mm256_loadu_pd(a + k)));
    double s = hsum(acc);
    for (; k < len; ++k) s += std::fabs(a[k]);
    return s;
}

double max_abs(const double* a, std::size_t len) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= len; k += 4) acc = _mm256_max_pd(acc, abs_pd(_mm256_loadu_pd(a + k)));
    double m = hmax(acc);
    for (; k < len; ++k) m = std::max(m, std::fabs(a[k]));
    return m;
}

void abs_accumulate(const double* a, double* acc, std::size_t len) {
    std::size_t k = 0;
    for (; k + 4 <= len; k += 4) {
        __m256d v = _mm256_add_pd(_mm256_loadu_pd(acc + k), abs_pd(_mm256_loadu_pd(a + k)));
        _mm256_storeu_pd(acc + k, v);
    }
    for (; k < len; ++k) acc[k] += std::fabs(a[k]);
}

void axpy(double alpha, const double* x, double* y, std::size_t len) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t k = 0;
    for (; k + 4 <= len; k += 4) {
        __m256d v = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k));
        _mm256_storeu_pd(y + k, v);
    }
    for (; k < len; ++k) y[k] += alpha * x[k];
}

double max_abs_diff(const double* a, const double* b, std::size_t len) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= len; k += 4)
        acc = _mm256_max_pd(acc, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k))));
    double m = hmax(acc);
    for (; k < len; ++k) m = std::max(m, std::fabs(a[k] - b[k]));
    return m;
}

}  // namespace bpgeo::kernels::avx2
