#include "kernels_impl.hpp"

#include <algorithm>
#include <cmath>

namespace bpgeo::kernels::scalar {

double dot(const double* a, const double* b, std::size_t len) {
    double s = 0.0;
    for (std::size_t k = 0; k < len; ++k) s += a[k] * b[k];
    return s;
}

double abs_sum(const double* a, std::size_t len) {
    double s = 0.0;
    for (std::size_t k = 0; k < len; ++k) s += std::fabs(a[k]);
    return s;
}

double max_abs(const double* a, std::size_t len) {
    double m = 0.0;
    for (std::size_t k = 0; k < len; ++k) m = std::max(m, std::fabs(a[k]));
    return m;
}

void abs_accumulate(const double* a, double* acc, std::size_t len) {
    for (std::size_t k = 0; k < len; ++k) acc[k] += std::fabs(a[k]);
}

void axpy(double alpha, const double* x, double* y, std::size_t len) {
    for (std::size_t k = 0; k < len; ++k) y[k] += alpha * x[k];
}

double max_abs_diff(const double* a, const double* b, std::size_t len) {
    double m = 0.0;
    for (std::size_t k = 0; k < len; ++k) m = std::max(m, std::fabs(a[k] - b[k]));
    return m;
}

}  // namespace bpgeo::kernels::scalar
