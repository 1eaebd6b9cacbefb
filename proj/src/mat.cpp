#include "bpgeo/mat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bpgeo/error.hpp"
#include "bpgeo/kernels.hpp"

namespace bpgeo {

namespace {

void require_same_size(const Mat& a, const Mat& b) {
    if (a.n() != b.n())
        throw Error(ErrorCode::SizeMismatch,
                    std::to_string(a.n()) + "x" + std::to_string(a.n()) + " vs " + std::to_string(b.n()) + "x" +
                        std::to_string(b.n()));
}

std::string index_pair(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

// --- Mat -------------------------------------------------------------------

Mat::Mat(std::size_t n) : n_(n), data_(n * n, 0.0) {
    if (n == 0) throw Error(ErrorCode::BadDimension, "matrix dimension must be positive");
}

Mat Mat::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) throw Error(ErrorCode::BadDimension, "matrix has no rows");
    Mat m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw Error(ErrorCode::NotSquare, "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                                  " entries, expected " + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(rows[i][j])) throw Error(ErrorCode::NonFinite, "entry " + index_pair(i, j));
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<std::vector<double>> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(v);
}

Mat Mat::identity(std::size_t n) {
    Mat m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::constant(std::size_t n, double value) {
    Mat m(n);
    std::fill(m.data_.begin(), m.data_.end(), value);
    return m;
}

Mat Mat::transpose() const {
    Mat t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Mat::trace() const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
}

bool Mat::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Mat& Mat::operator+=(const Mat& other) {
    require_same_size(*this, other);
    kernels::active().axpy(1.0, other.data_.data(), data_.data(), data_.size());
    return *this;
}

Mat& Mat::operator-=(const Mat& other) {
    require_same_size(*this, other);
    kernels::active().axpy(-1.0, other.data_.data(), data_.data(), data_.size());
    return *this;
}

Mat& Mat::operator*=(double s) noexcept {
    for (double& v : data_) v *= s;
    return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
    require_same_size(a, b);
    const auto& k = kernels::active();
    const std::size_t n = a.n();
    Mat c(n);
    for (std::size_t i = 0; i < n; ++i) {
        double* out = c.data_.data() + i * n;
        for (std::size_t l = 0; l < n; ++l) {
            const double s = a(i, l);
            if (s != 0.0) k.axpy(s, b.data_.data() + l * n, out, n);
        }
    }
    return c;
}

std::vector<double> multiply(const Mat& a, std::span<const double> x) {
    const std::size_t n = a.n();
    if (x.size() != n) throw Error(ErrorCode::SizeMismatch, "vector length does not match matrix");
    const auto& k = kernels::active();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = k.dot(a.row(i).data(), x.data(), n);
    return y;
}

std::vector<double> multiply_transposed(const Mat& a, std::span<const double> x) {
    const std::size_t n = a.n();
    if (x.size() != n) throw Error(ErrorCode::SizeMismatch, "vector length does not match matrix");
    const auto& k = kernels::active();
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] != 0.0) k.axpy(x[i], a.row(i).data(), y.data(), n);
    return y;
}

double max_abs_diff(const Mat& a, const Mat& b) {
    require_same_size(a, b);
    return kernels::active().max_abs_diff(a.data().data(), b.data().data(), a.data().size());
}

double min_entry(const Mat& m) noexcept {
    return *std::min_element(m.data().begin(), m.data().end());
}

// --- PermutationMatrix -------------------------------------------------------

PermutationMatrix::PermutationMatrix(std::vector<int> sigma) : sigma_(std::move(sigma)) {
    const std::size_t n = sigma_.size();
    if (n == 0) throw Error(ErrorCode::InvalidPermutation, "empty permutation");
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const int s = sigma_[i];
        if (s < 0 || static_cast<std::size_t>(s) >= n || seen[static_cast<std::size_t>(s)])
            throw Error(ErrorCode::InvalidPermutation, "sigma is not a bijection at position " + std::to_string(i));
        seen[static_cast<std::size_t>(s)] = true;
    }
}

PermutationMatrix PermutationMatrix::identity(std::size_t n) {
    std::vector<int> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<int>(i);
    return PermutationMatrix(std::move(s));
}

Mat PermutationMatrix::to_mat() const {
    Mat m(n());
    for (std::size_t i = 0; i < n(); ++i) m(i, static_cast<std::size_t>(sigma_[i])) = 1.0;
    return m;
}

// --- DoublyStochastic --------------------------------------------------------

DoublyStochastic DoublyStochastic::from_permutation(const PermutationMatrix& p) {
    return DoublyStochastic(p.to_mat(), kDefaultValidationTol);
}

DoublyStochastic validate_doubly_stochastic(const Mat& m, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "validation tolerance must be positive");
    const std::size_t n = m.n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(m(i, j))) throw Error(ErrorCode::NonFinite, "entry " + index_pair(i, j));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m(i, j) < -tol) throw Error(ErrorCode::NegativeEntry, "entry " + index_pair(i, j));
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += m(i, j);
        if (std::fabs(s - 1.0) > tol) throw Error(ErrorCode::RowSum, "row " + std::to_string(i) + " sums to " + std::to_string(s));
    }
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += m(i, j);
        if (std::fabs(s - 1.0) > tol) throw Error(ErrorCode::ColSum, "column " + std::to_string(j) + " sums to " + std::to_string(s));
    }

    Mat clamped = m;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) clamped(i, j) = std::clamp(clamped(i, j), 0.0, 1.0);

    Mat balanced = clamped;
    std::vector<double> col(n);
    for (int sweep = 0; sweep < 8; ++sweep) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += balanced(i, j);
            if (s > 0.0)
                for (std::size_t j = 0; j < n; ++j) balanced(i, j) /= s;
        }
        std::fill(col.begin(), col.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) col[j] += balanced(i, j);
        for (std::size_t j = 0; j < n; ++j) {
            worst = std::max(worst, std::fabs(col[j] - 1.0));
            if (col[j] > 0.0)
                for (std::size_t i = 0; i < n; ++i) balanced(i, j) /= col[j];
        }
        if (worst == 0.0) break;
    }
    if (max_abs_diff(balanced, clamped) <= tol) return DoublyStochastic(std::move(balanced), tol);
    return DoublyStochastic(std::move(clamped), tol);
}

DoublyStochastic averager(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::BadDimension, "averager needs n >= 1");
    return validate_doubly_stochastic(Mat::constant(n, 1.0 / static_cast<double>(n)));
}

// --- norms -------------------------------------------------------------------

double vector_pnorm(std::span<const double> x, Exponent p) {
    const auto& k = kernels::active();
    if (x.empty()) return 0.0;
    if (p.is_inf()) return k.max_abs(x.data(), x.size());
    if (p.is_one()) return k.abs_sum(x.data(), x.size());
    const double scale = k.max_abs(x.data(), x.size());
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    if (p.is_two()) {
        for (double v : x) s += (v / scale) * (v / scale);
        return scale * std::sqrt(s);
    }
    for (double v : x) s += std::pow(std::fabs(v) / scale, p.value());
    return scale * std::pow(s, 1.0 / p.value());
}

double frobenius_norm(const Mat& m) noexcept {
    const auto& k = kernels::active();
    return std::sqrt(k.dot(m.data().data(), m.data().data(), m.data().size()));
}

// --- characteristic polynomial --------------------------------------------------

CharPoly::CharPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty() || coeffs_[0] != 1.0) throw Error(ErrorCode::BadDimension, "characteristic polynomial must be monic");
}

double CharPoly::evaluate(double lambda) const noexcept {
    double acc = 0.0;
    for (double c : coeffs_) acc = acc * lambda + c;
    return acc;
}

CharPoly CharPoly::times_linear(double root) const {
    std::vector<double> out(coeffs_.size() + 1, 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        out[k] += coeffs_[k];
        out[k + 1] -= root * coeffs_[k];
    }
    return CharPoly(std::move(out));
}

CharPoly char_poly(const Mat& m) {
    const std::size_t n = m.n();
    if (n > kMaxCharPolyDim)
        throw Error(ErrorCode::DimensionTooLarge, "char_poly supports n <= 64, got " + std::to_string(n));
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    // M_1 = I; c_k = -tr(A M_k) / k; M_{k+1} = A M_k + c_k I.
    Mat mk = Mat::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Mat amk = m * mk;
        c[k] = -amk.trace() / static_cast<double>(k);
        if (k == n) break;
        for (std::size_t i = 0; i < n; ++i) amk(i, i) += c[k];
        mk = std::move(amk);
    }
    return CharPoly(std::move(c));
}

std::vector<double> symmetric_eigenvalues(const Mat& m, Mat* vectors) {
    const std::size_t n = m.n();
    Mat a = m;
    Mat v = Mat::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                total += a(i, j) * a(i, j);
                if (i != j) off += a(i, j) * a(i, j);
            }
        if (off <= 1e-30 * total || off == 0.0) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
    std::vector<double> values(n);
    Mat sorted(n);
    for (std::size_t k = 0; k < n; ++k) {
        values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) sorted(i, k) = v(i, order[k]);
    }
    if (vectors != nullptr) *vectors = std::move(sorted);
    return values;
}

}  // namespace bpgeo
