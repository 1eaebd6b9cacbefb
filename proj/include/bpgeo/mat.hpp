#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "bpgeo/exponent.hpp"

namespace bpgeo {

/// Dense n x n real matrix, row-major.
class Mat {
public:
    /// n x n zero matrix. Throws BadDimension for n == 0.
    explicit Mat(std::size_t n);

    /// Throws NotSquare if the rows are ragged or not n x n, NonFinite on NaN/Inf.
    static Mat from_rows(const std::vector<std::vector<double>>& rows);
    static Mat from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Mat identity(std::size_t n);
    static Mat constant(std::size_t n, double value);

    std::size_t n() const noexcept { return n_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }
    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
    std::span<const double> data() const noexcept { return data_; }

    Mat transpose() const;
    double trace() const noexcept;
    bool all_finite() const noexcept;

    Mat& operator+=(const Mat& other);
    Mat& operator-=(const Mat& other);
    Mat& operator*=(double s) noexcept;

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, double s) { return a *= s; }
    friend Mat operator*(double s, Mat a) { return a *= s; }
    friend Mat operator*(const Mat& a, const Mat& b);

    friend bool operator==(const Mat& a, const Mat& b) = default;

private:
    std::size_t n_;
    std::vector<double> data_;
};

/// y = A x
std::vector<double> multiply(const Mat& a, std::span<const double> x);
/// y = A^T x
std::vector<double> multiply_transposed(const Mat& a, std::span<const double> x);

/// max_ij |a_ij - b_ij|. Throws SizeMismatch.
double max_abs_diff(const Mat& a, const Mat& b);

double min_entry(const Mat& m) noexcept;

/// Bijection sigma on {0..n-1}; row i has its 1 in column sigma[i].
class PermutationMatrix {
public:
    /// Throws InvalidPermutation unless sigma is a bijection on {0..n-1}.
    explicit PermutationMatrix(std::vector<int> sigma);
    static PermutationMatrix identity(std::size_t n);

    std::size_t n() const noexcept { return sigma_.size(); }
    int operator[](std::size_t row) const noexcept { return sigma_[row]; }
    const std::vector<int>& sigma() const noexcept { return sigma_; }

    Mat to_mat() const;

    friend auto operator<=>(const PermutationMatrix&, const PermutationMatrix&) = default;

private:
    std::vector<int> sigma_;
};

/// A validated member of the Birkhoff polytope.
class DoublyStochastic {
public:
    const Mat& mat() const noexcept { return mat_; }
    std::size_t n() const noexcept { return mat_.n(); }
    double tol_used() const noexcept { return tol_used_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return mat_(i, j); }

    static DoublyStochastic from_permutation(const PermutationMatrix& p);

private:
    friend DoublyStochastic validate_doubly_stochastic(const Mat& m, double tol);
    DoublyStochastic(Mat m, double tol) : mat_(std::move(m)), tol_used_(tol) {}

    Mat mat_;
    double tol_used_;
};

inline constexpr double kDefaultValidationTol = 1e-9;

/// Checks nonnegativity and unit row/column sums to within tol.
///
/// Entries in (-tol, 0) are clamped to 0 and entries above 1 clamped to 1.
/// The clamped matrix is then rebalanced by alternating row and column
/// scaling; the rebalanced version is kept only if no entry moved by more
/// than tol, otherwise the clamped matrix is kept as is.
///
/// Errors are checked in order NonFinite, NegativeEntry(i,j), RowSum(i),
/// ColSum(j); the first offending index is reported.
DoublyStochastic validate_doubly_stochastic(const Mat& m, double tol = kDefaultValidationTol);

/// J_n: every entry 1/n.
DoublyStochastic averager(std::size_t n);

/// (sum |x_k|^p)^(1/p), or max |x_k| for p = inf. Overflow-safe.
double vector_pnorm(std::span<const double> x, Exponent p);

double frobenius_norm(const Mat& m) noexcept;

/// Monic characteristic polynomial det(lambda I - M), coefficients in
/// descending powers: coeffs[0] = 1, coeffs[n] = (-1)^n det M.
class CharPoly {
public:
    explicit CharPoly(std::vector<double> coeffs);

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    double operator[](std::size_t k) const noexcept { return coeffs_[k]; }

    double evaluate(double lambda) const noexcept;

    /// Product with the monic linear factor (lambda - root).
    CharPoly times_linear(double root) const;

private:
    std::vector<double> coeffs_;
};

inline constexpr std::size_t kMaxCharPolyDim = 64;

/// Faddeev-LeVerrier recursion. Throws DimensionTooLarge for n > 64.
CharPoly char_poly(const Mat& m);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// When vectors is non-null it receives the eigenvectors as columns.
std::vector<double> symmetric_eigenvalues(const Mat& m, Mat* vectors = nullptr);

}  // namespace bpgeo
