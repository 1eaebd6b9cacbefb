#include "bpgeo/birkhoff.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <string>

#include "bpgeo/error.hpp"

namespace bpgeo {

namespace {

class Matcher {
public:
    Matcher(const Mat& w, double tol) : w_(w), tol_(tol), n_(w.n()), col_owner_(n_, -1), visited_(n_, false) {}

    std::vector<int> run() {
        for (std::size_t row = 0; row < n_; ++row) {
            std::fill(visited_.begin(), visited_.end(), false);
            if (!augment(row)) return {};
        }
        std::vector<int> sigma(n_);
        for (std::size_t col = 0; col < n_; ++col) sigma[static_cast<std::size_t>(col_owner_[col])] = static_cast<int>(col);
        return sigma;
    }

private:
    bool augment(std::size_t row) {
        for (std::size_t col = 0; col < n_; ++col) {
            if (w_(row, col) <= tol_ || visited_[col]) continue;
            visited_[col] = true;
            if (col_owner_[col] < 0 || augment(static_cast<std::size_t>(col_owner_[col]))) {
                col_owner_[col] = static_cast<int>(row);
                return true;
            }
        }
        return false;
    }

    const Mat& w_;
    double tol_;
    std::size_t n_;
    std::vector<int> col_owner_;
    std::vector<bool> visited_;
};

}  // namespace

double BirkhoffDecomposition::weight_sum() const noexcept {
    double s = 0.0;
    for (const auto& t : terms) s += t.alpha;
    return s;
}

std::size_t max_birkhoff_terms(std::size_t n) noexcept { return (n - 1) * (n - 1) + 1; }

std::vector<int> perfect_matching(const Mat& w, double tol) { return Matcher(w, tol).run(); }

BirkhoffDecomposition birkhoff_decompose(const DoublyStochastic& d, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "decomposition tolerance must be positive");
    const std::size_t n = d.n();
    Mat work = d.mat();
    BirkhoffDecomposition out;

    for (;;) {
        double remaining = 0.0;
        for (double v : work.data()) remaining = std::max(remaining, v);
        if (remaining <= tol) break;

        std::vector<int> sigma = perfect_matching(work, tol);
        if (sigma.empty()) {
            if (remaining <= d.tol_used()) break;
            throw Error(ErrorCode::MatchingFailed,
                        "no perfect matching on the support after " + std::to_string(out.terms.size()) +
                            " terms; largest remaining entry " + std::to_string(remaining));
        }
        double alpha = std::numeric_limits<double>::infinity();
        std::size_t argmin = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = work(i, static_cast<std::size_t>(sigma[i]));
            if (v < alpha) {
                alpha = v;
                argmin = i;
            }
        }
        assert(alpha > tol);
        for (std::size_t i = 0; i < n; ++i) work(i, static_cast<std::size_t>(sigma[i])) -= alpha;
        work(argmin, static_cast<std::size_t>(sigma[argmin])) = 0.0;
        out.terms.push_back({alpha, PermutationMatrix(std::move(sigma))});
    }

    out.residual = max_abs_diff(recombine(out, n), d.mat());
    return out;
}

Mat recombine(const BirkhoffDecomposition& decomp, std::size_t n) {
    Mat m(n);
    for (const auto& t : decomp.terms) {
        if (t.perm.n() != n)
            throw Error(ErrorCode::SizeMismatch,
                        "term permutation has size " + std::to_string(t.perm.n()) + ", expected " + std::to_string(n));
        for (std::size_t i = 0; i < n; ++i) m(i, static_cast<std::size_t>(t.perm[i])) += t.alpha;
    }
    return m;
}

}  // namespace bpgeo
