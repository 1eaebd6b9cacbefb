#pragma once

#include <cstddef>
#include <vector>

#include "bpgeo/mat.hpp"

namespace bpgeo {

struct BirkhoffTerm {
    double alpha;
    PermutationMatrix perm;
};

/// D = sum alpha_i P_i. Only reconstruction is contractual: the terms found
/// for a given D depend on the matching order and are not unique.
struct BirkhoffDecomposition {
    std::vector<BirkhoffTerm> terms;
    double residual = 0.0;  ///< max entrywise |recombine - D|

    double weight_sum() const noexcept;
};

inline constexpr double kDefaultDecomposeTol = 1e-12;

/// (n-1)^2 + 1, the most terms a decomposition can need.
std::size_t max_birkhoff_terms(std::size_t n) noexcept;

/// Greedy extraction: find a perfect matching on entries > tol (augmenting
/// paths, rows scanned in index order), subtract its smallest entry along
/// the matching, repeat until the matrix is exhausted.
///
/// Throws MatchingFailed when mass above the input's validation tolerance
/// remains but no perfect matching exists on the remaining support.
BirkhoffDecomposition birkhoff_decompose(const DoublyStochastic& d, double tol = kDefaultDecomposeTol);

/// sum alpha_i P_i. Throws SizeMismatch if any permutation is not of size n.
Mat recombine(const BirkhoffDecomposition& decomp, std::size_t n);

/// Perfect matching of rows to columns on the graph {(i,j) : w(i,j) > tol},
/// or an empty vector if none exists. Kuhn's augmenting-path algorithm.
std::vector<int> perfect_matching(const Mat& w, double tol);

}  // namespace bpgeo
