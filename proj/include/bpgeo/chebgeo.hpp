#pragma once

// Enclosing balls and Chebyshev radius of the Birkhoff polytope Omega_n under
// the induced l^p -> l^p operator norms.
//
// The Chebyshev centre of Omega_n is J_n and the radius is ||J_n - I_n||_p.
// Closed values exist for p in {1, 2, inf}, for n = 2, and for n = 3; for
// other (n, p) only a conjectured formula plus certified lower bounds are
// available, and reports built from the conjecture are tagged as such.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpgeo/exponent.hpp"
#include "bpgeo/mat.hpp"
#include "bpgeo/opnorm.hpp"

namespace bpgeo {

enum class RadiusMethod {
    FormulaP1,
    FormulaPInf,
    FormulaP2,
    FormulaN2,
    ClosedFormN3,
    Conjecture,
    PermutationEnumeration,
    Estimate,
    Bounds,
};

std::string_view to_string(RadiusMethod m) noexcept;

struct RadiusReport {
    double value = 0.0;
    RadiusMethod method = RadiusMethod::FormulaP1;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    std::optional<PermutationMatrix> maximizer;
    std::vector<std::string> warnings;
};

struct ConjectureResult {
    double p = 0.0;
    double rho = 0.0;  ///< p - 1
    double x_p = 0.0;  ///< interior root in (0, 1)
    int m1 = 0;
    int m2 = 0;
    double value = 0.0;
};

inline constexpr std::size_t kMaxBallEnumerationDim = 8;

/// r_1(D) = 2 (1 - min_ij d_ij). The maximizer puts a 1 on the first
/// (row-major) argmin entry of D.
RadiusReport bounding_radius_l1(const DoublyStochastic& d);

/// r_inf(D), same value and maximizer characterisation as r_1.
RadiusReport bounding_radius_linf(const DoublyStochastic& d);

/// max over all n! permutations P of ||D - P||_p (exact norms for p in
/// {1, 2, inf}, power-method lower bounds otherwise). Ties go to the
/// lexicographically smallest sigma. Throws DimensionTooLarge for n > 8.
RadiusReport bounding_radius_enumerate(const DoublyStochastic& d, Exponent p, const PowerConfig& cfg = {});

/// (1, (2(n-1)/n)^|2/p - 1|) for n >= 2, 1 < p < inf.
std::pair<double, double> radius_bounds(std::size_t n, Exponent p);

/// ||J_3 - I_3||_p = (2^(p-1) + 1)^(1/p) (2^(1/(p-1)) + 1)^(1-1/p) / 3, 1 < p < inf.
double closed_form_radius_n3(Exponent p);

/// rho (1 + x^(1/rho)) (1 - x^(rho-1)) + (1 + x^rho) (1 - x^(1/rho - 1)).
/// Vanishes identically at x = 1 and for rho = 1.
double conjecture_function(double x, double rho);

/// Interior root of conjecture_function on (0, 1): scan with step 1e-3,
/// then bisect the first sign change. Throws DegenerateExponent for p = 2,
/// NoBracket if the scan finds no sign change.
double conjecture_root(Exponent p);

/// Conjectured ||J_n - I_n||_p, maximising the two-level formula over
/// m in {floor(n/(x_p+1)), ceil(n/(x_p+1))}. n >= 2, 1 < p < inf, p != 2.
ConjectureResult conjecture_radius(std::size_t n, Exponent p);

enum class ChebyshevStrategy { Auto, Exact, Conjecture, Enumerate, Bounds };

/// Chebyshev radius R_p(Omega_n) = ||J_n - I_n||_p.
///
/// Auto picks the first route that applies: p = 1 or inf, p = 2, n = 2,
/// n = 3 closed form, else the conjecture cross-checked against the power
/// method. Exact fails with NoClosedForm when no proven formula covers (n, p).
RadiusReport chebyshev_radius(std::size_t n, Exponent p, ChebyshevStrategy strategy = ChebyshevStrategy::Auto,
                              const PowerConfig& cfg = {});

struct CenterCertificate {
    bool is_center_candidate = false;
    PermutationMatrix worst_permutation = PermutationMatrix::identity(1);
    double attained = 0.0;   ///< max_P ||D - P||_p
    double reference = 0.0;  ///< ||J_n - I_n||_p
};

/// D passes iff max_P ||D - P||_p <= ||J_n - I_n||_p + tol.
///
/// Only J_n can pass in exact arithmetic, but uniqueness is established here
/// empirically: a pass for D != J_n means the perturbation was below tol.
CenterCertificate center_certificate(const DoublyStochastic& d, Exponent p, double tol,
                                     const PowerConfig& cfg = {});

struct EquidistanceReport {
    bool equidistant = false;
    double min_distance = 0.0;
    double max_distance = 0.0;
    std::size_t permutations = 0;
    double tolerance = 0.0;
};

/// ||J_n - P||_p for every permutation P agree to 1e-9 (exact p) or 1e-6
/// (estimated p). n <= 6.
EquidistanceReport equidistance_check(Exponent p, std::size_t n, const PowerConfig& cfg = {});

struct SpectrumShiftReport {
    bool holds = false;
    double max_deviation = 0.0;  ///< max coefficient gap
    double scale = 0.0;          ///< 1 + max |coefficient|
    std::vector<double> lhs;     ///< (lambda - 1) charpoly(D - J_n)
    std::vector<double> rhs;     ///< lambda charpoly(D)
};

/// The eigenvalues of D - J_n are those of D with the eigenvalue 1 (of the
/// all-ones vector) replaced by 0. Checked without eigensolvers through
/// (lambda - 1) charpoly(D - J_n) == lambda charpoly(D), coefficientwise
/// within tol (1 + max |coeff|). n <= 32.
SpectrumShiftReport spectrum_shift_check(const DoublyStochastic& d, double tol);

}  // namespace bpgeo
