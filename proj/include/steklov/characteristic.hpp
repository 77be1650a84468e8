#pragma once

#include <utility>
#include <vector>

#include "steklov/model.hpp"

namespace steklov::branch {

/// Default relative residual for converged roots, overridable through the
/// STEKLOV_ROOT_TOL environment variable.
inline constexpr double kDefaultRootTol = 1e-11;
double root_tolerance();

/// F together with the sum of magnitudes of the products it is built from.
/// residual() is the plain ratio; residual_at() also guards against a factor
/// common to all products vanishing at the root.
struct CharacteristicValue {
    double value;
    double scale;

    double residual() const noexcept;
};

/// The four b/c cross-products entering F, with c = b + delta:
///   yp_j   = Y'(b) J(c)  - J'(b) Y(c)
///   j_y    = J(b)  Y(c)  - Y(b)  J(c)
///   yp_jp  = Y'(b) J'(c) - J'(b) Y'(c)
///   j_yp   = J(b)  Y'(c) - Y(b)  J'(c)
/// For c close to b each one may instead be summed as a Taylor series in
/// c - b over the same-argument Laurent forms, which avoids the
/// cancellation of the literal difference. The series is taken whenever its
/// estimated error (last term plus rounding) is below that of the literal
/// difference; from_series reports whether any of the four used it.
struct ShiftedCrossProducts {
    double yp_j;
    double j_y;
    double yp_jp;
    double j_yp;
    bool from_series;
};

ShiftedCrossProducts shifted_cross_products(double nu, double b, double delta);

/// (1 - N/2) P1(a, b) + (b / (1 - eps)) P2(a, b) for N >= 2.
CharacteristicValue characteristic_terms(const model::ProblemConfig& cfg, double epsilon,
                                         double lambda);
double characteristic(const model::ProblemConfig& cfg, double epsilon, double lambda);

/// |F| / max(sum of product magnitudes, lambda |dF/dlambda|): the residual
/// compared against root_tolerance().
double residual_at(const model::ProblemConfig& cfg, double epsilon, double lambda);

/// The explicit part of the small-eps expansion (no remainder). Needs nu > 0.
double truncated_characteristic(const model::ProblemConfig& cfg, double epsilon, double lambda);

struct Partials {
    double d_lambda;
    double d_epsilon;
};

/// Partial derivatives of truncated_characteristic at (lambda, epsilon).
Partials truncated_partials(const model::ProblemConfig& cfg, double epsilon, double lambda);

/// F / J_nu'(a) / eps * pi nu (1 - eps) / b1 with b1 = b sqrt(eps / lambda).
/// This puts F on the same normalization as truncated_characteristic.
double rescaled_characteristic(const model::ProblemConfig& cfg, double epsilon, double lambda);

struct RemainderSample {
    double epsilon;
    double remainder;  ///< |rescaled - truncated|
};

/// Samples the remainder on eps_grid; every entry must lie in (0, 0.2).
std::vector<RemainderSample> remainder_scaling(const model::ProblemConfig& cfg, double lambda,
                                               const std::vector<double>& eps_grid);

/// Least-squares slope of log(remainder) against log(eps).
double loglog_slope(const std::vector<RemainderSample>& samples);

/// A root of the characteristic equation. `converged` means the residual
/// met root_tolerance(); a root whose bracket collapsed to adjacent doubles
/// without meeting it is still returned, with converged = false.
struct BranchPoint {
    double epsilon;
    double lambda;
    double residual;
    int l;
    int dimension;
    double mass;
    bool converged = true;
};

using Bracket = std::pair<double, double>;

/// Bracketing root solve (TOMS 748, at most 200 iterations). Throws
/// ConvergenceError only if the bracket fails to collapse.
BranchPoint find_root(const model::ProblemConfig& cfg, double epsilon, Bracket bracket);

/// Every sign change of F(., eps) on a scan of [lo, hi], refined.
/// Roots closer together than the scan spacing can be missed.
std::vector<BranchPoint> roots_in_interval(const model::ProblemConfig& cfg, double epsilon,
                                           double lo, double hi, int samples, bool geometric);

// ---- interval (N = 1) ------------------------------------------------------

CharacteristicValue characteristic_1d_terms(double mass, double epsilon, double lambda);
double characteristic_1d(double mass, double epsilon, double lambda);
double residual_at_1d(double mass, double epsilon, double lambda);
BranchPoint find_root_1d(double mass, double epsilon, Bracket bracket);
std::vector<BranchPoint> roots_in_interval_1d(double mass, double epsilon, double lo, double hi,
                                              int samples, bool geometric);

}  // namespace steklov::branch
