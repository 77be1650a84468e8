#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "steklov/model.hpp"

namespace steklov::spectrum {

using BigInt = boost::multiprecision::cpp_int;

/// One Steklov eigenvalue of the unit ball with boundary density M/sigma_N.
struct SteklovEigenvalue {
    int l;
    double value;         ///< lambda_l = N omega_N l / M
    BigInt multiplicity;  ///< dimension of degree-l spherical harmonics
    double slope;         ///< first-order coefficient of the Neumann branch at 0
};

/// Requires N >= 2; the interval case lives in the 1D path of `branch`.
SteklovEigenvalue steklov_eigenvalue(const model::ProblemConfig& cfg);

/// (2l + N - 2)(l + N - 3)! / (l! (N - 2)!) for l >= 1, and 1 for l = 0.
BigInt multiplicity(int dimension, int l);

/// 2 l lambda / 3 + 2 lambda^2 / (N (2l + N)), valid for any N >= 1.
double slope_formula(int dimension, int l, double lambda);

/// slope_formula at lambda_l. Zero for l = 0.
double slope_at_zero(const model::ProblemConfig& cfg);

/// The same slope obtained as -dF/deps / dF/dlambda at (lambda_l, 0) from the
/// coefficients of the first-order expansion of the characteristic
/// function. Requires nu_l > 0 unless l = 0.
double slope_from_expansion(const model::ProblemConfig& cfg);

/// Interval case: lambda_1 = 2/M and its slope (2/3)(lambda_1 + lambda_1^2).
double interval_eigenvalue(double mass);
double interval_slope(double mass);

}  // namespace steklov::spectrum
