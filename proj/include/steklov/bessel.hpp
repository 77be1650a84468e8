#pragma once

#include <vector>

namespace steklov::bessel {

enum class BesselKind { FirstKind, SecondKind };

/// J_nu, Y_nu and their first derivatives at one argument.
struct BesselPair {
    double j;
    double y;
    double jp;
    double yp;
};

/// Simultaneous evaluation of J_nu(z), Y_nu(z), J_nu'(z), Y_nu'(z) for real
/// nu >= 0 and z > 0.
///
/// Uses the continued fraction for J'/J to fix the ratio at a reduced order
/// |mu| <= 1/2, then either Temme's series (z < 2) or Steed's complex
/// continued fraction (z >= 2) for Y_mu, Y_mu+1. J follows from the
/// Wronskian; Y is recurred upward. Accurate to a few ulps of
/// max(|value|, sqrt(J^2 + Y^2)) on nu in [0, 25], z in (0, 1e4].
BesselPair bessel_jy(double nu, double z);

double bessel(BesselKind kind, double nu, double z);

inline constexpr int kMaxDerivativeOrder = 8;

/// k-th derivative in z (k = 0 returns the function itself). Orders k >= 2
/// come from differentiating the Bessel equation k - 2 times.
double bessel_deriv(BesselKind kind, double nu, double z, int k);

/// Values y, y', ..., y^(k) at once.
std::vector<double> bessel_derivs(BesselKind kind, double nu, double z, int k);

/// A value with its derivatives, and the Bessel-equation residual check.
struct BesselEval {
    double order;
    double argument;
    double value;
    std::vector<double> derivative_values;  ///< orders 1..k

    /// |z^2 y'' + z y' + (z^2 - nu^2) y| / (|z^2 y''| + |z y'| + |(z^2 - nu^2) y|)
    double ode_residual() const;
};

BesselEval evaluate(BesselKind kind, double nu, double z, int k);

/// y^(k) = A_k(z) y + B_k(z) y' for any solution y of Bessel's equation of
/// order nu. The coefficient polynomials are in w = 1/z.
struct OdeDerivativeCoefficients {
    std::vector<double> a;  ///< a[m] multiplies w^m
    std::vector<double> b;

    double eval_a(double z) const;
    double eval_b(double z) const;
};

OdeDerivativeCoefficients ode_derivative_coefficients(double nu, int k);

/// R_3(z) = J_nu(z)/J_nu'(z) - z/nu - z^3/(2 nu^2 (1 + nu)), which is O(z^5).
/// Requires nu > 0 and 0 < z < sqrt(nu (nu + 2)) (below the first zero of J_nu').
double ratio_expansion_r3(double nu, double z);

namespace detail {
/// 1/Gamma(1 - mu) and 1/Gamma(1 + mu) combinations used by Temme's series,
/// for |mu| <= 1/2: gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu),
/// gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2.
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi);
}  // namespace detail

}  // namespace steklov::bessel
