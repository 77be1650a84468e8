#pragma once

#include <utility>

#include "steklov/model.hpp"

namespace steklov::oracle {

/// Boundary mismatch of the regular radial solution at one lambda.
struct ShootingResult {
    double lambda;
    double boundary_mismatch;  ///< S'(1) with max |S| = 1
    int grid_size;
};

inline constexpr int kDefaultGridSize = 20000;
inline constexpr double kStartRadius = 1e-6;

/// Integrates r^2 S'' + r(N-1) S' + (r^2 lambda rho_eps - l(l+N-2)) S = 0
/// from r0 = 1e-6 with the regular branch S ~ r^l. The state is
/// u = r^-l S and du/dlog r, stepped by classical RK4 on a uniform mesh in
/// log r with a mesh point at r = 1 - eps; a quarter of the steps lie in
/// the shell. Works for N = 1 (l = 0 or 1) as well.
ShootingResult shoot(const model::ProblemConfig& cfg, double epsilon, double lambda,
                     int grid_size = kDefaultGridSize);

/// Bisection on the mismatch to 1e-10 absolute in lambda.
double eigenvalue_by_shooting(const model::ProblemConfig& cfg, double epsilon,
                              std::pair<double, double> bracket, int grid_size = kDefaultGridSize);

}  // namespace steklov::oracle
