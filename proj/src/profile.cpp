#include "steklov/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "steklov/bessel.hpp"
#include "steklov/errors.hpp"

namespace steklov::branch {

namespace {

double relative_gap(double x, double y) {
    const double m = std::max(std::abs(x), std::abs(y));
    return m == 0.0 ? 0.0 : std::abs(x - y) / m;
}

}  // namespace

RadialProfile::RadialProfile(const model::ProblemConfig& cfg, const BranchPoint& point)
    : nu_(cfg.nu()),
      power_(1.0 - 0.5 * cfg.dimension()),
      epsilon_(point.epsilon),
      lambda_(point.lambda) {
    if (cfg.dimension() < 2) throw DomainError("radial profile needs N >= 2");
    const model::DensityParams d = model::density_params(cfg, epsilon_);
    const model::WaveArguments w = model::wave_arguments(cfg, epsilon_, lambda_);
    k_inner_ = std::sqrt(lambda_ * epsilon_);
    k_outer_ = std::sqrt(lambda_ * d.rho_annulus);
    const bessel::BesselPair pa = bessel::bessel_jy(nu_, w.a);
    const bessel::BesselPair pb = bessel::bessel_jy(nu_, w.b);
    const double ratio = w.a / w.b;
    const double half_pi_b = 0.5 * std::numbers::pi * w.b;
    alpha_ = half_pi_b * (pa.j * pb.yp - ratio * pa.jp * pb.y);
    beta_ = half_pi_b * (ratio * pb.j * pa.jp - pb.jp * pa.j);
}

double RadialProfile::inner(double r, bool derivative) const {
    const double p = std::pow(r, power_);
    const bessel::BesselPair q = bessel::bessel_jy(nu_, k_inner_ * r);
    if (!derivative) return p * q.j;
    return p * (power_ / r * q.j + k_inner_ * q.jp);
}

double RadialProfile::outer(double r, bool derivative) const {
    const double p = std::pow(r, power_);
    const bessel::BesselPair q = bessel::bessel_jy(nu_, k_outer_ * r);
    const double s = alpha_ * q.j + beta_ * q.y;
    if (!derivative) return p * s;
    return p * (power_ / r * s + k_outer_ * (alpha_ * q.jp + beta_ * q.yp));
}

double RadialProfile::value(double r) const {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("radius must lie in (0, 1]");
    return r <= interface_radius() ? inner(r, false) : outer(r, false);
}

double RadialProfile::derivative(double r) const {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("radius must lie in (0, 1]");
    return r <= interface_radius() ? inner(r, true) : outer(r, true);
}

RadialProfile::Jumps RadialProfile::continuity_jumps() const {
    const double r = interface_radius();
    return {relative_gap(inner(r, false), outer(r, false)), relative_gap(inner(r, true), outer(r, true))};
}

double RadialProfile::relative_boundary_derivative(int samples) const {
    double peak = 0.0;
    for (int i = 1; i <= samples; ++i) peak = std::max(peak, std::abs(derivative(static_cast<double>(i) / samples)));
    peak = std::max(peak, std::abs(inner(interface_radius(), true)));
    return peak == 0.0 ? 0.0 : std::abs(boundary_derivative()) / peak;
}

RadialProfile radial_profile(const model::ProblemConfig& cfg, const BranchPoint& point) {
    if (!point.converged || point.residual > root_tolerance())
        throw PreconditionError("radial profile requested at a non-converged point");
    return RadialProfile(cfg, point);
}

}  // namespace steklov::branch
