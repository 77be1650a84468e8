#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace steklov::model {

/// Total mass M > 0. When the mass was given as a multiple of pi (the
/// natural unit for ball measures), the multiple is kept so that ratios
/// such as N*omega_N/M can be formed without carrying pi through rounding.
class Mass {
public:
    static Mass absolute(double value);
    static Mass times_pi(double multiple);

    double value() const noexcept { return value_; }
    const std::optional<double>& pi_multiple() const noexcept { return pi_multiple_; }

    std::string to_string() const;

private:
    Mass(double value, std::optional<double> pi_multiple)
        : value_(value), pi_multiple_(pi_multiple) {}

    double value_;
    std::optional<double> pi_multiple_;
};

/// Parses "pi", "4pi", "4*pi", "pi/2", "3.5" and similar spellings.
Mass parse_mass(const std::string& text);

/// omega_N = pi^(N/2) / Gamma(N/2 + 1), as rational * pi^(N/2 rounded down).
struct BallVolume {
    std::uint64_t numerator;
    std::uint64_t denominator;
    int pi_power;

    double value() const;
};

BallVolume unit_ball_volume_exact(int dimension);

/// Lebesgue measure of the unit ball in R^N.
double unit_ball_volume(int dimension);

/// Dimension N, mass M and angular index l of one radial problem.
class ProblemConfig {
public:
    ProblemConfig(int dimension, Mass mass, int angular_index);

    int dimension() const noexcept { return dimension_; }
    const Mass& mass() const noexcept { return mass_; }
    int angular_index() const noexcept { return l_; }

    ProblemConfig with_angular_index(int l) const { return {dimension_, mass_, l}; }

    double omega() const noexcept { return omega_; }
    /// Surface measure sigma_N = N * omega_N.
    double sigma() const noexcept { return dimension_ * omega_; }
    /// Boundary density rho = M / sigma_N.
    double rho() const noexcept { return mass_.value() / sigma(); }
    /// Bessel order nu_l = (N + 2l - 2) / 2.
    double nu() const noexcept { return 0.5 * (dimension_ + 2 * l_ - 2); }
    /// N * omega_N / M, exact when the mass is a rational multiple of pi
    /// and N is 2 or 3.
    double steklov_ratio() const noexcept { return steklov_ratio_; }

private:
    int dimension_;
    Mass mass_;
    int l_;
    double omega_;
    double steklov_ratio_;
};

/// The two-valued mass density: epsilon inside |x| <= 1 - epsilon,
/// rho_annulus on the shell, with rho_hat = epsilon * rho_annulus.
struct DensityParams {
    double epsilon;
    double rho_inner;
    double rho_annulus;
    double rho_hat;

    /// Total mass recomputed from the two pieces.
    double total_mass(double omega, int dimension) const;
};

DensityParams density_params(const ProblemConfig& cfg, double epsilon);

struct WaveArguments {
    double a;  ///< sqrt(lambda * epsilon) * (1 - epsilon)
    double b;  ///< sqrt(lambda * rho_annulus) * (1 - epsilon)
};

WaveArguments wave_arguments(const ProblemConfig& cfg, double epsilon, double lambda);

/// x^n by repeated squaring.
double ipow(double x, unsigned n) noexcept;

}  // namespace steklov::model
