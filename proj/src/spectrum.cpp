#include "steklov/spectrum.hpp"

#include "steklov/errors.hpp"

namespace steklov::spectrum {

namespace {

BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

BigInt multiplicity(int dimension, int l) {
    if (dimension < 2) throw DomainError("multiplicity formula needs N >= 2; use the interval path for N = 1");
    if (l < 0) throw DomainError("angular index must be >= 0");
    if (l == 0) return 1;
    const BigInt num = BigInt(2 * l + dimension - 2) * factorial(l + dimension - 3);
    return num / (factorial(l) * factorial(dimension - 2));
}

double slope_formula(int dimension, int l, double lambda) {
    return 2.0 * l * lambda / 3.0 + 2.0 * lambda * lambda / (dimension * (2.0 * l + dimension));
}

SteklovEigenvalue steklov_eigenvalue(const model::ProblemConfig& cfg) {
    if (cfg.dimension() < 2)
        throw DomainError("Steklov spectrum of the ball needs N >= 2; use the interval path for N = 1");
    const int l = cfg.angular_index();
    const double value = l * cfg.steklov_ratio();
    return {l, value, multiplicity(cfg.dimension(), l), l == 0 ? 0.0 : slope_formula(cfg.dimension(), l, value)};
}

double slope_at_zero(const model::ProblemConfig& cfg) { return steklov_eigenvalue(cfg).slope; }

double slope_from_expansion(const model::ProblemConfig& cfg) {
    if (cfg.dimension() < 2) throw DomainError("expansion coefficients need N >= 2");
    const int l = cfg.angular_index();
    if (l == 0) return 0.0;
    const double n = cfg.dimension();
    const double nu = cfg.nu();
    const double omega = cfg.omega();
    const double mass = cfg.mass().value();
    const double lambda = l * cfg.steklov_ratio();
    const double nn1 = nu * (1.0 + nu);
    // dF/deps at eps = 0 collects the eps-linear coefficients; dF/dlambda = -2.
    const double f_eps = lambda * lambda * (mass / (3.0 * n * omega) - 1.0 / nn1) +
                         lambda * (n / 2.0 - nu + (2.0 - n) * n * omega / (2.0 * nn1 * mass)) -
                         2.0 * n * omega * l / mass * ((n - 1.0) / 2.0 - omega / mass - nu);
    const double f_lambda = -2.0;
    return -f_eps / f_lambda;
}

double interval_eigenvalue(double mass) {
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    return 2.0 / mass;
}

double interval_slope(double mass) {
    const double lambda = interval_eigenvalue(mass);
    return 2.0 / 3.0 * (lambda + lambda * lambda);
}

}  // namespace steklov::spectrum
