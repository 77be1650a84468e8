#include "steklov/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "steklov/errors.hpp"

namespace steklov::oracle {

namespace {

struct State {
    double u;
    double v;  // du/dt, t = log r
};

// u'' + (2l + N - 2) u' + lambda rho e^(2t) u = 0
struct Rhs {
    double damping;
    double lambda_rho;

    State operator()(double t, const State& s) const {
        return {s.v, -damping * s.v - lambda_rho * std::exp(2.0 * t) * s.u};
    }
};

State rk4(const Rhs& f, double t, const State& s, double h) {
    const State k1 = f(t, s);
    const State k2 = f(t + 0.5 * h, {s.u + 0.5 * h * k1.u, s.v + 0.5 * h * k1.v});
    const State k3 = f(t + 0.5 * h, {s.u + 0.5 * h * k2.u, s.v + 0.5 * h * k2.v});
    const State k4 = f(t + h, {s.u + h * k3.u, s.v + h * k3.v});
    return {s.u + h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
            s.v + h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
}

}  // namespace

ShootingResult shoot(const model::ProblemConfig& cfg, double epsilon, double lambda, int grid_size) {
    if (grid_size < 1000) throw DomainError("grid_size must be >= 1000");
    if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
    const model::DensityParams d = model::density_params(cfg, epsilon);
    const int l = cfg.angular_index();
    const double damping = 2.0 * l + cfg.dimension() - 2.0;

    const double t0 = std::log(kStartRadius);
    const double t_interface = std::log1p(-epsilon);
    const int shell_steps = grid_size / 4;
    const int inner_steps = grid_size - shell_steps;

    // Regular Frobenius branch: u = 1 - lambda rho r^2 / (2 (2l + N)) + ...
    const double r0sq = kStartRadius * kStartRadius;
    const double c2 = lambda * d.rho_inner / (2.0 * (2.0 * l + cfg.dimension()));
    State s{1.0 - c2 * r0sq, -2.0 * c2 * r0sq};
    double peak = std::abs(s.u) * std::pow(kStartRadius, l);

    auto run = [&](double ta, double tb, int n, double rho) {
        const Rhs f{damping, lambda * rho};
        const double h = (tb - ta) / n;
        for (int i = 0; i < n; ++i) {
            const double t = ta + i * h;
            s = rk4(f, t, s, h);
            if (!std::isfinite(s.u) || !std::isfinite(s.v))
                throw StepUnderflowError("radial integration diverged at r = " +
                                         std::to_string(std::exp(t + h)));
            peak = std::max(peak, std::abs(s.u) * std::exp(l * (t + h)));
        }
    };
    run(t0, t_interface, inner_steps, d.rho_inner);
    run(t_interface, 0.0, shell_steps, d.rho_annulus);

    // S'(1) = l u(1) + u'(1)
    const double mismatch = (l * s.u + s.v) / peak;
    return {lambda, mismatch, grid_size};
}

double eigenvalue_by_shooting(const model::ProblemConfig& cfg, double epsilon,
                              std::pair<double, double> bracket, int grid_size) {
    double lo = std::min(bracket.first, bracket.second);
    double hi = std::max(bracket.first, bracket.second);
    double flo = shoot(cfg, epsilon, lo, grid_size).boundary_mismatch;
    const double fhi = shoot(cfg, epsilon, hi, grid_size).boundary_mismatch;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw BracketError("no sign change of the shooting mismatch on the bracket");
    for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = shoot(cfg, epsilon, mid, grid_size).boundary_mismatch;
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace steklov::oracle
