#include "steklov/characteristic.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "steklov/bessel.hpp"
#include "steklov/crossprod.hpp"
#include "steklov/errors.hpp"

namespace steklov::branch {

namespace {

constexpr int kMaxRootIter = 200;
// Series in delta is only considered while delta * max(1, (nu + 1)/b) stays below this.
constexpr double kSeriesReach = 0.1;

using Evaluator = std::function<CharacteristicValue(double)>;

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
}

// |F| relative to the larger of its product terms and lambda |dF/dlambda|.
// The second measure keeps the residual meaningful when a factor common to
// every product vanishes at the root.
double root_residual(const Evaluator& f, double x) {
    const CharacteristicValue v = f(x);
    const double h = 1e-6 * x;
    const double slope = (f(x + h).value - f(x - h).value) / (2.0 * h);
    const double scale = std::max(v.scale, std::abs(slope) * x);
    return scale > 0.0 ? std::abs(v.value) / scale : std::abs(v.value);
}

BranchPoint solve_bracket(const Evaluator& f, Bracket bracket, double epsilon, int l, int dimension,
                          double mass) {
    double lo = std::min(bracket.first, bracket.second);
    double hi = std::max(bracket.first, bracket.second);
    if (!(lo > 0.0)) throw DomainError("root bracket must lie in lambda > 0");
    const double flo = f(lo).value;
    const double fhi = f(hi).value;
    if (flo == 0.0) return {epsilon, lo, 0.0, l, dimension, mass};
    if (fhi == 0.0) return {epsilon, hi, 0.0, l, dimension, mass};
    if ((flo < 0.0) == (fhi < 0.0))
        throw BracketError("no sign change of the characteristic function on [" + std::to_string(lo) +
                           ", " + std::to_string(hi) + "]");

    auto tol = [](double x, double y) {
        return std::abs(y - x) <= 4.0 * DBL_EPSILON * std::max(std::abs(x), std::abs(y));
    };
    std::uintmax_t iters = kMaxRootIter;
    const auto [x0, x1] = boost::math::tools::toms748_solve(
        [&](double x) { return f(x).value; }, lo, hi, flo, fhi, tol, iters);
    const double root = std::abs(f(x0).value) <= std::abs(f(x1).value) ? x0 : x1;
    const double residual = root_residual(f, root);
    const bool converged = residual <= root_tolerance();
    if (!converged && !tol(x0, x1))
        throw ConvergenceError("root solve hit the iteration cap", root);
    return {epsilon, root, residual, l, dimension, mass, converged};
}

std::vector<BranchPoint> scan_roots(const Evaluator& f, double lo, double hi, int samples,
                                    bool geometric, double epsilon, int l, int dimension,
                                    double mass) {
    if (!(lo > 0.0) || !(hi > lo) || samples < 2) throw DomainError("invalid scan interval");
    std::vector<double> xs(static_cast<std::size_t>(samples) + 1);
    for (int i = 0; i <= samples; ++i) {
        const double t = static_cast<double>(i) / samples;
        xs[i] = geometric ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    xs.back() = hi;
    std::vector<BranchPoint> roots;
    double prev = f(xs[0]).value;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double cur = f(xs[i]).value;
        if (prev != 0.0 && cur != 0.0 && (prev < 0.0) != (cur < 0.0))
            roots.push_back(solve_bracket(f, {xs[i - 1], xs[i]}, epsilon, l, dimension, mass));
        else if (cur == 0.0)
            roots.push_back({epsilon, xs[i], 0.0, l, dimension, mass});
        prev = cur;
    }
    return roots;
}

}  // namespace

double root_tolerance() {
    if (const char* env = std::getenv("STEKLOV_ROOT_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0 && std::isfinite(v)) return v;
    }
    return kDefaultRootTol;
}

double CharacteristicValue::residual() const noexcept {
    return scale > 0.0 ? std::abs(value) / scale : std::abs(value);
}

ShiftedCrossProducts shifted_cross_products(double nu, double b, double delta) {
    using crossprod::CrossFamily;
    const double c = b + delta;
    const bessel::BesselPair pb = bessel::bessel_jy(nu, b);
    const bessel::BesselPair pc = bessel::bessel_jy(nu, c);
    const double direct[4] = {pb.yp * pc.j - pb.jp * pc.y, pb.j * pc.y - pb.y * pc.j,
                              pb.yp * pc.jp - pb.jp * pc.yp, pb.j * pc.yp - pb.y * pc.jp};
    // Rounding of the literal difference, a few ulps of the larger product.
    const double direct_err[4] = {
        4.0 * DBL_EPSILON * (std::abs(pb.yp * pc.j) + std::abs(pb.jp * pc.y)),
        4.0 * DBL_EPSILON * (std::abs(pb.j * pc.y) + std::abs(pb.y * pc.j)),
        4.0 * DBL_EPSILON * (std::abs(pb.yp * pc.jp) + std::abs(pb.jp * pc.yp)),
        4.0 * DBL_EPSILON * (std::abs(pb.j * pc.yp) + std::abs(pb.y * pc.jp))};
    ShiftedCrossProducts out{direct[0], direct[1], direct[2], direct[3], false};
    if (delta * std::max(1.0, (nu + 1.0) / b) > kSeriesReach) return out;

    // f(c) = sum_k delta^k/k! f^(k)(b), applied to the c-dependent factor of
    // each product. Order k = 0 of the Y'J family is the Wronskian 2/(pi b).
    const int kmax = crossprod::kMaxCrossOrder;
    double q[crossprod::kMaxCrossOrder + 1];
    double r[crossprod::kMaxCrossOrder + 1];
    q[0] = 2.0 / (std::numbers::pi * b);
    r[0] = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        q[k] = crossprod::evaluate(crossprod::recursive_form({CrossFamily::YprimeJ, k}, nu), b);
        r[k] = crossprod::evaluate(crossprod::recursive_form({CrossFamily::YJ, k}, nu), b);
    }
    double coef[crossprod::kMaxCrossOrder + 1];
    coef[0] = 1.0;
    for (int k = 1; k <= kmax; ++k) coef[k] = coef[k - 1] * delta / k;
    double series[4] = {0.0, 0.0, 0.0, 0.0};
    double magnitude[4] = {0.0, 0.0, 0.0, 0.0};
    for (int k = kmax; k >= 0; --k) {
        series[0] += coef[k] * q[k];
        series[1] -= coef[k] * r[k];
        magnitude[0] += std::abs(coef[k] * q[k]);
        magnitude[1] += std::abs(coef[k] * r[k]);
        if (k < kmax) {
            series[2] += coef[k] * q[k + 1];
            series[3] -= coef[k] * r[k + 1];
            magnitude[2] += std::abs(coef[k] * q[k + 1]);
            magnitude[3] += std::abs(coef[k] * r[k + 1]);
        }
    }
    // The last included term stands in for the truncation error.
    const double tail[4] = {std::abs(coef[kmax] * q[kmax]), std::abs(coef[kmax] * r[kmax]),
                            std::abs(coef[kmax - 1] * q[kmax]), std::abs(coef[kmax - 1] * r[kmax])};
    double* slots[4] = {&out.yp_j, &out.j_y, &out.yp_jp, &out.j_yp};
    for (int i = 0; i < 4; ++i) {
        const double series_err = tail[i] + 4.0 * DBL_EPSILON * magnitude[i];
        if (series_err < direct_err[i]) {
            *slots[i] = series[i];
            out.from_series = true;
        }
    }
    return out;
}

CharacteristicValue characteristic_terms(const model::ProblemConfig& cfg, double epsilon,
                                         double lambda) {
    if (cfg.dimension() < 2)
        throw DomainError("the Bessel characteristic function needs N >= 2; use characteristic_1d");
    check_epsilon(epsilon);
    const model::WaveArguments w = model::wave_arguments(cfg, epsilon, lambda);
    const double nu = cfg.nu();
    const double delta = w.b * epsilon / (1.0 - epsilon);
    const double c = w.b + delta;
    const bessel::BesselPair pa = bessel::bessel_jy(nu, w.a);
    const ShiftedCrossProducts x = shifted_cross_products(nu, w.b, delta);
    const double k1 = 1.0 - 0.5 * cfg.dimension();
    const double ratio = w.a / w.b;
    const double t1 = k1 * pa.j * x.yp_j;
    const double t2 = k1 * ratio * pa.jp * x.j_y;
    const double t3 = c * pa.j * x.yp_jp;
    const double t4 = c * ratio * pa.jp * x.j_yp;
    return {t1 + t2 + t3 + t4, std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4)};
}

double characteristic(const model::ProblemConfig& cfg, double epsilon, double lambda) {
    return characteristic_terms(cfg, epsilon, lambda).value;
}

double residual_at(const model::ProblemConfig& cfg, double epsilon, double lambda) {
    return root_residual([&](double x) { return characteristic_terms(cfg, epsilon, x); }, lambda);
}

namespace {

struct TruncatedCoefficients {
    double quad;    // multiplies lambda^2 eps
    double lin;     // multiplies lambda eps
    double anchor;  // 2 N omega l / M
    double shift;   // multiplies -anchor * eps
};

TruncatedCoefficients truncated_coefficients(const model::ProblemConfig& cfg) {
    if (cfg.dimension() < 2) throw DomainError("expansion needs N >= 2");
    const double nu = cfg.nu();
    if (!(nu > 0.0)) throw DomainError("expansion divides by nu (1 + nu); nu = 0 is not supported");
    const double n = cfg.dimension();
    const double ratio = cfg.steklov_ratio();  // N omega / M
    const double nn1 = nu * (1.0 + nu);
    return {1.0 / (3.0 * ratio) - 1.0 / nn1, n / 2.0 - nu + (2.0 - n) * ratio / (2.0 * nn1),
            2.0 * ratio * cfg.angular_index(), (n - 1.0) / 2.0 - ratio / n - nu};
}

}  // namespace

double truncated_characteristic(const model::ProblemConfig& cfg, double epsilon, double lambda) {
    const TruncatedCoefficients t = truncated_coefficients(cfg);
    return lambda * lambda * epsilon * t.quad + lambda * epsilon * t.lin - 2.0 * lambda + t.anchor -
           t.anchor * t.shift * epsilon;
}

Partials truncated_partials(const model::ProblemConfig& cfg, double epsilon, double lambda) {
    const TruncatedCoefficients t = truncated_coefficients(cfg);
    return {2.0 * lambda * epsilon * t.quad + epsilon * t.lin - 2.0,
            lambda * lambda * t.quad + lambda * t.lin - t.anchor * t.shift};
}

double rescaled_characteristic(const model::ProblemConfig& cfg, double epsilon, double lambda) {
    const double nu = cfg.nu();
    if (!(nu > 0.0)) throw DomainError("rescaling multiplies by nu; nu = 0 is not supported");
    const model::WaveArguments w = model::wave_arguments(cfg, epsilon, lambda);
    const double jpa = bessel::bessel_jy(nu, w.a).jp;
    if (jpa == 0.0) throw DomainError("rescaling divides by J_nu'(a), which vanishes here");
    const double b1 = w.b * std::sqrt(epsilon / lambda);
    return characteristic(cfg, epsilon, lambda) / jpa / epsilon * std::numbers::pi * nu *
           (1.0 - epsilon) / b1;
}

std::vector<RemainderSample> remainder_scaling(const model::ProblemConfig& cfg, double lambda,
                                               const std::vector<double>& eps_grid) {
    std::vector<RemainderSample> out;
    out.reserve(eps_grid.size());
    for (double eps : eps_grid) {
        if (!(eps > 0.0 && eps < 0.2))
            throw DomainError("remainder grid entries must lie in (0, 0.2), got " + std::to_string(eps));
        out.push_back({eps, std::abs(rescaled_characteristic(cfg, eps, lambda) -
                                     truncated_characteristic(cfg, eps, lambda))});
    }
    return out;
}

double loglog_slope(const std::vector<RemainderSample>& samples) {
    if (samples.size() < 2) throw DomainError("slope fit needs at least two samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : samples) {
        if (!(s.epsilon > 0.0) || !(s.remainder > 0.0))
            throw DomainError("log-log fit needs positive samples");
        const double x = std::log(s.epsilon);
        const double y = std::log(s.remainder);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(samples.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BranchPoint find_root(const model::ProblemConfig& cfg, double epsilon, Bracket bracket) {
    check_epsilon(epsilon);
    return solve_bracket([&](double x) { return characteristic_terms(cfg, epsilon, x); }, bracket,
                         epsilon, cfg.angular_index(), cfg.dimension(), cfg.mass().value());
}

std::vector<BranchPoint> roots_in_interval(const model::ProblemConfig& cfg, double epsilon,
                                           double lo, double hi, int samples, bool geometric) {
    check_epsilon(epsilon);
    return scan_roots([&](double x) { return characteristic_terms(cfg, epsilon, x); }, lo, hi,
                      samples, geometric, epsilon, cfg.angular_index(), cfg.dimension(),
                      cfg.mass().value());
}

CharacteristicValue characteristic_1d_terms(double mass, double epsilon, double lambda) {
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    check_epsilon(epsilon);
    if (!(lambda > 0.0)) throw DomainError("lambda must be positive (lambda = 0 solves for every eps)");
    const double rho2 = mass / (2.0 * epsilon) - 1.0 + epsilon;
    const double th1 = 2.0 * std::sqrt(lambda * epsilon) * (1.0 - epsilon);
    const double th2 = 2.0 * epsilon * std::sqrt(lambda * rho2);
    const double s1 = std::sin(th1);
    const double c2 = std::cos(th2);
    const double s2h = std::sin(0.5 * th2);
    const double first = 2.0 * std::sqrt(epsilon * rho2) * std::cos(th1) * std::sin(th2);
    // -(rho2 - eps) + (rho2 + eps) cos th2, with 1 - cos th2 = 2 sin^2(th2/2)
    const double bracket = -2.0 * rho2 * s2h * s2h + epsilon * (1.0 + c2);
    const double scale = std::abs(first) + std::abs((rho2 - epsilon) * s1) +
                         std::abs((rho2 + epsilon) * c2 * s1);
    return {first + bracket * s1, scale};
}

double characteristic_1d(double mass, double epsilon, double lambda) {
    return characteristic_1d_terms(mass, epsilon, lambda).value;
}

double residual_at_1d(double mass, double epsilon, double lambda) {
    return root_residual([&](double x) { return characteristic_1d_terms(mass, epsilon, x); }, lambda);
}

BranchPoint find_root_1d(double mass, double epsilon, Bracket bracket) {
    return solve_bracket([&](double x) { return characteristic_1d_terms(mass, epsilon, x); }, bracket,
                         epsilon, 1, 1, mass);
}

std::vector<BranchPoint> roots_in_interval_1d(double mass, double epsilon, double lo, double hi,
                                              int samples, bool geometric) {
    return scan_roots([&](double x) { return characteristic_1d_terms(mass, epsilon, x); }, lo, hi,
                      samples, geometric, epsilon, 1, 1, mass);
}

}  // namespace steklov::branch
