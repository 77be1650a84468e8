#include "steklov/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "steklov/errors.hpp"

namespace steklov::branch {

namespace {

constexpr int kProbesPerSide = 8;

bool is_interval(const model::ProblemConfig& cfg) { return cfg.dimension() == 1; }

void check_interval_index(const model::ProblemConfig& cfg) {
    if (is_interval(cfg) && cfg.angular_index() > 1)
        throw DomainError("the interval problem has a single nonzero Steklov eigenvalue (l = 1)");
}

double anchor_of(const model::ProblemConfig& cfg) {
    if (is_interval(cfg))
        return cfg.angular_index() == 0 ? 0.0 : spectrum::interval_eigenvalue(cfg.mass().value());
    return spectrum::steklov_eigenvalue(cfg).value;
}

double slope_of(const model::ProblemConfig& cfg) {
    if (cfg.angular_index() == 0) return 0.0;
    if (is_interval(cfg)) return spectrum::interval_slope(cfg.mass().value());
    return spectrum::slope_at_zero(cfg);
}

double evaluate(const model::ProblemConfig& cfg, double eps, double lambda) {
    return is_interval(cfg) ? characteristic_1d(cfg.mass().value(), eps, lambda)
                            : characteristic(cfg, eps, lambda);
}

BranchPoint solve(const model::ProblemConfig& cfg, double eps, Bracket bracket) {
    return is_interval(cfg) ? find_root_1d(cfg.mass().value(), eps, bracket)
                            : find_root(cfg, eps, bracket);
}

std::optional<BranchPoint> corrector_with_expansion(const model::ProblemConfig& cfg, double eps,
                                                    double predicted, double half_width,
                                                    int max_expansions) {
    double hw = half_width;
    for (int e = 0; e <= max_expansions; ++e, hw *= 2.0) {
        if (auto p = correct_near(cfg, eps, predicted, hw)) return p;
    }
    return std::nullopt;
}

}  // namespace

std::optional<BranchPoint> correct_near(const model::ProblemConfig& cfg, double epsilon,
                                        double predicted, double half_width) {
    // Probe predicted + half_width * j / 8, j = -8..8, and take the sign
    // change closest to the prediction.
    const double floor = predicted * 1e-3;
    std::vector<double> xs;
    for (int j = -kProbesPerSide; j <= kProbesPerSide; ++j) {
        const double x = predicted + half_width * j / kProbesPerSide;
        if (x > floor) xs.push_back(x);
    }
    if (xs.size() < 2) return std::nullopt;
    std::vector<double> fs;
    fs.reserve(xs.size());
    for (double x : xs) fs.push_back(evaluate(cfg, epsilon, x));

    std::optional<Bracket> best;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const bool change = fs[i] == 0.0 || fs[i + 1] == 0.0 || (fs[i] < 0.0) != (fs[i + 1] < 0.0);
        if (!change) continue;
        const double d = std::abs(0.5 * (xs[i] + xs[i + 1]) - predicted);
        if (d < best_distance) {
            best_distance = d;
            best = Bracket{xs[i], xs[i + 1]};
        }
    }
    if (!best) return std::nullopt;
    BranchPoint p = solve(cfg, epsilon, *best);
    if (!p.converged) return std::nullopt;
    return p;
}

BranchTable continue_branch(const model::ProblemConfig& cfg, double eps_max, int steps,
                            const ContinuationOptions& options) {
    if (!(eps_max > 0.0 && eps_max < 1.0)) throw DomainError("eps_max must lie in (0, 1)");
    if (steps < 1) throw DomainError("steps must be >= 1");
    check_interval_index(cfg);
    const double anchor = anchor_of(cfg);
    const double slope0 = slope_of(cfg);
    BranchTable table{cfg, {}, anchor, slope0, false};
    table.points.reserve(static_cast<std::size_t>(steps));
    const int l = cfg.angular_index();
    const double mass = cfg.mass().value();

    if (l == 0) {
        for (int i = 1; i <= steps; ++i)
            table.points.push_back({eps_max * i / steps, 0.0, 0.0, 0, cfg.dimension(), mass, true});
        return table;
    }

    double eps_prev = 0.0;
    double lambda_prev = anchor;
    double slope = slope0;
    for (int i = 1; i <= steps; ++i) {
        const double target = eps_max * i / steps;
        double h = target - eps_prev;
        int halvings = 0;
        BranchPoint last{};
        while (eps_prev < target) {
            const double eps = std::min(eps_prev + h, target);
            const double step = eps - eps_prev;
            const double predicted = lambda_prev + slope * step;
            const double half_width = std::max(0.25 * anchor, 10.0 * std::abs(slope) * step);
            auto p = corrector_with_expansion(cfg, eps, predicted, half_width, options.max_expansions);
            if (!p) {
                if (halvings >= options.max_halvings) {
                    table.truncated = true;
                    return table;
                }
                h *= 0.5;
                ++halvings;
                continue;
            }
            slope = (p->lambda - lambda_prev) / step;
            lambda_prev = p->lambda;
            eps_prev = eps;
            last = *p;
        }
        table.points.push_back(last);
    }
    return table;
}

std::vector<SlopeSample> slope_estimate(const model::ProblemConfig& cfg,
                                        const std::vector<double>& eps_list) {
    check_interval_index(cfg);
    const double anchor = anchor_of(cfg);
    const double slope0 = slope_of(cfg);
    std::vector<SlopeSample> out;
    out.reserve(eps_list.size());
    for (double eps : eps_list) {
        if (!(eps > 0.0 && eps <= 0.05))
            throw DomainError("slope estimates need eps in (0, 0.05], got " + std::to_string(eps));
        if (cfg.angular_index() == 0) {
            out.push_back({eps, 0.0, 0.0});
            continue;
        }
        const double predicted = anchor + slope0 * eps;
        const double half_width = std::max(0.25 * anchor, 10.0 * slope0 * eps);
        auto p = corrector_with_expansion(cfg, eps, predicted, half_width, 2);
        if (!p)
            throw BracketError("no root found near the first-order prediction at eps = " +
                               std::to_string(eps));
        out.push_back({eps, p->lambda, (p->lambda - anchor) / eps});
    }
    return out;
}

std::vector<FamilyPoint> trace_families(const model::ProblemConfig& cfg,
                                        const std::vector<double>& eps_values, double lambda_max,
                                        int samples) {
    if (!(lambda_max > 0.0)) throw DomainError("lambda_max must be positive");
    if (samples < 2) throw DomainError("samples must be >= 2");
    std::vector<FamilyPoint> out;
    const double lo = lambda_max / samples;
    for (double eps : eps_values) {
        const auto roots = is_interval(cfg)
                               ? roots_in_interval_1d(cfg.mass().value(), eps, lo, lambda_max, samples, false)
                               : roots_in_interval(cfg, eps, lo, lambda_max, samples, false);
        int index = 0;
        for (const BranchPoint& r : roots) {
            const int branch = index++;
            if (r.converged) out.push_back({cfg.angular_index(), branch, eps, r.lambda, r.residual});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const FamilyPoint& a, const FamilyPoint& b) {
        return a.branch < b.branch;
    });
    return out;
}

}  // namespace steklov::branch
