#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "steklov/characteristic.hpp"
#include "steklov/model.hpp"
#include "steklov/spectrum.hpp"

namespace steklov::branch {

/// Points of one branch in increasing epsilon, with the eps = 0 anchor.
struct BranchTable {
    model::ProblemConfig cfg;
    std::vector<BranchPoint> points;
    double anchor_lambda;
    double slope_at_zero;
    bool truncated = false;
};

struct ContinuationOptions {
    int max_halvings = 10;
    int max_expansions = 2;  ///< bracket half-width grows by 2x up to 4x
};

/// Predictor-corrector continuation of the branch through (0, lambda_l) on
/// the uniform grid eps_i = i * eps_max / steps. For l = 0 the principal
/// branch lambda = 0 is emitted analytically. N = 1 (with l = 1) follows the
/// interval equation. A branch that cannot be continued after
/// max_halvings step halvings ends the table with truncated = true.
BranchTable continue_branch(const model::ProblemConfig& cfg, double eps_max, int steps,
                            const ContinuationOptions& options = {});

/// One corrector step: the root nearest `predicted` found by sampling
/// predicted +- half_width. Returns nothing when no sign change is found.
std::optional<BranchPoint> correct_near(const model::ProblemConfig& cfg, double epsilon,
                                        double predicted, double half_width);

struct SlopeSample {
    double epsilon;
    double lambda;
    double quotient;  ///< (lambda(eps) - lambda_l) / eps
};

/// Difference quotients toward the first-order coefficient. Every eps must
/// lie in (0, 0.05].
std::vector<SlopeSample> slope_estimate(const model::ProblemConfig& cfg,
                                        const std::vector<double>& eps_list);

/// One (eps, lambda) sample of a branch family in figure mode.
struct FamilyPoint {
    int l;
    int branch;  ///< 0 = lowest positive root at this eps
    double epsilon;
    double lambda;
    double residual;
};

/// All positive roots below lambda_max at each eps, numbered by order.
/// Roots of the same l never cross, so the order identifies the family.
/// The scan spacing in lambda is lambda_max / samples.
std::vector<FamilyPoint> trace_families(const model::ProblemConfig& cfg,
                                        const std::vector<double>& eps_values, double lambda_max,
                                        int samples);

}  // namespace steklov::branch
