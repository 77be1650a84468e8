#pragma once

#include "steklov/characteristic.hpp"
#include "steklov/model.hpp"

namespace steklov::branch {

/// Radial factor S_l(r) of the eigenfunction at a converged root:
///   r^(1-N/2) J_nu(sqrt(lambda eps) r)                          r <= 1 - eps
///   r^(1-N/2) (alpha J_nu(k r) + beta Y_nu(k r)),  k = sqrt(lambda rho~)   r > 1 - eps
class RadialProfile {
public:
    RadialProfile(const model::ProblemConfig& cfg, const BranchPoint& point);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double epsilon() const noexcept { return epsilon_; }
    double lambda() const noexcept { return lambda_; }
    double interface_radius() const noexcept { return 1.0 - epsilon_; }

    /// S(r) and S'(r) for r in (0, 1]. At r = 1 - eps the inner formula is used.
    double value(double r) const;
    double derivative(double r) const;

    struct Jumps {
        double value;       ///< |S_in - S_out| / max(|S_in|, |S_out|)
        double derivative;  ///< same for S'
    };
    /// Both one-sided formulas evaluated at r = 1 - eps.
    Jumps continuity_jumps() const;

    double boundary_derivative() const { return derivative(1.0); }
    /// |S'(1)| / max |S'| over a uniform sample of (0, 1].
    double relative_boundary_derivative(int samples = 2000) const;

private:
    double inner(double r, bool derivative) const;
    double outer(double r, bool derivative) const;

    double nu_;
    double power_;  ///< 1 - N/2
    double epsilon_;
    double lambda_;
    double k_inner_;
    double k_outer_;
    double alpha_;
    double beta_;
};

/// Throws PreconditionError for a point whose residual missed the tolerance.
RadialProfile radial_profile(const model::ProblemConfig& cfg, const BranchPoint& point);

}  // namespace steklov::branch
