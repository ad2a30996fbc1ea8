#pragma once

#include <memory>

#include "problem.hpp"

namespace saddlevr {

/// Change-of-variables wrapper for problems whose strong convexity (mu_x) and
/// strong concavity (mu_y) moduli differ.  Works on xt = sqrt(mu_x) x,
/// yt = sqrt(mu_y) y, under which the wrapped problem is 1-strongly
/// convex-concave; gradient and prox delegate to the base problem with the
/// substitution applied on entry/exit (the prox picks up per-block step
/// sizes gamma/mu_x and gamma/mu_y).
class ScaledProblem final : public SaddleProblem {
 public:
  ScaledProblem(ProblemPtr base, double mu_x, double mu_y);

  bool smooth() const override { return base_->smooth(); }
  void grad_component_into(std::int64_t i, const PrimalDualPoint& point,
                           OperatorValue& out) const override;
  void prox_component_into(std::int64_t i, double gamma_x, double gamma_y,
                           const PrimalDualPoint& point,
                           PrimalDualPoint& out) const override;
  PrimalDualPoint saddle() const override;
  std::optional<double> primal_gap(const Eigen::VectorXd& x) const override;
  double lipschitz_under_scaling(double inv_sx, double inv_sy) const override;

  PrimalDualPoint to_base(const PrimalDualPoint& scaled) const;
  PrimalDualPoint from_base(const PrimalDualPoint& base_point) const;

  const SaddleProblem& base() const { return *base_; }
  double mu_x() const { return mu_x_; }
  double mu_y() const { return mu_y_; }

 private:
  ProblemPtr base_;
  double mu_x_, mu_y_;
  double sx_, sy_;  // sqrt moduli
};

/// Wraps `base` (which must satisfy the (mu_x, mu_y) strong
/// convexity-concavity assumption) so the result reports mu = 1.
std::shared_ptr<ScaledProblem> scale_problem(ProblemPtr base, double mu_x,
                                             double mu_y);

}  // namespace saddlevr
