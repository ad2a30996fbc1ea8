#pragma once

#include <memory>
#include <optional>

#include "types.hpp"

namespace saddlevr {

/// A finite-sum saddle-point problem: f(x,y) = (1/n) sum_i f_i(x,y) with each
/// f_i strongly convex in x and strongly concave in y.
///
/// Implementations expose the per-component gradient operator
/// g_i = [d/dx f_i; -(d/dy) f_i] and the proximal step of f_i.  Both accept
/// separate primal/dual step sizes so the variable-rescaling wrapper can
/// delegate; prox_component(i, gamma, p) is the isotropic case.
///
/// Instances are immutable after construction and safe to share across
/// concurrent solver runs.
class SaddleProblem {
 public:
  virtual ~SaddleProblem() = default;

  const ProblemConstants& constants() const { return constants_; }
  Eigen::Index dx() const { return dx_; }
  Eigen::Index dy() const { return dy_; }
  std::int64_t n() const { return constants_.n; }

  /// False for families with non-differentiable components.
  virtual bool smooth() const { return true; }

  virtual void grad_component_into(std::int64_t i, const PrimalDualPoint& point,
                                   OperatorValue& out) const = 0;

  /// Solves min_u max_v f_i(u,v) + ||u-p||^2/(2*gx) - ||v-q||^2/(2*gy).
  virtual void prox_component_into(std::int64_t i, double gamma_x, double gamma_y,
                                   const PrimalDualPoint& point,
                                   PrimalDualPoint& out) const = 0;

  /// The exact saddle point of the averaged objective.
  virtual PrimalDualPoint saddle() const = 0;

  /// Primal suboptimality metric when the family defines one (EM-MSPBE),
  /// otherwise nullopt.
  virtual std::optional<double> primal_gap(const Eigen::VectorXd& /*x*/) const {
    return std::nullopt;
  }

  /// Lipschitz constant of the operator after the change of variables
  /// x -> x/inv_sx ... i.e. of S^-1 J S^-1 with S = diag(1/inv_sx, 1/inv_sy)
  /// blocks.  Conservative default; families override with exact values.
  virtual double lipschitz_under_scaling(double inv_sx, double inv_sy) const {
    const double s = std::max(inv_sx, inv_sy);
    return constants_.lip * s * s;
  }

  OperatorValue grad_component(std::int64_t i, const PrimalDualPoint& point) const {
    OperatorValue out;
    grad_component_into(i, point, out);
    return out;
  }

  PrimalDualPoint prox_component(std::int64_t i, double gamma,
                                 const PrimalDualPoint& point) const {
    PrimalDualPoint out;
    prox_component_into(i, gamma, gamma, point, out);
    return out;
  }

  /// Mean operator over all components (n component evaluations).
  OperatorValue mean_operator(const PrimalDualPoint& point) const;

  void check_point(const PrimalDualPoint& point) const;  // dimension guard

 protected:
  SaddleProblem(ProblemConstants consts, Eigen::Index dx, Eigen::Index dy)
      : constants_(consts), dx_(dx), dy_(dy) {}

  ProblemConstants constants_;
  Eigen::Index dx_ = 0;
  Eigen::Index dy_ = 0;
};

using ProblemPtr = std::shared_ptr<const SaddleProblem>;

}  // namespace saddlevr
