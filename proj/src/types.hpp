#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace saddlevr {

class SaddleProblem;

/// Joint primal-dual iterate (x, y).
struct PrimalDualPoint {
  Eigen::VectorXd x;
  Eigen::VectorXd y;

  PrimalDualPoint() = default;
  PrimalDualPoint(Eigen::VectorXd px, Eigen::VectorXd py)
      : x(std::move(px)), y(std::move(py)) {}

  static PrimalDualPoint zero(Eigen::Index dx, Eigen::Index dy) {
    return {Eigen::VectorXd::Zero(dx), Eigen::VectorXd::Zero(dy)};
  }

  bool all_finite() const { return x.allFinite() && y.allFinite(); }

  /// Squared joint distance ||x-o.x||^2 + ||y-o.y||^2.
  double dist_sq(const PrimalDualPoint& o) const {
    return (x - o.x).squaredNorm() + (y - o.y).squaredNorm();
  }
};

/// Per-component operator value in the monotone convention: the second
/// block is the negated partial in y, so the joint field is monotone for
/// convex-concave components.
struct OperatorValue {
  Eigen::VectorXd gx;      // d/dx block
  Eigen::VectorXd gy_neg;  // -(d/dy) block

  double squared_norm() const { return gx.squaredNorm() + gy_neg.squaredNorm(); }
  double dist_sq(const OperatorValue& o) const {
    return (gx - o.gx).squaredNorm() + (gy_neg - o.gy_neg).squaredNorm();
  }
  bool all_finite() const { return gx.allFinite() && gy_neg.allFinite(); }
};

/// Joint inner product of two stacked (gx, gy_neg)-style pairs.
inline double joint_dot(const Eigen::VectorXd& ax, const Eigen::VectorXd& ay,
                        const Eigen::VectorXd& bx, const Eigen::VectorXd& by) {
  return ax.dot(bx) + ay.dot(by);
}

/// Problem-level constants: component count, strong convexity-concavity
/// modulus, joint gradient Lipschitz constant and condition number.
struct ProblemConstants {
  std::int64_t n = 0;
  double mu = 0.0;
  double lip = 0.0;
  double kappa = 0.0;

  static ProblemConstants make(std::int64_t n, double mu, double lip);
  void validate() const;  // throws std::invalid_argument
};

/// Step size, contraction factor and Lyapunov weight of the stochastic
/// proximal-point iteration.
struct RateConstants {
  double gamma = 0.0;
  double alpha = 0.0;  // 1 / (1 + mu*gamma)
  double c = 0.0;      // n*gamma^2 / (1 - (n-1)*mu*gamma)
};

/// Closed-form step size gamma = 2 / (sqrt((n-1)^2 mu^2 + 4 L^2 n) + (n-1) mu)
/// (a cancellation-free rearrangement) together with alpha and c.
/// Guarantees (n-1)*mu*gamma < 1 and alpha in (0,1).
RateConstants default_step_size(const ProblemConstants& consts);

/// Lyapunov weight for a user-chosen step size; NaN when (n-1)*mu*gamma >= 1.
double lyapunov_weight(std::int64_t n, double mu, double gamma);

/// Stored per-component operator values plus their running average.
///
/// The mean is updated incrementally on replace and recomputed exactly every
/// n replacements, which keeps it within 1e-12 relative of the true mean.
class GradientTable {
 public:
  GradientTable() = default;

  /// All entries initialised to g_i(point); one full pass over components.
  GradientTable(const SaddleProblem& problem, const PrimalDualPoint& point);

  void rebuild(const SaddleProblem& problem, const PrimalDualPoint& point);

  /// entries[j] = value, mean adjusted incrementally.
  void replace(std::int64_t j, const OperatorValue& value);

  const OperatorValue& entry(std::int64_t j) const { return entries_.at(j); }
  const OperatorValue& mean() const { return mean_; }
  std::int64_t size() const { return static_cast<std::int64_t>(entries_.size()); }
  std::int64_t updates_since_rebuild() const { return updates_since_rebuild_; }

  /// Exact arithmetic mean by direct summation (also the periodic rebuild).
  void recompute_mean();

 private:
  std::vector<OperatorValue> entries_;
  OperatorValue mean_;
  std::int64_t updates_since_rebuild_ = 0;
};

}  // namespace saddlevr
