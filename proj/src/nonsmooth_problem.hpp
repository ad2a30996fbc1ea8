#pragma once

#include <memory>

#include "problem.hpp"
#include "rng.hpp"

namespace saddlevr {

/// Separable non-smooth family
///   f_i(x,y) = mu/2 ||x||^2 + s_i ||x||_1 - mu/2 ||y||^2 - t_i ||y||_1
///              + c_i'x - d_i'y
/// with s_i, t_i >= 0.  Strongly convex-concave but non-differentiable at
/// coordinate zeros; the prox is an exact coordinate-wise soft threshold, so
/// sub-linear rate measurements are not polluted by inner-solver error.
class NonsmoothSeparableProblem final : public SaddleProblem {
 public:
  NonsmoothSeparableProblem(double mu, Eigen::VectorXd s, Eigen::VectorXd t,
                            Eigen::MatrixXd c, Eigen::MatrixXd d);

  bool smooth() const override { return false; }
  void grad_component_into(std::int64_t i, const PrimalDualPoint& point,
                           OperatorValue& out) const override;
  void prox_component_into(std::int64_t i, double gamma_x, double gamma_y,
                           const PrimalDualPoint& point,
                           PrimalDualPoint& out) const override;
  PrimalDualPoint saddle() const override;

  double s(std::int64_t i) const { return s_(i); }
  double t(std::int64_t i) const { return t_(i); }
  Eigen::VectorXd c(std::int64_t i) const { return c_.col(i); }
  Eigen::VectorXd d(std::int64_t i) const { return d_.col(i); }

 private:
  Eigen::VectorXd s_, t_;   // per-component l1 weights
  Eigen::MatrixXd c_, d_;   // d x n linear terms
};

double soft_threshold(double a, double tau);

std::shared_ptr<NonsmoothSeparableProblem> make_random_nonsmooth(
    std::uint64_t seed, std::int64_t n, Eigen::Index d, double mu,
    double scale = 1.0);

}  // namespace saddlevr
