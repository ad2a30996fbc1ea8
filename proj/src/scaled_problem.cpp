#include "scaled_problem.hpp"

#include <cmath>
#include <stdexcept>

namespace saddlevr {

ScaledProblem::ScaledProblem(ProblemPtr base, double mu_x, double mu_y)
    : SaddleProblem(ProblemConstants{}, base ? base->dx() : 0,
                    base ? base->dy() : 0),
      base_(std::move(base)),
      mu_x_(mu_x),
      mu_y_(mu_y) {
  if (!base_) throw std::invalid_argument("scale_problem: null base");
  if (!(mu_x_ > 0.0) || !(mu_y_ > 0.0))
    throw std::invalid_argument("scale_problem: moduli must be > 0");
  sx_ = std::sqrt(mu_x_);
  sy_ = std::sqrt(mu_y_);
  constants_.n = base_->n();
  constants_.mu = 1.0;
  constants_.lip = base_->lipschitz_under_scaling(1.0 / sx_, 1.0 / sy_);
  constants_.kappa = constants_.lip;
}

PrimalDualPoint ScaledProblem::to_base(const PrimalDualPoint& scaled) const {
  return {scaled.x / sx_, scaled.y / sy_};
}

PrimalDualPoint ScaledProblem::from_base(const PrimalDualPoint& base_point) const {
  return {base_point.x * sx_, base_point.y * sy_};
}

void ScaledProblem::grad_component_into(std::int64_t i, const PrimalDualPoint& point,
                                        OperatorValue& out) const {
  base_->grad_component_into(i, to_base(point), out);
  out.gx /= sx_;
  out.gy_neg /= sy_;
}

void ScaledProblem::prox_component_into(std::int64_t i, double gamma_x,
                                        double gamma_y, const PrimalDualPoint& point,
                                        PrimalDualPoint& out) const {
  // min over u of f(u, .) + mu_x/(2 gamma_x) ||u - p/sx||^2 after substituting
  // u = ut/sx: the base prox at the unscaled point with gamma/mu per block.
  base_->prox_component_into(i, gamma_x / mu_x_, gamma_y / mu_y_, to_base(point), out);
  out.x *= sx_;
  out.y *= sy_;
}

PrimalDualPoint ScaledProblem::saddle() const { return from_base(base_->saddle()); }

std::optional<double> ScaledProblem::primal_gap(const Eigen::VectorXd& x) const {
  return base_->primal_gap(x / sx_);
}

double ScaledProblem::lipschitz_under_scaling(double inv_sx, double inv_sy) const {
  return base_->lipschitz_under_scaling(inv_sx / sx_, inv_sy / sy_);
}

std::shared_ptr<ScaledProblem> scale_problem(ProblemPtr base, double mu_x,
                                             double mu_y) {
  return std::make_shared<ScaledProblem>(std::move(base), mu_x, mu_y);
}

}  // namespace saddlevr
