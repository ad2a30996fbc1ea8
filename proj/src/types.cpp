#include "types.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "problem.hpp"

namespace saddlevr {

ProblemConstants ProblemConstants::make(std::int64_t n, double mu, double lip) {
  ProblemConstants c;
  c.n = n;
  c.mu = mu;
  c.lip = lip;
  c.kappa = lip / mu;
  c.validate();
  return c;
}

void ProblemConstants::validate() const {
  if (n < 1) throw std::invalid_argument("ProblemConstants: n must be >= 1");
  if (!(mu > 0.0)) throw std::invalid_argument("ProblemConstants: mu must be > 0");
  if (!(lip >= mu)) throw std::invalid_argument("ProblemConstants: need L >= mu");
}

RateConstants default_step_size(const ProblemConstants& consts) {
  consts.validate();
  if (!std::isfinite(consts.lip))
    throw std::invalid_argument("default_step_size: L must be finite");
  const double n = static_cast<double>(consts.n);
  const double a = (n - 1.0) * consts.mu;
  // gamma = (sqrt(a^2 + 4 L^2 n) - a) / (2 L^2 n), rationalised to avoid
  // cancellation for a^2 >> L^2 n.
  const double root = std::sqrt(a * a + 4.0 * consts.lip * consts.lip * n);
  RateConstants rc;
  rc.gamma = 2.0 / (root + a);
  rc.alpha = 1.0 / (1.0 + consts.mu * rc.gamma);
  rc.c = lyapunov_weight(consts.n, consts.mu, rc.gamma);
  return rc;
}

double lyapunov_weight(std::int64_t n, double mu, double gamma) {
  const double denom = 1.0 - (static_cast<double>(n) - 1.0) * mu * gamma;
  if (!(denom > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(n) * gamma * gamma / denom;
}

OperatorValue SaddleProblem::mean_operator(const PrimalDualPoint& point) const {
  OperatorValue acc;
  acc.gx = Eigen::VectorXd::Zero(dx_);
  acc.gy_neg = Eigen::VectorXd::Zero(dy_);
  OperatorValue g;
  for (std::int64_t i = 0; i < n(); ++i) {
    grad_component_into(i, point, g);
    acc.gx += g.gx;
    acc.gy_neg += g.gy_neg;
  }
  acc.gx /= static_cast<double>(n());
  acc.gy_neg /= static_cast<double>(n());
  return acc;
}

void SaddleProblem::check_point(const PrimalDualPoint& point) const {
  if (point.x.size() != dx_ || point.y.size() != dy_)
    throw std::invalid_argument("point dimensions do not match problem");
}

GradientTable::GradientTable(const SaddleProblem& problem,
                             const PrimalDualPoint& point) {
  rebuild(problem, point);
}

void GradientTable::rebuild(const SaddleProblem& problem,
                            const PrimalDualPoint& point) {
  problem.check_point(point);
  const std::int64_t n = problem.n();
  entries_.resize(n);
  for (std::int64_t i = 0; i < n; ++i)
    problem.grad_component_into(i, point, entries_[i]);
  recompute_mean();
}

void GradientTable::replace(std::int64_t j, const OperatorValue& value) {
  const auto n = size();
  if (j < 0 || j >= n) throw std::out_of_range("GradientTable::replace index");
  const double inv_n = 1.0 / static_cast<double>(n);
  mean_.gx += (value.gx - entries_[j].gx) * inv_n;
  mean_.gy_neg += (value.gy_neg - entries_[j].gy_neg) * inv_n;
  entries_[j] = value;
  if (++updates_since_rebuild_ >= n) recompute_mean();
}

void GradientTable::recompute_mean() {
  mean_.gx = Eigen::VectorXd::Zero(entries_.front().gx.size());
  mean_.gy_neg = Eigen::VectorXd::Zero(entries_.front().gy_neg.size());
  for (const auto& e : entries_) {
    mean_.gx += e.gx;
    mean_.gy_neg += e.gy_neg;
  }
  const double inv_n = 1.0 / static_cast<double>(size());
  mean_.gx *= inv_n;
  mean_.gy_neg *= inv_n;
  updates_since_rebuild_ = 0;
}

}  // namespace saddlevr
