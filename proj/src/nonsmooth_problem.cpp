#include "nonsmooth_problem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace saddlevr {

namespace {
inline double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }
}

double soft_threshold(double a, double tau) {
  return sgn(a) * std::max(std::abs(a) - tau, 0.0);
}

NonsmoothSeparableProblem::NonsmoothSeparableProblem(double mu, Eigen::VectorXd s,
                                                     Eigen::VectorXd t,
                                                     Eigen::MatrixXd c,
                                                     Eigen::MatrixXd d)
    : SaddleProblem(ProblemConstants{}, c.rows(), c.rows()),
      s_(std::move(s)),
      t_(std::move(t)),
      c_(std::move(c)),
      d_(std::move(d)) {
  const auto n = c_.cols();
  if (n < 1 || c_.rows() < 1 || d_.rows() != c_.rows() || d_.cols() != n ||
      s_.size() != n || t_.size() != n)
    throw std::invalid_argument("NonsmoothSeparableProblem: inconsistent arrays");
  if (!(mu > 0.0) || s_.minCoeff() < 0.0 || t_.minCoeff() < 0.0)
    throw std::invalid_argument("NonsmoothSeparableProblem: need mu > 0, s,t >= 0");
  constants_.n = n;
  constants_.mu = mu;
  constants_.lip = std::numeric_limits<double>::infinity();
  constants_.kappa = std::numeric_limits<double>::infinity();
}

void NonsmoothSeparableProblem::grad_component_into(std::int64_t i,
                                                    const PrimalDualPoint& point,
                                                    OperatorValue& out) const {
  const double mu = constants_.mu;
  // Subgradient with the sign(0) = 0 selection.
  out.gx = mu * point.x + c_.col(i);
  out.gy_neg = mu * point.y + d_.col(i);
  for (Eigen::Index j = 0; j < dx_; ++j) out.gx(j) += s_(i) * sgn(point.x(j));
  for (Eigen::Index j = 0; j < dy_; ++j) out.gy_neg(j) += t_(i) * sgn(point.y(j));
}

void NonsmoothSeparableProblem::prox_component_into(std::int64_t i, double gamma_x,
                                                    double gamma_y,
                                                    const PrimalDualPoint& point,
                                                    PrimalDualPoint& out) const {
  const double mu = constants_.mu;
  out.x.resize(dx_);
  out.y.resize(dy_);
  for (Eigen::Index j = 0; j < dx_; ++j)
    out.x(j) = soft_threshold(point.x(j) - gamma_x * c_(j, i), gamma_x * s_(i)) /
               (1.0 + gamma_x * mu);
  for (Eigen::Index j = 0; j < dy_; ++j)
    out.y(j) = soft_threshold(point.y(j) - gamma_y * d_(j, i), gamma_y * t_(i)) /
               (1.0 + gamma_y * mu);
}

PrimalDualPoint NonsmoothSeparableProblem::saddle() const {
  // Scalar optimality per coordinate of the averaged objective.
  const double mu = constants_.mu;
  const double s_bar = s_.mean();
  const double t_bar = t_.mean();
  const Eigen::VectorXd c_bar = c_.rowwise().mean();
  const Eigen::VectorXd d_bar = d_.rowwise().mean();
  PrimalDualPoint star{Eigen::VectorXd(dx_), Eigen::VectorXd(dy_)};
  for (Eigen::Index j = 0; j < dx_; ++j)
    star.x(j) = soft_threshold(-c_bar(j), s_bar) / mu;
  for (Eigen::Index j = 0; j < dy_; ++j)
    star.y(j) = soft_threshold(-d_bar(j), t_bar) / mu;
  return star;
}

std::shared_ptr<NonsmoothSeparableProblem> make_random_nonsmooth(
    std::uint64_t seed, std::int64_t n, Eigen::Index d, double mu, double scale) {
  if (n < 1 || d < 1) throw std::invalid_argument("make_random_nonsmooth: bad sizes");
  Rng rng(seed);
  Eigen::VectorXd s(n), t(n);
  Eigen::MatrixXd c(d, n), dd(d, n);
  for (std::int64_t i = 0; i < n; ++i) {
    s(i) = scale * rng.uniform01();
    t(i) = scale * rng.uniform01();
    for (Eigen::Index j = 0; j < d; ++j) {
      c(j, i) = scale * rng.gaussian();
      dd(j, i) = scale * rng.gaussian();
    }
  }
  return std::make_shared<NonsmoothSeparableProblem>(mu, std::move(s), std::move(t),
                                                     std::move(c), std::move(dd));
}

}  // namespace saddlevr
