#include "policy_eval_problem.hpp"

#include <Eigen/Dense>
#include <stdexcept>

#include "dataio.hpp"

namespace saddlevr {

PolicyEvalProblem::PolicyEvalProblem(Eigen::MatrixXd z, Eigen::MatrixXd zp,
                                     Eigen::MatrixXd b, double rho, double lambda)
    : SaddleProblem(ProblemConstants{}, z.rows(), z.rows()),
      z_(std::move(z)),
      zp_(std::move(zp)),
      b_(std::move(b)),
      rho_(rho),
      lambda_(lambda) {
  const auto n = z_.cols();
  if (n < 1 || z_.rows() < 1) throw std::invalid_argument("PolicyEvalProblem: empty data");
  if (zp_.rows() != z_.rows() || zp_.cols() != n || b_.rows() != z_.rows() ||
      b_.cols() != n)
    throw std::invalid_argument("PolicyEvalProblem: inconsistent sample arrays");
  if (!(rho_ > 0.0) || !(lambda_ > 0.0))
    throw std::invalid_argument("PolicyEvalProblem: rho and lambda must be > 0");

  z_sq_norm_ = z_.colwise().squaredNorm();
  zp_sq_norm_ = zp_.colwise().squaredNorm();

  const double inv_n = 1.0 / static_cast<double>(n);
  a_hat_.noalias() = z_ * zp_.transpose() * inv_n;
  c_hat_reg_.noalias() = z_ * z_.transpose() * inv_n;
  c_hat_reg_.diagonal().array() += lambda_;
  b_hat_ = b_.rowwise().mean();
  c_hat_llt_.compute(c_hat_reg_);
  if (c_hat_llt_.info() != Eigen::Success)
    throw std::runtime_error("PolicyEvalProblem: C_hat + lambda I not SPD");

  constants_ = ProblemConstants::make(n, std::min(rho_, lambda_),
                                      averaged_jacobian_norm(1.0, 1.0));

  // Saddle of the averaged problem: eliminate y, solve the SPD system
  // (rho I + A' S^-1 A) x = A' S^-1 b with S = C_hat + lambda I.
  const Eigen::MatrixXd s_inv_a = c_hat_llt_.solve(a_hat_);
  Eigen::MatrixXd g = a_hat_.transpose() * s_inv_a;
  g.diagonal().array() += rho_;
  const Eigen::VectorXd rhs = s_inv_a.transpose() * b_hat_;
  saddle_.x = g.llt().solve(rhs);
  saddle_.y = c_hat_llt_.solve(b_hat_ - a_hat_ * saddle_.x);
  loss_at_saddle_ = primal_loss(saddle_.x);
}

std::shared_ptr<PolicyEvalProblem> PolicyEvalProblem::from_batch(
    const TrajectoryBatch& batch, double rho, double lambda) {
  const auto n = static_cast<Eigen::Index>(batch.n());
  const Eigen::Index d = batch.d;
  Eigen::MatrixXd z(d, n), zp(d, n), b(d, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    z.col(i) = batch.phi[i];
    zp.col(i) = batch.phi[i] - batch.eta * batch.phi_next[i];
    b.col(i) = batch.reward[i] * batch.phi[i];
  }
  return std::make_shared<PolicyEvalProblem>(std::move(z), std::move(zp),
                                             std::move(b), rho, lambda);
}

void PolicyEvalProblem::grad_component_into(std::int64_t i,
                                            const PrimalDualPoint& point,
                                            OperatorValue& out) const {
  const auto zi = z_.col(i);
  const auto zpi = zp_.col(i);
  const double zy = zi.dot(point.y);
  const double zpx = zpi.dot(point.x);
  // d/dx f_i = rho x - (y'z) zp;  -(d/dy) f_i = (zp'x + z'y) z + lambda y - b.
  out.gx = rho_ * point.x;
  out.gx -= zy * zpi;
  out.gy_neg = lambda_ * point.y;
  out.gy_neg += (zpx + zy) * zi;
  out.gy_neg -= b_.col(i);
}

void PolicyEvalProblem::prox_component_into(std::int64_t i, double gamma_x,
                                            double gamma_y,
                                            const PrimalDualPoint& point,
                                            PrimalDualPoint& out) const {
  const auto zi = z_.col(i);
  const auto zpi = zp_.col(i);
  const double inv_ax = 1.0 / (gamma_x * rho_ + 1.0);
  const double shift = lambda_ + 1.0 / gamma_y;  // "woodbury_shift"

  // v solves (L L' + shift I) v = w with the rank-2 factor
  // L = [sqrt(gamma_x * inv_ax) * ||zp|| * z,  z].
  Eigen::VectorXd w = b_.col(i) + point.y / gamma_y;
  w -= (zpi.dot(point.x) * inv_ax) * zi;

  const double c0 = gamma_x * inv_ax * zp_sq_norm_(i);
  Eigen::Matrix2d inner;
  const double zz = z_sq_norm_(i);
  inner << 1.0 + c0 * zz / shift, std::sqrt(c0) * zz / shift,
      std::sqrt(c0) * zz / shift, 1.0 + zz / shift;
  const double zw = zi.dot(w);
  const Eigen::Vector2d ltw(std::sqrt(c0) * zw, zw);
  const Eigen::Vector2d corr = inner.partialPivLu().solve(ltw);

  out.y = w / shift;
  out.y -= ((std::sqrt(c0) * corr(0) + corr(1)) / (shift * shift)) * zi;

  // u = (gamma_x (z'v) zp + p) * inv_ax, elementwise in O(d).
  out.x = point.x;
  out.x += (gamma_x * zi.dot(out.y)) * zpi;
  out.x *= inv_ax;
}

PrimalDualPoint PolicyEvalProblem::saddle() const { return saddle_; }

double PolicyEvalProblem::primal_loss(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd r = a_hat_ * x - b_hat_;
  return 0.5 * r.dot(c_hat_llt_.solve(r)) + 0.5 * rho_ * x.squaredNorm();
}

std::optional<double> PolicyEvalProblem::primal_gap(const Eigen::VectorXd& x) const {
  return primal_loss(x) - loss_at_saddle_;
}

double PolicyEvalProblem::averaged_jacobian_norm(double inv_sx, double inv_sy) const {
  const Eigen::Index d = dx_;
  Eigen::MatrixXd j(2 * d, 2 * d);
  j.topLeftCorner(d, d) = (rho_ * inv_sx * inv_sx) * Eigen::MatrixXd::Identity(d, d);
  j.topRightCorner(d, d) = -(inv_sx * inv_sy) * a_hat_.transpose();
  j.bottomLeftCorner(d, d) = (inv_sx * inv_sy) * a_hat_;
  j.bottomRightCorner(d, d) = (inv_sy * inv_sy) * c_hat_reg_;

  // Fixed-iteration power method on J'J; deterministic start.
  Eigen::VectorXd v = Eigen::VectorXd::Ones(2 * d);
  v(0) += 1e-3;
  v.normalize();
  double norm = 0.0;
  for (int it = 0; it < 100; ++it) {
    const Eigen::VectorXd jv = j * v;
    Eigen::VectorXd w = j.transpose() * jv;
    const double next = std::sqrt(w.norm());
    w.normalize();
    if (std::abs(next - norm) <= 1e-10 * std::max(1.0, next)) {
      norm = next;
      break;
    }
    norm = next;
    v = w;
  }
  return norm;
}

double PolicyEvalProblem::lipschitz_under_scaling(double inv_sx, double inv_sy) const {
  return averaged_jacobian_norm(inv_sx, inv_sy);
}

}  // namespace saddlevr
