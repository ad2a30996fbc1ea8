#pragma once

#include <Eigen/Cholesky>
#include <memory>

#include "problem.hpp"

namespace saddlevr {

struct TrajectoryBatch;

/// Regularised policy-evaluation problem over linear features.
///
/// Components are
///   f_i(x,y) = rho/2 ||x||^2 - y'A_i x - y'(C_i + lambda I) y / 2 + y' b_i
/// with rank-1 matrices A_i = z_i zp_i' and C_i = z_i z_i', where
/// z_i = phi_i, zp_i = phi_i - eta*phi'_i and b_i = r_i phi_i.  The averaged
/// inner maximisation recovers the primal objective
///   loss(x) = <Ahat x - bhat, (Chat + lambda I)^-1 (Ahat x - bhat)>/2
///             + rho/2 ||x||^2,
/// so the run traces can report loss(x) - loss(x*).
///
/// The prox of one component reduces to a rank-2-shifted linear solve in v
/// handled by the Woodbury identity, giving O(d) per call.
class PolicyEvalProblem final : public SaddleProblem {
 public:
  /// Columns of z/zp/b hold the per-sample vectors.
  PolicyEvalProblem(Eigen::MatrixXd z, Eigen::MatrixXd zp, Eigen::MatrixXd b,
                    double rho, double lambda);

  static std::shared_ptr<PolicyEvalProblem> from_batch(const TrajectoryBatch& batch,
                                                       double rho, double lambda);

  void grad_component_into(std::int64_t i, const PrimalDualPoint& point,
                           OperatorValue& out) const override;
  void prox_component_into(std::int64_t i, double gamma_x, double gamma_y,
                           const PrimalDualPoint& point,
                           PrimalDualPoint& out) const override;
  PrimalDualPoint saddle() const override;
  std::optional<double> primal_gap(const Eigen::VectorXd& x) const override;
  double lipschitz_under_scaling(double inv_sx, double inv_sy) const override;

  double primal_loss(const Eigen::VectorXd& x) const;
  double rho() const { return rho_; }
  double lambda() const { return lambda_; }
  Eigen::VectorXd z(std::int64_t i) const { return z_.col(i); }
  Eigen::VectorXd zp(std::int64_t i) const { return zp_.col(i); }
  Eigen::VectorXd b(std::int64_t i) const { return b_.col(i); }

 private:
  Eigen::MatrixXd z_, zp_, b_;  // d x n
  Eigen::VectorXd z_sq_norm_, zp_sq_norm_;
  double rho_ = 0.0, lambda_ = 0.0;

  Eigen::MatrixXd a_hat_, c_hat_reg_;  // means; c_hat_reg_ includes +lambda I
  Eigen::VectorXd b_hat_;
  Eigen::LLT<Eigen::MatrixXd> c_hat_llt_;
  PrimalDualPoint saddle_;
  double loss_at_saddle_ = 0.0;

  double averaged_jacobian_norm(double inv_sx, double inv_sy) const;
};

}  // namespace saddlevr
