#pragma once

#include <memory>
#include <vector>

#include "problem.hpp"
#include "rng.hpp"

namespace saddlevr {

/// Smooth synthetic family
///   f_i(x,y) = x'P_i x/2 + a_i'x + y'M_i x - y'Q_i y/2 - b_i'y
/// with symmetric P_i, Q_i whose eigenvalues are prescribed at construction,
/// so mu and L are exact rather than estimated.
class QuadraticSaddleProblem final : public SaddleProblem {
 public:
  QuadraticSaddleProblem(std::vector<Eigen::MatrixXd> P,
                         std::vector<Eigen::MatrixXd> Q,
                         std::vector<Eigen::MatrixXd> M,
                         std::vector<Eigen::VectorXd> a,
                         std::vector<Eigen::VectorXd> b);

  void grad_component_into(std::int64_t i, const PrimalDualPoint& point,
                           OperatorValue& out) const override;
  void prox_component_into(std::int64_t i, double gamma_x, double gamma_y,
                           const PrimalDualPoint& point,
                           PrimalDualPoint& out) const override;
  PrimalDualPoint saddle() const override;
  double lipschitz_under_scaling(double inv_sx, double inv_sy) const override;

  /// Exact f_i(x, y); used by value-level oracles.
  double component_value(std::int64_t i, const PrimalDualPoint& point) const;

  /// Smallest eigenvalue over the P_i (strong convexity in x) and over the
  /// Q_i (strong concavity in y).
  double mu_x() const { return mu_x_; }
  double mu_y() const { return mu_y_; }

  const Eigen::MatrixXd& P(std::int64_t i) const { return P_.at(i); }
  const Eigen::MatrixXd& Q(std::int64_t i) const { return Q_.at(i); }
  const Eigen::MatrixXd& M(std::int64_t i) const { return M_.at(i); }
  const Eigen::VectorXd& a(std::int64_t i) const { return a_.at(i); }
  const Eigen::VectorXd& b(std::int64_t i) const { return b_.at(i); }

 private:
  std::vector<Eigen::MatrixXd> P_, Q_, M_;
  std::vector<Eigen::VectorXd> a_, b_;
  double mu_x_ = 0.0, mu_y_ = 0.0;
};

struct QuadraticFamilyOptions {
  /// Upper end of the P/Q eigenvalue range as a fraction of the way from mu
  /// to L.  Small values give coupling-dominated (hard) instances.
  double block_spread = 0.25;
  /// Scale of the linear terms a_i, b_i (controls where the saddle lands).
  double linear_scale = 1.0;
};

/// Random instance with exact constants: every P_i/Q_i has smallest
/// eigenvalue exactly mu_x/mu_y, and every component operator Jacobian has
/// spectral norm exactly lip (coupling rescaled by bisection).
std::shared_ptr<QuadraticSaddleProblem> make_random_quadratic(
    std::uint64_t seed, std::int64_t n, Eigen::Index dx, Eigen::Index dy,
    double mu_x, double mu_y, double lip, const QuadraticFamilyOptions& opts = {});

inline std::shared_ptr<QuadraticSaddleProblem> make_random_quadratic(
    std::uint64_t seed, std::int64_t n, Eigen::Index dx, Eigen::Index dy,
    double mu, double lip, const QuadraticFamilyOptions& opts = {}) {
  return make_random_quadratic(seed, n, dx, dy, mu, mu, lip, opts);
}

/// The built-in one-component demo f(x,y) = x^2/2 + xy - y^2/2 (saddle at 0).
std::shared_ptr<QuadraticSaddleProblem> make_demo_problem();

/// Spectral norm of the component operator Jacobian [[P, M'],[-M, Q]].
double operator_jacobian_norm(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q,
                              const Eigen::MatrixXd& M);

}  // namespace saddlevr
