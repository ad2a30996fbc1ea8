#include "quadratic_problem.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace saddlevr {

namespace {

ProblemConstants quadratic_constants(const std::vector<Eigen::MatrixXd>& P,
                                     const std::vector<Eigen::MatrixXd>& Q,
                                     const std::vector<Eigen::MatrixXd>& M,
                                     double& mu_x, double& mu_y) {
  double lip = 0.0;
  mu_x = std::numeric_limits<double>::infinity();
  mu_y = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < P.size(); ++i) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ep(P[i], Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eq(Q[i], Eigen::EigenvaluesOnly);
    mu_x = std::min(mu_x, ep.eigenvalues().minCoeff());
    mu_y = std::min(mu_y, eq.eigenvalues().minCoeff());
    lip = std::max(lip, operator_jacobian_norm(P[i], Q[i], M[i]));
  }
  return ProblemConstants::make(static_cast<std::int64_t>(P.size()),
                                std::min(mu_x, mu_y), lip);
}

Eigen::MatrixXd random_orthogonal(Rng& rng, Eigen::Index d) {
  Eigen::MatrixXd g(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) g(r, c) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  // Fix the sign convention so the factorisation is unique.
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < d; ++c)
    if (r(c, c) < 0.0) q.col(c) = -q.col(c);
  return q;
}

// Symmetric matrix with smallest eigenvalue exactly lo, remaining
// eigenvalues uniform in [lo, hi].
Eigen::MatrixXd random_spd(Rng& rng, Eigen::Index d, double lo, double hi) {
  Eigen::VectorXd eigs(d);
  eigs(0) = lo;
  for (Eigen::Index j = 1; j < d; ++j) eigs(j) = rng.uniform(lo, hi);
  const Eigen::MatrixXd u = random_orthogonal(rng, d);
  Eigen::MatrixXd m = u * eigs.asDiagonal() * u.transpose();
  return 0.5 * (m + m.transpose());
}

}  // namespace

double operator_jacobian_norm(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q,
                              const Eigen::MatrixXd& M) {
  const Eigen::Index dx = P.rows(), dy = Q.rows();
  Eigen::MatrixXd j(dx + dy, dx + dy);
  j.topLeftCorner(dx, dx) = P;
  j.topRightCorner(dx, dy) = M.transpose();
  j.bottomLeftCorner(dy, dx) = -M;
  j.bottomRightCorner(dy, dy) = Q;
  return j.jacobiSvd().singularValues()(0);
}

QuadraticSaddleProblem::QuadraticSaddleProblem(std::vector<Eigen::MatrixXd> P,
                                               std::vector<Eigen::MatrixXd> Q,
                                               std::vector<Eigen::MatrixXd> M,
                                               std::vector<Eigen::VectorXd> a,
                                               std::vector<Eigen::VectorXd> b)
    : SaddleProblem(ProblemConstants{}, P.empty() ? 0 : P.front().rows(),
                    Q.empty() ? 0 : Q.front().rows()),
      P_(std::move(P)),
      Q_(std::move(Q)),
      M_(std::move(M)),
      a_(std::move(a)),
      b_(std::move(b)) {
  if (P_.empty() || P_.size() != Q_.size() || P_.size() != M_.size() ||
      P_.size() != a_.size() || P_.size() != b_.size())
    throw std::invalid_argument("QuadraticSaddleProblem: inconsistent component arrays");
  constants_ = quadratic_constants(P_, Q_, M_, mu_x_, mu_y_);
}

void QuadraticSaddleProblem::grad_component_into(std::int64_t i,
                                                 const PrimalDualPoint& point,
                                                 OperatorValue& out) const {
  out.gx.noalias() = P_[i] * point.x;
  out.gx += a_[i];
  out.gx.noalias() += M_[i].transpose() * point.y;
  out.gy_neg.noalias() = Q_[i] * point.y;
  out.gy_neg += b_[i];
  out.gy_neg.noalias() -= M_[i] * point.x;
}

void QuadraticSaddleProblem::prox_component_into(std::int64_t i, double gamma_x,
                                                 double gamma_y,
                                                 const PrimalDualPoint& point,
                                                 PrimalDualPoint& out) const {
  const Eigen::Index dx = dx_, dy = dy_;
  Eigen::MatrixXd k(dx + dy, dx + dy);
  k.topLeftCorner(dx, dx) = P_[i];
  k.topLeftCorner(dx, dx).diagonal().array() += 1.0 / gamma_x;
  k.topRightCorner(dx, dy) = M_[i].transpose();
  k.bottomLeftCorner(dy, dx) = -M_[i];
  k.bottomRightCorner(dy, dy) = Q_[i];
  k.bottomRightCorner(dy, dy).diagonal().array() += 1.0 / gamma_y;
  Eigen::VectorXd rhs(dx + dy);
  rhs.head(dx) = point.x / gamma_x - a_[i];
  rhs.tail(dy) = point.y / gamma_y - b_[i];
  const Eigen::VectorXd sol = k.partialPivLu().solve(rhs);
  out.x = sol.head(dx);
  out.y = sol.tail(dy);
}

PrimalDualPoint QuadraticSaddleProblem::saddle() const {
  const Eigen::Index dx = dx_, dy = dy_;
  const double inv_n = 1.0 / static_cast<double>(n());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dx + dy, dx + dy);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dx + dy);
  for (std::int64_t i = 0; i < n(); ++i) {
    g.topLeftCorner(dx, dx) += P_[i];
    g.topRightCorner(dx, dy) += M_[i].transpose();
    g.bottomLeftCorner(dy, dx) -= M_[i];
    g.bottomRightCorner(dy, dy) += Q_[i];
    rhs.head(dx) -= a_[i];
    rhs.tail(dy) -= b_[i];
  }
  g *= inv_n;
  rhs *= inv_n;
  const Eigen::VectorXd sol = g.partialPivLu().solve(rhs);
  return {sol.head(dx), sol.tail(dy)};
}

double QuadraticSaddleProblem::lipschitz_under_scaling(double inv_sx,
                                                       double inv_sy) const {
  double lip = 0.0;
  for (std::int64_t i = 0; i < n(); ++i) {
    // Scaled Jacobian S^-1 J S^-1 rescales the blocks by inv_sx^2, inv_sx*inv_sy
    // and inv_sy^2.
    lip = std::max(lip, operator_jacobian_norm(P_[i] * (inv_sx * inv_sx),
                                               Q_[i] * (inv_sy * inv_sy),
                                               M_[i] * (inv_sx * inv_sy)));
  }
  return lip;
}

double QuadraticSaddleProblem::component_value(std::int64_t i,
                                               const PrimalDualPoint& pt) const {
  return 0.5 * pt.x.dot(P_[i] * pt.x) + a_[i].dot(pt.x) + pt.y.dot(M_[i] * pt.x) -
         0.5 * pt.y.dot(Q_[i] * pt.y) - b_[i].dot(pt.y);
}

std::shared_ptr<QuadraticSaddleProblem> make_random_quadratic(
    std::uint64_t seed, std::int64_t n, Eigen::Index dx, Eigen::Index dy,
    double mu_x, double mu_y, double lip, const QuadraticFamilyOptions& opts) {
  if (n < 1 || dx < 1 || dy < 1)
    throw std::invalid_argument("make_random_quadratic: bad dimensions");
  if (!(mu_x > 0.0) || !(mu_y > 0.0) || !(lip >= std::max(mu_x, mu_y)))
    throw std::invalid_argument("make_random_quadratic: need 0 < mu <= L");
  Rng rng(seed);
  const double mu_hi = std::max(mu_x, mu_y);
  const double p_hi = mu_x + opts.block_spread * (lip - mu_hi);
  const double q_hi = mu_y + opts.block_spread * (lip - mu_hi);

  std::vector<Eigen::MatrixXd> P, Q, M;
  std::vector<Eigen::VectorXd> a, b;
  for (std::int64_t i = 0; i < n; ++i) {
    P.push_back(random_spd(rng, dx, mu_x, p_hi));
    Q.push_back(random_spd(rng, dy, mu_y, q_hi));

    Eigen::MatrixXd m(dy, dx);
    for (Eigen::Index r = 0; r < dy; ++r)
      for (Eigen::Index c = 0; c < dx; ++c) m(r, c) = rng.gaussian();

    // Rescale the coupling so the component Jacobian norm is exactly lip.
    const double base = operator_jacobian_norm(P.back(), Q.back(),
                                               Eigen::MatrixXd::Zero(dy, dx));
    if (base >= lip) {
      m.setZero();
    } else {
      double hi = 1.0;
      while (operator_jacobian_norm(P.back(), Q.back(), m * hi) < lip) {
        hi *= 2.0;
        if (hi > 1e30) throw std::runtime_error("coupling rescale failed");
      }
      double lo = 0.0;
      for (int it = 0; it < 200 && lo < hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (operator_jacobian_norm(P.back(), Q.back(), m * mid) < lip)
          lo = mid;
        else
          hi = mid;
      }
      m *= hi;
    }
    M.push_back(m);

    Eigen::VectorXd ai(dx), bi(dy);
    for (Eigen::Index j = 0; j < dx; ++j) ai(j) = opts.linear_scale * rng.gaussian();
    for (Eigen::Index j = 0; j < dy; ++j) bi(j) = opts.linear_scale * rng.gaussian();
    a.push_back(ai);
    b.push_back(bi);
  }
  return std::make_shared<QuadraticSaddleProblem>(std::move(P), std::move(Q),
                                                  std::move(M), std::move(a),
                                                  std::move(b));
}

std::shared_ptr<QuadraticSaddleProblem> make_demo_problem() {
  std::vector<Eigen::MatrixXd> P{Eigen::MatrixXd::Constant(1, 1, 1.0)};
  std::vector<Eigen::MatrixXd> Q{Eigen::MatrixXd::Constant(1, 1, 1.0)};
  std::vector<Eigen::MatrixXd> M{Eigen::MatrixXd::Constant(1, 1, 1.0)};
  std::vector<Eigen::VectorXd> a{Eigen::VectorXd::Zero(1)};
  std::vector<Eigen::VectorXd> b{Eigen::VectorXd::Zero(1)};
  return std::make_shared<QuadraticSaddleProblem>(std::move(P), std::move(Q),
                                                  std::move(M), std::move(a),
                                                  std::move(b));
}

}  // namespace saddlevr
