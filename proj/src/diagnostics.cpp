#include "diagnostics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "quadratic_problem.hpp"
#include "rng.hpp"

namespace saddlevr {

namespace {
constexpr double kSlackTol = 1e-9;
}

InequalityCheck InequalityCheck::geq(double lhs, double rhs) {
  InequalityCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = lhs - rhs;
  c.passed = c.slack >= -kSlackTol * (1.0 + std::abs(rhs));
  return c;
}

LyapunovReport lyapunov_value(const SaddleProblem& problem,
                              const GradientTable& table,
                              const PrimalDualPoint& point,
                              const RateConstants& rate,
                              const PrimalDualPoint& oracle_point) {
  problem.check_point(point);
  problem.check_point(oracle_point);
  if (table.size() != problem.n())
    throw std::invalid_argument("lyapunov_value: table size mismatch");
  const std::int64_t n = problem.n();
  OperatorValue g_star;
  double sum = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    problem.grad_component_into(i, oracle_point, g_star);
    sum += table.entry(i).dist_sq(g_star);
  }
  LyapunovReport rep;
  rep.alpha = rate.alpha;
  rep.table_term = rate.c / static_cast<double>(n) * sum;
  rep.dist_term = point.dist_sq(oracle_point);
  rep.t_value = rep.table_term + rep.dist_term;
  return rep;
}

InequalityCheck check_monotonicity(const SaddleProblem& problem, std::int64_t i,
                             const PrimalDualPoint& p1, const PrimalDualPoint& p2) {
  const OperatorValue g1 = problem.grad_component(i, p1);
  const OperatorValue g2 = problem.grad_component(i, p2);
  const double lhs = joint_dot(g1.gx - g2.gx, g1.gy_neg - g2.gy_neg, p1.x - p2.x,
                               p1.y - p2.y);
  const double rhs = problem.constants().mu * p1.dist_sq(p2);
  return InequalityCheck::geq(lhs, rhs);
}

InequalityCheck check_prox_nonexpansiveness(const SaddleProblem& problem, std::int64_t i,
                             double gamma, const PrimalDualPoint& p1,
                             const PrimalDualPoint& p2) {
  const PrimalDualPoint u1 = problem.prox_component(i, gamma, p1);
  const PrimalDualPoint u2 = problem.prox_component(i, gamma, p2);
  const double lhs =
      joint_dot(p1.x - p2.x, p1.y - p2.y, u1.x - u2.x, u1.y - u2.y);
  const double rhs = (1.0 + problem.constants().mu * gamma) * u1.dist_sq(u2);
  return InequalityCheck::geq(lhs, rhs);
}

InequalityCheck check_firm_nonexpansiveness(const SaddleProblem& problem, std::int64_t i,
                               double gamma, const PrimalDualPoint& p1,
                               const PrimalDualPoint& p2) {
  const auto& c = problem.constants();
  const PrimalDualPoint u1 = problem.prox_component(i, gamma, p1);
  const PrimalDualPoint u2 = problem.prox_component(i, gamma, p2);
  const OperatorValue g1 = problem.grad_component(i, u1);
  const OperatorValue g2 = problem.grad_component(i, u2);
  const double lhs = joint_dot(g1.gx - g2.gx, g1.gy_neg - g2.gy_neg, p1.x - p2.x,
                               p1.y - p2.y);
  const double factor = gamma * (1.0 + c.mu / (c.lip * c.lip * gamma));
  const double rhs = factor * g1.dist_sq(g2);
  return InequalityCheck::geq(lhs, rhs);
}

ContractionResult check_contraction(const SaddleProblem& problem,
                                    const PointSagaState& state,
                                    const RateConstants& rate,
                                    const PrimalDualPoint& oracle_point) {
  const std::int64_t n = problem.n();
  if (n > 10000)
    throw std::invalid_argument("check_contraction: enumeration limited to n <= 1e4");

  std::vector<OperatorValue> g_star(n);
  double table_sum = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    problem.grad_component_into(i, oracle_point, g_star[i]);
    table_sum += state.table.entry(i).dist_sq(g_star[i]);
  }
  const double c_over_n = rate.c / static_cast<double>(n);
  const double t_current =
      c_over_n * table_sum + state.point.dist_sq(oracle_point);

  // Enumerate the n equally likely outcomes of one iteration.
  double expect = 0.0;
  PrimalDualPoint shifted, next;
  OperatorValue recovered;
  const OperatorValue& mean = state.table.mean();
  for (std::int64_t j = 0; j < n; ++j) {
    const OperatorValue& tj = state.table.entry(j);
    shifted.x = state.point.x + rate.gamma * (tj.gx - mean.gx);
    shifted.y = state.point.y + rate.gamma * (tj.gy_neg - mean.gy_neg);
    problem.prox_component_into(j, rate.gamma, rate.gamma, shifted, next);
    recovered.gx = (shifted.x - next.x) / rate.gamma;
    recovered.gy_neg = (shifted.y - next.y) / rate.gamma;
    const double table_j =
        table_sum - tj.dist_sq(g_star[j]) + recovered.dist_sq(g_star[j]);
    expect += c_over_n * table_j + next.dist_sq(oracle_point);
  }
  expect /= static_cast<double>(n);

  ContractionResult res;
  res.t_current = t_current;
  res.t_next_expected = expect;
  res.alpha = rate.alpha;
  res.check = InequalityCheck::geq(rate.alpha * t_current, expect);
  return res;
}

double estimate_rate(const Trace& trace, double burn_in_fraction) {
  if (burn_in_fraction < 0.0 || burn_in_fraction >= 1.0)
    throw std::invalid_argument("estimate_rate: burn_in must lie in [0, 1)");
  const auto& rows = trace.rows;
  const auto skip = static_cast<std::size_t>(
      std::floor(burn_in_fraction * static_cast<double>(rows.size())));
  std::vector<std::pair<double, double>> pts;
  for (std::size_t r = skip; r < rows.size(); ++r)
    if (std::isfinite(rows[r].dist_sq) && rows[r].dist_sq > 0.0)
      pts.emplace_back(static_cast<double>(rows[r].iter), std::log(rows[r].dist_sq));
  if (pts.size() < 20)
    throw std::invalid_argument(
        "estimate_rate: need at least 20 positive post-burn-in rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(pts.size());
  const double denom = m * sxx - sx * sx;
  if (denom <= 0.0) throw std::invalid_argument("estimate_rate: degenerate trace");
  const double slope = (m * sxy - sx * sy) / denom;
  return std::exp(slope);
}

// ---------------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------------

namespace {

struct SuiteAccumulator {
  VerifySuiteResult result;

  explicit SuiteAccumulator(std::string name, bool negative = false) {
    result.name = std::move(name);
    result.negative_control = negative;
    result.worst_slack = std::numeric_limits<double>::infinity();
  }

  void record(const InequalityCheck& check, const std::string& replay) {
    ++result.trials;
    result.worst_slack = std::min(result.worst_slack, check.slack);
    if (!check.passed) {
      ++result.failures;
      if (result.detail.empty()) result.detail = replay;
    }
  }

  VerifySuiteResult take() {
    if (result.trials == 0) result.worst_slack = 0.0;
    return std::move(result);
  }
};

PrimalDualPoint random_point(Rng& rng, Eigen::Index dx, Eigen::Index dy,
                             double scale) {
  PrimalDualPoint p{Eigen::VectorXd(dx), Eigen::VectorXd(dy)};
  for (Eigen::Index j = 0; j < dx; ++j) p.x(j) = scale * rng.gaussian();
  for (Eigen::Index j = 0; j < dy; ++j) p.y(j) = scale * rng.gaussian();
  return p;
}

std::string replay_info(std::uint64_t seed, std::int64_t trial, double mu,
                        double lip, double gamma) {
  std::ostringstream os;
  os << "seed=" << seed << " trial=" << trial << " mu=" << mu << " L=" << lip
     << " gamma=" << gamma;
  return os.str();
}

// Random small quadratic components over wide constant ranges.
void inequality_suites(const VerifyOptions& opts, std::vector<VerifySuiteResult>& out) {
  SuiteAccumulator monotonicity("monotonicity");
  SuiteAccumulator nonexp("prox_nonexpansiveness");
  SuiteAccumulator firm("firm_nonexpansiveness");
  Rng rng(opts.seed);
  for (std::int64_t t = 0; t < opts.trials; ++t) {
    const double mu = rng.log_uniform(1e-3, 1e3);
    const double kappa = rng.log_uniform(1.0, 1e4);
    const double gamma = rng.log_uniform(1e-3, 1e3);
    const auto dx = static_cast<Eigen::Index>(1 + rng.bounded(3));
    const auto dy = static_cast<Eigen::Index>(1 + rng.bounded(3));
    const auto problem =
        make_random_quadratic(rng.next_u64(), 1, dx, dy, mu, mu * kappa);
    const auto p1 = random_point(rng, dx, dy, 2.0);
    const auto p2 = random_point(rng, dx, dy, 2.0);
    const auto replay = replay_info(opts.seed, t, mu, mu * kappa, gamma);
    monotonicity.record(check_monotonicity(*problem, 0, p1, p2), replay);
    nonexp.record(check_prox_nonexpansiveness(*problem, 0, gamma, p1, p2), replay);
    firm.record(check_firm_nonexpansiveness(*problem, 0, gamma, p1, p2), replay);
  }
  out.push_back(monotonicity.take());
  out.push_back(nonexp.take());
  out.push_back(firm.take());
}

// Closed-form constants: alpha in (0,1), (n-1) mu gamma < 1, and the exact
// identity 1/(mu gamma) = (n-1)/2 + sqrt((n-1)^2 + 4 n kappa^2)/2.
void step_size_suite(const VerifyOptions& opts, std::vector<VerifySuiteResult>& out) {
  SuiteAccumulator suite("step_size_domain_and_identity");
  Rng rng(opts.seed ^ 0x5374657053697aULL);
  for (std::int64_t t = 0; t < opts.trials; ++t) {
    const auto n = static_cast<std::int64_t>(1 + rng.bounded(1000000));
    const double mu = rng.log_uniform(1e-8, 1e8);
    const double kappa = rng.log_uniform(1.0, 1e8);
    const auto consts = ProblemConstants::make(n, mu, mu * kappa);
    const auto rc = default_step_size(consts);
    const auto replay = replay_info(opts.seed, t, mu, consts.lip, rc.gamma);

    const double nd = static_cast<double>(n);
    const bool domain = rc.alpha > 0.0 && rc.alpha < 1.0 &&
                        (nd - 1.0) * mu * rc.gamma < 1.0 && rc.c > 0.0;
    InequalityCheck dom;
    dom.lhs = domain ? 1.0 : 0.0;
    dom.rhs = 1.0;
    dom.slack = dom.lhs - dom.rhs;
    dom.passed = domain;
    suite.record(dom, replay);

    const double inv = 1.0 / (mu * rc.gamma);
    const double identity =
        (nd - 1.0) / 2.0 + std::sqrt((nd - 1.0) * (nd - 1.0) + 4.0 * nd * kappa * kappa) / 2.0;
    InequalityCheck id;
    id.lhs = inv;
    id.rhs = identity;
    id.slack = std::abs(inv - identity);
    id.passed = id.slack <= 1e-10 * identity;
    id.slack = -id.slack;  // report tighter-is-better like the others
    suite.record(id, replay);
  }
  out.push_back(suite.take());
}

void contraction_suite(const VerifyOptions& opts, double gamma_factor,
                       const std::string& name, bool negative,
                       std::vector<VerifySuiteResult>& out) {
  SuiteAccumulator suite(name, negative);
  const std::int64_t states = std::min<std::int64_t>(opts.trials, 100);
  if (states > 0) {
    const auto problem =
        make_random_quadratic(opts.seed ^ 0x436f6e74ULL, 2, 2, 2, 0.5, 5.0);
    auto rate = default_step_size(problem->constants());
    rate.gamma *= gamma_factor;
    rate.alpha = 1.0 / (1.0 + problem->constants().mu * rate.gamma);
    rate.c = lyapunov_weight(problem->n(), problem->constants().mu, rate.gamma);
    const auto star = problem->saddle();

    Rng rng(opts.seed ^ 0x53746174ULL);
    PrimalDualPoint start = random_point(rng, 2, 2, 3.0);
    PointSagaState state{start, GradientTable(*problem, start)};
    for (std::int64_t t = 0; t < states; ++t) {
      if (std::isfinite(rate.c)) {
        const auto res = check_contraction(*problem, state, rate, star);
        suite.record(res.check, replay_info(opts.seed, t, problem->constants().mu,
                                            problem->constants().lip, rate.gamma));
      }
      point_saga_step(*problem, rate.gamma,
                      static_cast<std::int64_t>(rng.bounded(problem->n())), state);
    }
  }
  out.push_back(suite.take());
}

}  // namespace

bool VerifyReport::passed() const {
  for (const auto& s : suites)
    if (!s.negative_control && s.failures > 0) return false;
  return true;
}

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport report;
  if (options.trials <= 0) return report;  // empty, trivially passing
  inequality_suites(options, report.suites);
  step_size_suite(options, report.suites);
  contraction_suite(options, 1.0, "lyapunov_contraction", false, report.suites);
  if (options.negative_control)
    contraction_suite(options, 10.0, "contraction_negative_control", true,
                      report.suites);
  return report;
}

}  // namespace saddlevr
