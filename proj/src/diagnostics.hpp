#pragma once

#include <string>
#include <vector>

#include "problem.hpp"
#include "solvers.hpp"
#include "types.hpp"

namespace saddlevr {

/// Lyapunov value T = (c/n) sum_i ||g_i(x_i,y_i) - g_i(x*,y*)||^2 + dist^2.
struct LyapunovReport {
  double t_value = 0.0;
  double table_term = 0.0;
  double dist_term = 0.0;
  double alpha = 0.0;
};

LyapunovReport lyapunov_value(const SaddleProblem& problem,
                              const GradientTable& table,
                              const PrimalDualPoint& point,
                              const RateConstants& rate,
                              const PrimalDualPoint& oracle_point);

/// An "lhs >= rhs" assertion with relative slack tolerance 1e-9 * (1+|rhs|).
struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool passed = false;

  static InequalityCheck geq(double lhs, double rhs);
};

/// Strong monotonicity of the component operator:
/// <g_i(p1) - g_i(p2), p1 - p2> >= mu ||p1 - p2||^2.
InequalityCheck check_monotonicity(const SaddleProblem& problem, std::int64_t i,
                             const PrimalDualPoint& p1, const PrimalDualPoint& p2);

/// Prox non-expansiveness:
/// <p1 - p2, prox(p1) - prox(p2)> >= (1 + mu*gamma) ||prox diff||^2.
InequalityCheck check_prox_nonexpansiveness(const SaddleProblem& problem, std::int64_t i,
                             double gamma, const PrimalDualPoint& p1,
                             const PrimalDualPoint& p2);

/// Strengthened firm non-expansiveness:
/// <g_i(prox(p1)) - g_i(prox(p2)), p1 - p2>
///   >= gamma (1 + mu/(L^2 gamma)) ||g difference||^2.
InequalityCheck check_firm_nonexpansiveness(const SaddleProblem& problem, std::int64_t i,
                               double gamma, const PrimalDualPoint& p1,
                               const PrimalDualPoint& p2);

/// Exact one-step contraction: the expectation over the sampled index is
/// enumerated (all n choices), not sampled.
struct ContractionResult {
  double t_current = 0.0;
  double t_next_expected = 0.0;
  double alpha = 0.0;
  InequalityCheck check;  // alpha * T^k >= E[T^{k+1}]
};

ContractionResult check_contraction(const SaddleProblem& problem,
                                    const PointSagaState& state,
                                    const RateConstants& rate,
                                    const PrimalDualPoint& oracle_point);

/// Least-squares fit of log(dist_sq) versus iteration after discarding the
/// first burn_in fraction of rows; returns the per-iteration contraction
/// factor of dist_sq.  Throws on fewer than 20 usable rows.
double estimate_rate(const Trace& trace, double burn_in_fraction = 0.2);

// ---------------------------------------------------------------------------
// Randomised property suites backing the verification command.
// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::int64_t trials = 200;
  std::uint64_t seed = 20240001;
  bool negative_control = false;  // also run the oversized-step contraction suite
};

struct VerifySuiteResult {
  std::string name;
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  double worst_slack = 0.0;
  std::string detail;            // replay info for the first failure
  bool negative_control = false; // excluded from the overall verdict
};

struct VerifyReport {
  std::vector<VerifySuiteResult> suites;
  bool passed() const;
};

VerifyReport run_verification(const VerifyOptions& options);

}  // namespace saddlevr
