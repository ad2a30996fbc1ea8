#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "problem.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace saddlevr {

enum class Method {
  kPointSaga,
  kSaga,
  kSvrg,
  kSvrgCatalyst,
  kSagaCatalyst,
  kFb,
  kAfb,
  kSfb,
  kPointSagaNonsmooth,
};

const char* method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);

/// Run parameters.  gamma <= 0, tau < 0, m <= 0 and trace_every <= 0 request
/// the documented automatic choices: gamma via the closed-form step size for
/// the stochastic proximal-point methods, via a pilot over the grid
/// {1e-1..1e-5} for the forward baselines, and 1/mu for the decaying
/// stochastic step; tau = max(L/sqrt(n) - mu, 0); m = 2n; trace_every = n
/// (one row per epoch).  tau = 0 runs the inner method unregularized.
struct SolverConfig {
  Method method = Method::kPointSaga;
  double gamma = 0.0;
  double theta = 0.9;       // extrapolation weight (afb)
  double tau = -1.0;        // catalyst regularization; < 0: automatic
  std::int64_t m = 0;       // snapshot interval (svrg)
  std::int64_t epochs = 50; // budget: epochs * n component calls
  std::uint64_t seed = 0;
  std::int64_t trace_every = 0;
};

/// One trace record.  lyapunov and primal_gap are NaN when not applicable.
struct TraceRow {
  std::int64_t iter = 0;
  std::int64_t grad_evals = 0;
  double dist_sq = 0.0;
  double lyapunov = 0.0;
  double primal_gap = 0.0;
  double wall_seconds = 0.0;
};

struct Trace {
  Method method = Method::kPointSaga;
  std::vector<TraceRow> rows;
  double gamma = 0.0;  // resolved step size actually used
  double tau = 0.0;    // resolved catalyst strength (catalyst methods)
  bool diverged = false;
  PrimalDualPoint final_point;
  std::optional<PrimalDualPoint> averaged;  // averaged iterates (non-smooth variant)

  double final_dist_sq() const;
  std::int64_t final_grad_evals() const;
  /// grad_evals of the first row at or below the threshold; -1 if never.
  std::int64_t evals_to_dist_sq(double threshold) const;
  std::int64_t evals_to_primal_gap(double threshold) const;
};

/// Runs the configured method from the origin.  A divergent run returns with
/// trace.diverged set (the trace holds the rows seen so far).
Trace solve(const SaddleProblem& problem, const SolverConfig& config);
Trace solve_from(const SaddleProblem& problem, const SolverConfig& config,
                 const PrimalDualPoint& start);

/// The step size solve() would use, resolving automatic choices.
double resolve_gamma(const SaddleProblem& problem, const SolverConfig& config);

/// Mutable state of the stochastic proximal-point iteration, exposed so the
/// diagnostics can drive single steps and inspect the table.
struct PointSagaState {
  PrimalDualPoint point;
  GradientTable table;
};

/// One iteration with the given component index: shifted point, prox, stored
/// value recovered from the prox displacement.
void point_saga_step(const SaddleProblem& problem, double gamma, std::int64_t j,
                     PointSagaState& state);

}  // namespace saddlevr
