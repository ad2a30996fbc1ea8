// Acceptance suite: executes each acceptance criterion end to end and prints
// one PASS/FAIL line per criterion.  Exits nonzero if any criterion fails.
//
// Usage: saddlevr_acceptance [--cli <path-to-cli-binary>] [--keep]

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dataio.hpp"
#include "diagnostics.hpp"
#include "nonsmooth_problem.hpp"
#include "policy_eval_problem.hpp"
#include "quadratic_problem.hpp"
#include "rng.hpp"
#include "scaled_problem.hpp"
#include "solvers.hpp"

using namespace saddlevr;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli;
fs::path g_scratch;
bool g_keep = false;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
  return WEXITSTATUS(std::system(cmd.c_str()));
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2]
                      : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

struct Outcome {
  bool passed = false;
  std::string note;
};

// ---------------------------------------------------------------------------
// 1. Structural inequalities: 1000 randomized instances per check.
// ---------------------------------------------------------------------------
Outcome criterion1() {
  VerifyOptions opts;
  opts.trials = 1000;
  opts.seed = 90210;
  const auto report = run_verification(opts);
  std::int64_t failures = 0;
  std::int64_t covered = 0;
  for (const auto& s : report.suites) {
    if (s.name == "monotonicity" || s.name == "prox_nonexpansiveness" ||
        s.name == "firm_nonexpansiveness") {
      ++covered;
      failures += s.failures;
      if (s.trials != 1000) return {false, "suite " + s.name + " trial count"};
    }
  }
  std::ostringstream note;
  note << "3x1000 randomized checks, " << failures << " failures";
  return {covered == 3 && failures == 0, note.str()};
}

// ---------------------------------------------------------------------------
// 2. Exact-expectation contraction along a stochastic proximal-point run.
// ---------------------------------------------------------------------------
Outcome criterion2() {
  const auto problem = make_random_quadratic(4242, 2, 2, 2, 0.5, 5.0);
  const auto rate = default_step_size(problem->constants());
  const auto star = problem->saddle();
  Rng rng(7);
  PrimalDualPoint start{Eigen::VectorXd(2), Eigen::VectorXd(2)};
  for (int j = 0; j < 2; ++j) {
    start.x(j) = 2.0 * rng.gaussian();
    start.y(j) = 2.0 * rng.gaussian();
  }
  PointSagaState state{start, GradientTable(*problem, start)};
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto res = check_contraction(*problem, state, rate, star);
    const double allowed = rate.alpha * res.t_current + 1e-9 * (1.0 + res.t_current);
    worst = std::max(worst, res.t_next_expected - allowed);
    if (res.t_next_expected > allowed) {
      std::ostringstream note;
      note << "violated at state " << k << " by " << res.t_next_expected - allowed;
      return {false, note.str()};
    }
    point_saga_step(*problem, rate.gamma,
                    static_cast<std::int64_t>(rng.bounded(2)), state);
  }
  std::ostringstream note;
  note << "100 enumerated states, worst margin " << worst;
  return {true, note.str()};
}

// ---------------------------------------------------------------------------
// 3. Linear-rate envelope, deterministic n=1 case.
// ---------------------------------------------------------------------------
Outcome criterion3() {
  std::vector<Eigen::MatrixXd> P{Eigen::MatrixXd::Identity(1, 1)};
  std::vector<Eigen::MatrixXd> Q{Eigen::MatrixXd::Identity(1, 1)};
  std::vector<Eigen::MatrixXd> M{Eigen::MatrixXd::Zero(1, 1)};
  std::vector<Eigen::VectorXd> a{Eigen::VectorXd::Zero(1)};
  std::vector<Eigen::VectorXd> b{Eigen::VectorXd::Zero(1)};
  const QuadraticSaddleProblem problem(P, Q, M, a, b);
  const auto rate = default_step_size(problem.constants());
  if (std::abs(rate.gamma - 1.0) > 1e-15 || std::abs(rate.alpha - 0.5) > 1e-15 ||
      std::abs(rate.c - 1.0) > 1e-15)
    return {false, "closed-form constants off for n=1, mu=L=1"};

  SolverConfig cfg;
  cfg.method = Method::kPointSaga;
  cfg.epochs = 51;
  cfg.trace_every = 1;
  const PrimalDualPoint start{Eigen::VectorXd::Constant(1, 2.0),
                              Eigen::VectorXd::Constant(1, -1.0)};
  const Trace t = solve_from(problem, cfg, start);
  const double d0 = t.rows.front().dist_sq;
  const double factor = rate.c * 1.0 + 1.0;
  for (const auto& r : t.rows) {
    if (r.iter > 50) break;
    const double bound = std::pow(0.5, r.iter) * factor * d0 * (1.0 + 1e-6);
    if (!(r.dist_sq <= bound)) {
      std::ostringstream note;
      note << "dist_sq " << r.dist_sq << " above envelope " << bound << " at k="
           << r.iter;
      return {false, note.str()};
    }
  }
  return {true, "per-iterate envelope holds for k <= 50"};
}

// ---------------------------------------------------------------------------
// 4. Method ordering on an ill-conditioned instance (kappa = 1000 >> sqrt(n)).
// ---------------------------------------------------------------------------

// 1-D components with blocks pinned at mu and coupling magnitude sqrt(L^2-mu^2);
// a fixed 60/40 sign split keeps the averaged operator ill-conditioned too, so
// no method can ride an easy mean problem.
std::shared_ptr<QuadraticSaddleProblem> ordering_instance(std::uint64_t seed,
                                                          std::int64_t n, double mu,
                                                          double lip) {
  Rng rng(seed);
  const double m = std::sqrt(lip * lip - mu * mu);
  std::vector<Eigen::MatrixXd> P, Q, M;
  std::vector<Eigen::VectorXd> a, b;
  for (std::int64_t i = 0; i < n; ++i) {
    P.push_back(Eigen::MatrixXd::Constant(1, 1, mu));
    Q.push_back(Eigen::MatrixXd::Constant(1, 1, mu));
    M.push_back(Eigen::MatrixXd::Constant(1, 1, (5 * i < 3 * n) ? m : -m));
    a.push_back(Eigen::VectorXd::Constant(1, 0.3 * rng.gaussian()));
    b.push_back(Eigen::VectorXd::Constant(1, 0.3 * rng.gaussian()));
  }
  return std::make_shared<QuadraticSaddleProblem>(P, Q, M, a, b);
}

std::int64_t evals_to_target(const SaddleProblem& problem, Method method,
                             double gamma, double tau, std::int64_t epochs,
                             std::uint64_t seed, double target) {
  SolverConfig cfg;
  cfg.method = method;
  cfg.gamma = gamma;
  cfg.tau = tau;
  cfg.epochs = epochs;
  cfg.seed = seed;
  const Trace t = solve(problem, cfg);
  return t.evals_to_dist_sq(target);
}

Outcome criterion4() {
  const double target = 1e-6;
  const std::int64_t n = 100;
  const auto problem = ordering_instance(777, n, 1e-3, 1.0);
  const std::uint64_t tune_seed = 1001;
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  const double gamma_grid[] = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  // tau' = gamma*tau products of the paper's two grids, spanning decades.
  const double tau_grid[] = {1e-2, 1e-1, 1.0, 10.0, 100.0};
  const std::int64_t tune_epochs = 20000;  // 2e6 evals per candidate

  auto tune = [&](Method m, bool over_tau) {
    double best_param = 0.0;
    std::int64_t best = -1;
    for (const double p : over_tau ? tau_grid : gamma_grid) {
      const std::int64_t e =
          evals_to_target(*problem, m, over_tau ? 0.0 : p, over_tau ? p : -1.0,
                          tune_epochs, tune_seed, target);
      if (e > 0 && (best < 0 || e < best)) {
        best = e;
        best_param = p;
      }
    }
    return std::make_pair(best_param, best);
  };

  auto measure = [&](Method m, double gamma, double tau, std::int64_t epochs) {
    std::vector<double> vals;
    for (const auto s : seeds) {
      const std::int64_t e =
          evals_to_target(*problem, m, gamma, tau, epochs, s, target);
      vals.push_back(e > 0 ? static_cast<double>(e) : 1e18);
    }
    return median_of(vals);
  };

  // Stochastic proximal point uses its closed-form step; forward methods are
  // grid-tuned the way the experiments tune them.
  const double ps = measure(Method::kPointSaga, 0.0, -1.0, 2000);
  const auto [cat_tau, cat_tuned] = tune(Method::kSvrgCatalyst, true);
  if (cat_tuned < 0) return {false, "catalyst never reached the target while tuning"};
  const double cat = measure(Method::kSvrgCatalyst, 0.0, cat_tau, tune_epochs);
  const auto [saga_gamma, saga_tuned] = tune(Method::kSaga, false);
  if (saga_tuned < 0) return {false, "saga never reached the target while tuning"};
  const double saga = measure(Method::kSaga, saga_gamma, -1.0, tune_epochs);
  const auto [svrg_gamma, svrg_tuned] = tune(Method::kSvrg, false);
  if (svrg_tuned < 0) return {false, "svrg never reached the target while tuning"};
  const double svrg = measure(Method::kSvrg, svrg_gamma, -1.0, tune_epochs);

  // Batch FB only needs a lower bound: cap its budget at 1.4x the slowest
  // variance-reduced method; not reaching the target inside the cap proves
  // the 1.3x gap.
  const double slow_vr = std::max(saga, svrg);
  const std::int64_t fb_cap_epochs =
      static_cast<std::int64_t>(std::ceil(1.4 * slow_vr / static_cast<double>(n))) + 1;
  double fb = 1e18;
  for (const double g : gamma_grid) {
    const std::int64_t e = evals_to_target(*problem, Method::kFb, g, -1.0,
                                           fb_cap_epochs, 1, target);
    if (e > 0) fb = std::min(fb, static_cast<double>(e));
  }
  if (fb >= 1e18) fb = 1.4 * slow_vr;  // proven lower bound from the cap

  std::ostringstream note;
  note << "median evals to 1e-6: point_saga=" << ps << " catalyst(tau'=" << cat_tau
       << ")=" << cat << " svrg(g=" << svrg_gamma << ")=" << svrg << " saga(g="
       << saga_gamma << ")=" << saga << " fb>=" << fb;
  const bool ordered = 1.3 * ps <= cat && 1.3 * cat <= std::min(saga, svrg) &&
                       1.3 * std::max(saga, svrg) <= fb;
  return {ordered, note.str()};
}

// ---------------------------------------------------------------------------
// 5. Woodbury prox: dense equivalence and O(d)-like cost scaling.
// ---------------------------------------------------------------------------

std::shared_ptr<PolicyEvalProblem> random_mspbe(std::uint64_t seed, std::int64_t n,
                                                Eigen::Index d, double rho,
                                                double lambda) {
  Rng rng(seed);
  Eigen::MatrixXd z(d, n), zp(d, n), b(d, n);
  for (std::int64_t i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      z(j, i) = rng.gaussian();
      zp(j, i) = rng.gaussian();
      b(j, i) = rng.gaussian();
    }
  return std::make_shared<PolicyEvalProblem>(std::move(z), std::move(zp),
                                             std::move(b), rho, lambda);
}

PrimalDualPoint dense_prox_oracle(const PolicyEvalProblem& problem, std::int64_t i,
                                  double gamma, const PrimalDualPoint& point) {
  const Eigen::Index d = problem.dx();
  const Eigen::VectorXd z = problem.z(i);
  const Eigen::VectorXd zp = problem.zp(i);
  const Eigen::MatrixXd A = z * zp.transpose();
  Eigen::MatrixXd k(2 * d, 2 * d);
  k.topLeftCorner(d, d) = problem.rho() * Eigen::MatrixXd::Identity(d, d);
  k.topLeftCorner(d, d).diagonal().array() += 1.0 / gamma;
  k.topRightCorner(d, d) = -A.transpose();
  k.bottomLeftCorner(d, d) = A;
  k.bottomRightCorner(d, d) = z * z.transpose();
  k.bottomRightCorner(d, d).diagonal().array() += problem.lambda() + 1.0 / gamma;
  Eigen::VectorXd rhs(2 * d);
  rhs.head(d) = point.x / gamma;
  rhs.tail(d) = problem.b(i) + point.y / gamma;
  const Eigen::VectorXd sol = k.partialPivLu().solve(rhs);
  return {sol.head(d), sol.tail(d)};
}

double median_prox_seconds(const PolicyEvalProblem& problem, int reps) {
  PrimalDualPoint point{Eigen::VectorXd::Ones(problem.dx()),
                        Eigen::VectorXd::Ones(problem.dy())};
  PrimalDualPoint out;
  std::vector<double> times;
  for (int batch = 0; batch < 5; ++batch) {
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r)
      problem.prox_component_into(r % problem.n(), 0.7, 0.7, point, out);
    times.push_back(seconds_since(t0) / reps);
  }
  std::sort(times.begin(), times.end());
  return times[2];
}

Outcome criterion5() {
  Rng rng(606);
  int checked = 0;
  double worst = 0.0;
  for (const Eigen::Index d : {2, 10, 50}) {
    for (int t = 0; t < 67 && checked < 200; ++t) {
      const auto problem = random_mspbe(rng.next_u64(), 3, d,
                                        rng.log_uniform(1e-4, 1.0),
                                        rng.log_uniform(1e-4, 1.0));
      PrimalDualPoint point{Eigen::VectorXd(d), Eigen::VectorXd(d)};
      for (Eigen::Index j = 0; j < d; ++j) {
        point.x(j) = 2.0 * rng.gaussian();
        point.y(j) = 2.0 * rng.gaussian();
      }
      const double gamma = rng.log_uniform(1e-3, 1e2);
      const auto i = static_cast<std::int64_t>(rng.bounded(3));
      const auto fast = problem->prox_component(i, gamma, point);
      const auto dense = dense_prox_oracle(*problem, i, gamma, point);
      const double rel = std::sqrt(fast.dist_sq(dense)) /
                         (1.0 + std::sqrt(dense.x.squaredNorm() +
                                          dense.y.squaredNorm()));
      worst = std::max(worst, rel);
      if (rel > 1e-8) {
        std::ostringstream note;
        note << "dense mismatch " << rel << " at d=" << d;
        return {false, note.str()};
      }
      ++checked;
    }
  }

  const auto small = random_mspbe(71, 4, 100, 0.1, 0.1);
  const auto large = random_mspbe(72, 4, 1600, 0.1, 0.1);
  const double t_small = median_prox_seconds(*small, 20000);
  const double t_large = median_prox_seconds(*large, 2000);
  const double exponent = std::log(t_large / t_small) / std::log(16.0);
  std::ostringstream note;
  note << checked << " dense checks (worst rel " << worst
       << "), cost exponent d^" << exponent;
  return {checked == 200 && exponent <= 1.3, note.str()};
}

// ---------------------------------------------------------------------------
// 6. Sub-linear averaged-iterate bound in the non-smooth case.
// ---------------------------------------------------------------------------
Outcome criterion6() {
  const std::int64_t n = 8;
  const auto problem = make_random_nonsmooth(313, n, 1, 1.0);
  const auto star = problem->saddle();
  // Start away from the (possibly thresholded-to-zero) saddle so the measured
  // bounds B and R are meaningful.
  const PrimalDualPoint start{Eigen::VectorXd::Constant(1, 1.5),
                              Eigen::VectorXd::Constant(1, -1.0)};
  const double r_bound = std::sqrt(start.dist_sq(star));
  double b_bound = 0.0;
  OperatorValue g0, gs;
  for (std::int64_t i = 0; i < n; ++i) {
    problem->grad_component_into(i, start, g0);
    problem->grad_component_into(i, *&star, gs);
    b_bound = std::max(b_bound, std::sqrt(g0.dist_sq(gs)));
  }
  const double mu = problem->constants().mu;
  const double bound =
      2.0 * std::sqrt(static_cast<double>(n)) * b_bound * r_bound / mu +
      r_bound * r_bound;

  const std::int64_t k_iters = 10000;
  double mean_scaled = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SolverConfig cfg;
    cfg.method = Method::kPointSagaNonsmooth;
    cfg.epochs = k_iters / n + 1;
    cfg.seed = seed;
    const Trace t = solve_from(*problem, cfg, start);
    const double err = t.averaged->dist_sq(star);
    mean_scaled += static_cast<double>(k_iters) * err / 100.0;
  }
  std::ostringstream note;
  note << "mean K*err^2 = " << mean_scaled << " vs 1.5*bound = " << 1.5 * bound
       << " (B=" << b_bound << ", R=" << r_bound << ")";
  return {mean_scaled <= 1.5 * bound, note.str()};
}

// ---------------------------------------------------------------------------
// 7. Variable rescaling: solve scaled, map back, weighted-metric accuracy.
// ---------------------------------------------------------------------------
Outcome criterion7() {
  Rng rng(808);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const double mu_x = rng.log_uniform(0.25, 4.0);
    double mu_y = rng.log_uniform(0.25, 4.0);
    if (std::abs(mu_x - mu_y) < 1e-3) mu_y *= 2.0;
    const auto base = make_random_quadratic(rng.next_u64(), 4, 2, 2, mu_x, mu_y,
                                            8.0 * std::max(mu_x, mu_y));
    const auto scaled = scale_problem(base, mu_x, mu_y);
    SolverConfig cfg;
    cfg.method = Method::kPointSaga;
    cfg.epochs = 1200;
    cfg.seed = 10 + t;
    const Trace trace = solve(*scaled, cfg);
    if (!(trace.final_dist_sq() <= 1e-12)) {
      std::ostringstream note;
      note << "scaled run " << t << " only reached " << trace.final_dist_sq();
      return {false, note.str()};
    }
    const auto back = scaled->to_base(trace.final_point);
    const auto star = base->saddle();
    const double weighted = mu_x * (back.x - star.x).squaredNorm() +
                            mu_y * (back.y - star.y).squaredNorm();
    worst = std::max(worst, weighted);
    if (!(weighted <= 1e-10)) {
      std::ostringstream note;
      note << "weighted error " << weighted << " on problem " << t;
      return {false, note.str()};
    }
  }
  std::ostringstream note;
  note << "20 problems, worst weighted error " << worst;
  return {true, note.str()};
}

// ---------------------------------------------------------------------------
// 8. End-to-end policy evaluation through the command line.
// ---------------------------------------------------------------------------
Outcome criterion8() {
  if (g_cli.empty()) return {false, "no --cli binary provided"};
  const fs::path dir = g_scratch / "criterion8";
  fs::create_directories(dir);
  const std::string data = (dir / "traj.csv").string();
  if (run_cli("gen-data --n 5000 --d 50 --eta 0.95 --seed 42 "
              "--feature-model random_walk --out " + data) != 0)
    return {false, "gen-data failed"};

  // Tune every method's parameters from the experiment grids with short
  // library pilots on the same data, then drive the measured comparison
  // through the command line.
  const auto batch = load_trajectories(data);
  const auto problem = PolicyEvalProblem::from_batch(batch, 1e-5, 1e-5);
  const double target = 1e-6;
  const std::int64_t pilot_epochs = 600;

  auto pilot = [&](Method m, double gamma, double tau) {
    SolverConfig cfg;
    cfg.method = m;
    cfg.gamma = gamma;
    cfg.tau = tau;
    cfg.epochs = pilot_epochs;
    cfg.seed = 1001;
    const Trace t = solve(*problem, cfg);
    const std::int64_t e = t.evals_to_primal_gap(target);
    const double gap = t.rows.back().primal_gap;
    return std::make_pair(e > 0 ? e : std::numeric_limits<std::int64_t>::max(),
                          std::isfinite(gap) ? gap : 1e300);
  };
  auto tune_gamma = [&](Method m) {
    double best_gamma = 1e-5;
    auto best = std::make_pair(std::numeric_limits<std::int64_t>::max(), 1e301);
    for (const double g : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
      const auto score = pilot(m, g, -1.0);
      if (score < best) {
        best = score;
        best_gamma = g;
      }
    }
    return best_gamma;
  };
  const double ps_gamma = tune_gamma(Method::kPointSaga);
  const double saga_gamma = tune_gamma(Method::kSaga);
  const double svrg_gamma = tune_gamma(Method::kSvrg);
  double cat_tau = 1e-2;
  {
    auto best = std::make_pair(std::numeric_limits<std::int64_t>::max(), 1e301);
    for (const double tau : {1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
      const auto score = pilot(Method::kSvrgCatalyst, 0.0, tau);
      if (score < best) {
        best = score;
        cat_tau = tau;
      }
    }
  }

  const fs::path out = dir / "compare";
  {
    std::ofstream spec(dir / "sweep.spec");
    spec << "[experiment]\n";
    spec << "problem = mspbe\n";
    spec << "data = " << data << "\n";
    spec << "rho = 1e-5\n";
    spec << "lambda = 1e-5\n";
    spec << "methods = point_saga,saga,svrg,svrg_catalyst\n";
    spec << "seeds = 1,2,3,4,5\n";
    spec << "epochs = 800\n";
    spec << "out = " << out.string() << "\n";
    spec << "[method.point_saga]\n";
    spec << "gamma = " << format_double(ps_gamma) << "\n";
    spec << "[method.saga]\n";
    spec << "gamma = " << format_double(saga_gamma) << "\n";
    spec << "[method.svrg]\n";
    spec << "gamma = " << format_double(svrg_gamma) << "\n";
    spec << "[method.svrg_catalyst]\n";
    spec << "tau = " << format_double(cat_tau) << "\n";
  }
  const int rc = run_cli("compare --spec " + (dir / "sweep.spec").string());
  if (rc != 0 && rc != 1)  // 1 would mean a baseline diverged, still usable
    return {false, "compare exited with code " + std::to_string(rc)};

  auto median_epochs = [&](const std::string& method) {
    std::vector<double> vals;
    for (int seed = 1; seed <= 5; ++seed) {
      const auto rows = load_trace(
          (out / (method + "_seed" + std::to_string(seed) + ".trace.csv"))
              .string());
      double reached = 1e18;
      for (const auto& r : rows)
        if (std::isfinite(r.primal_gap) && r.primal_gap <= target) {
          reached = static_cast<double>(r.grad_evals) / 5000.0;
          break;
        }
      vals.push_back(reached);
    }
    return median_of(vals);
  };
  const double ps = median_epochs("point_saga");
  const double saga = median_epochs("saga");
  const double svrg = median_epochs("svrg");
  const double cat = median_epochs("svrg_catalyst");

  std::ostringstream note;
  note << "median epochs to gap<=1e-6: point_saga(g=" << ps_gamma << ")=" << ps
       << " saga(g=" << saga_gamma << ")=" << saga << " svrg(g=" << svrg_gamma
       << ")=" << svrg << " catalyst(tau'=" << cat_tau << ")=" << cat;
  const bool fastest = ps < 1e17 && ps < saga && ps < svrg && ps < cat;
  return {fastest, note.str()};
}

// ---------------------------------------------------------------------------
// 9. Determinism and pinned formats.
// ---------------------------------------------------------------------------

std::string mask_wall_column(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const auto last = line.find_last_of(',');
    out << line.substr(0, last) << ",\n";
  }
  return out.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome criterion9() {
  // Library-level: identical configs give identical traces in every numeric
  // field; wall time is reported but outside the reproducibility contract.
  const auto problem = make_random_quadratic(515, 6, 2, 2, 0.5, 5.0);
  SolverConfig cfg;
  cfg.method = Method::kPointSaga;
  cfg.epochs = 40;
  cfg.seed = 99;
  const Trace a = solve(*problem, cfg);
  const Trace b = solve(*problem, cfg);
  if (a.rows.size() != b.rows.size()) return {false, "trace length mismatch"};
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& r = a.rows[i];
    const auto& s = b.rows[i];
    const auto same = [](double u, double v) {
      return (std::isnan(u) && std::isnan(v)) || u == v;
    };
    if (r.iter != s.iter || r.grad_evals != s.grad_evals ||
        !same(r.dist_sq, s.dist_sq) || !same(r.lyapunov, s.lyapunov) ||
        !same(r.primal_gap, s.primal_gap))
      return {false, "trace rows differ between identical runs"};
  }

  // Trajectory round trip is bitwise lossless.
  const auto batch = generate_trajectories(77, 40, 5, 0.95);
  const fs::path dir = g_scratch / "criterion9";
  fs::create_directories(dir);
  save_trajectories((dir / "t.csv").string(), batch);
  const auto loaded = load_trajectories((dir / "t.csv").string());
  for (std::int64_t i = 0; i < batch.n(); ++i) {
    if (batch.reward[i] != loaded.reward[i] ||
        (batch.phi[i].array() != loaded.phi[i].array()).any() ||
        (batch.phi_next[i].array() != loaded.phi_next[i].array()).any())
      return {false, "trajectory round trip not bitwise"};
  }
  save_trajectories((dir / "t2.csv").string(), loaded);
  if (slurp(dir / "t.csv") != slurp(dir / "t2.csv"))
    return {false, "re-saved trajectory file differs"};

  // Golden headers.
  if (std::string(kTraceCsvHeader) !=
      "iter,grad_evals,dist_sq,lyapunov,primal_gap,wall_seconds")
    return {false, "trace header changed"};
  {
    std::ifstream in(dir / "t.csv");
    std::string preamble, header;
    std::getline(in, preamble);
    std::getline(in, header);
    if (preamble != "# n=40 d=5 eta=0.95" ||
        header.rfind("r,phi_0,phi_1,phi_2,phi_3,phi_4,phin_0", 0) != 0)
      return {false, "trajectory header changed"};
  }

  // CLI-level: identical seeds give identical trace files up to wall time.
  if (!g_cli.empty()) {
    const std::string flags =
        "run --problem quad --n 5 --mu 0.5 --lip 4 --method svrg --gamma 0.05 "
        "--epochs 25 --seed 3 --out ";
    if (run_cli(flags + (dir / "r1").string()) != 0 ||
        run_cli(flags + (dir / "r2").string()) != 0)
      return {false, "cli runs failed"};
    const auto t1 = mask_wall_column(slurp(dir / "r1" / "svrg_seed3.trace.csv"));
    const auto t2 = mask_wall_column(slurp(dir / "r2" / "svrg_seed3.trace.csv"));
    if (t1 != t2) return {false, "cli trace files differ beyond wall time"};
  }
  return {true, "bitwise traces, lossless round trip, pinned headers"};
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) g_cli = argv[++i];
    if (arg == "--keep") g_keep = true;
  }
  g_scratch = fs::temp_directory_path() / "saddlevr_acceptance";
  fs::remove_all(g_scratch);
  fs::create_directories(g_scratch);

  struct Entry {
    const char* name;
    double budget_seconds;
    std::function<Outcome()> fn;
  };
  const std::vector<Entry> criteria{
      {"1 structural inequalities", 10.0, criterion1},
      {"2 exact-expectation contraction", 5.0, criterion2},
      {"3 deterministic rate envelope", 1.0, criterion3},
      {"4 method ordering at kappa >> sqrt(n)", 120.0, criterion4},
      {"5 fast prox: dense equivalence and O(d) cost", 30.0, criterion5},
      {"6 non-smooth averaged-iterate bound", 60.0, criterion6},
      {"7 variable rescaling round trip", 30.0, criterion7},
      {"8 end-to-end policy evaluation", 180.0, criterion8},
      {"9 determinism and formats", 60.0, criterion9},
  };

  int failures = 0;
  for (const auto& entry : criteria) {
    const auto t0 = Clock::now();
    Outcome outcome;
    try {
      outcome = entry.fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(t0);
    const bool in_budget = elapsed < entry.budget_seconds;
    const bool ok = outcome.passed && in_budget;
    if (!ok) ++failures;
    std::printf("%s  criterion %s  [%.1fs/%.0fs]  %s\n", ok ? "PASS" : "FAIL",
                entry.name, elapsed, entry.budget_seconds, outcome.note.c_str());
    std::fflush(stdout);
  }
  if (!g_keep) fs::remove_all(g_scratch);
  return failures == 0 ? 0 : 1;
}
