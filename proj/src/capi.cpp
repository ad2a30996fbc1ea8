#include "saddlevr.h"

#include <cstring>
#include <limits>
#include <memory>
#include <string>

#include "dataio.hpp"
#include "diagnostics.hpp"
#include "nonsmooth_problem.hpp"
#include "policy_eval_problem.hpp"
#include "problem.hpp"
#include "quadratic_problem.hpp"
#include "scaled_problem.hpp"
#include "solvers.hpp"

using namespace saddlevr;

struct saddlevr_problem {
  ProblemPtr impl;
};
struct saddlevr_trace {
  Trace impl;
};
struct saddlevr_batch {
  TrajectoryBatch impl;
};
struct saddlevr_verify_report {
  VerifyReport impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    set_error(e.what());
    return SADDLEVR_ERR_IO;
  } catch (const FormatError& e) {
    set_error(e.what());
    return SADDLEVR_ERR_FORMAT;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return SADDLEVR_ERR_INVALID;
  } catch (const std::out_of_range& e) {
    set_error(e.what());
    return SADDLEVR_ERR_INVALID;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SADDLEVR_ERR_INTERNAL;
  }
}

int require(bool cond, const char* msg) {
  if (cond) return SADDLEVR_OK;
  set_error(msg);
  return SADDLEVR_ERR_INVALID;
}

}  // namespace

extern "C" {

const char* saddlevr_version(void) { return "0.1.0"; }

const char* saddlevr_last_error(void) { return g_last_error.c_str(); }

/* ----------------------------- problems ----------------------------- */

int saddlevr_problem_quadratic_random(uint64_t seed, int64_t n, int32_t dx,
                                      int32_t dy, double mu, double lip,
                                      double block_spread, double linear_scale,
                                      saddlevr_problem** out) {
  if (int rc = require(out != nullptr, "null output handle")) return rc;
  return guarded([&] {
    QuadraticFamilyOptions opts;
    if (block_spread > 0.0) opts.block_spread = block_spread;
    opts.linear_scale = linear_scale;
    *out = new saddlevr_problem{make_random_quadratic(seed, n, dx, dy, mu, lip, opts)};
    return SADDLEVR_OK;
  });
}

int saddlevr_problem_demo(saddlevr_problem** out) {
  if (int rc = require(out != nullptr, "null output handle")) return rc;
  return guarded([&] {
    // Shifted 1-D demo f(x,y) = x^2/2 - x + xy - y^2/2 - y with saddle (1, 0),
    // so a run from the origin shows real progress.
    std::vector<Eigen::MatrixXd> P{Eigen::MatrixXd::Constant(1, 1, 1.0)};
    std::vector<Eigen::MatrixXd> Q{Eigen::MatrixXd::Constant(1, 1, 1.0)};
    std::vector<Eigen::MatrixXd> M{Eigen::MatrixXd::Constant(1, 1, 1.0)};
    std::vector<Eigen::VectorXd> a{Eigen::VectorXd::Constant(1, -1.0)};
    std::vector<Eigen::VectorXd> b{Eigen::VectorXd::Constant(1, 1.0)};
    *out = new saddlevr_problem{std::make_shared<QuadraticSaddleProblem>(
        std::move(P), std::move(Q), std::move(M), std::move(a), std::move(b))};
    return SADDLEVR_OK;
  });
}

int saddlevr_problem_mspbe(const saddlevr_batch* batch, double rho, double lambda,
                           saddlevr_problem** out) {
  if (int rc = require(out != nullptr && batch != nullptr, "null handle")) return rc;
  return guarded([&] {
    *out = new saddlevr_problem{
        PolicyEvalProblem::from_batch(batch->impl, rho, lambda)};
    return SADDLEVR_OK;
  });
}

int saddlevr_problem_nonsmooth_random(uint64_t seed, int64_t n, int32_t d,
                                      double mu, double scale,
                                      saddlevr_problem** out) {
  if (int rc = require(out != nullptr, "null output handle")) return rc;
  return guarded([&] {
    *out = new saddlevr_problem{make_random_nonsmooth(seed, n, d, mu, scale)};
    return SADDLEVR_OK;
  });
}

int saddlevr_problem_scaled(const saddlevr_problem* base, double mu_x, double mu_y,
                            saddlevr_problem** out) {
  if (int rc = require(out != nullptr && base != nullptr, "null handle")) return rc;
  return guarded([&] {
    *out = new saddlevr_problem{scale_problem(base->impl, mu_x, mu_y)};
    return SADDLEVR_OK;
  });
}

void saddlevr_problem_free(saddlevr_problem* p) { delete p; }

int64_t saddlevr_problem_n(const saddlevr_problem* p) { return p ? p->impl->n() : 0; }
int32_t saddlevr_problem_dx(const saddlevr_problem* p) {
  return p ? static_cast<int32_t>(p->impl->dx()) : 0;
}
int32_t saddlevr_problem_dy(const saddlevr_problem* p) {
  return p ? static_cast<int32_t>(p->impl->dy()) : 0;
}
double saddlevr_problem_mu(const saddlevr_problem* p) {
  return p ? p->impl->constants().mu : 0.0;
}
double saddlevr_problem_lip(const saddlevr_problem* p) {
  return p ? p->impl->constants().lip : 0.0;
}
int saddlevr_problem_has_primal_metric(const saddlevr_problem* p) {
  if (!p) return 0;
  return p->impl->primal_gap(Eigen::VectorXd::Zero(p->impl->dx())).has_value() ? 1 : 0;
}

int saddlevr_problem_saddle(const saddlevr_problem* p, double* x, double* y) {
  if (int rc = require(p && x && y, "null argument")) return rc;
  return guarded([&] {
    const PrimalDualPoint star = p->impl->saddle();
    std::memcpy(x, star.x.data(), sizeof(double) * star.x.size());
    std::memcpy(y, star.y.data(), sizeof(double) * star.y.size());
    return SADDLEVR_OK;
  });
}

/* ------------------------------ solving ----------------------------- */

const char* saddlevr_method_name(int method) {
  if (method < 0 || method > SADDLEVR_METHOD_POINT_SAGA_NONSMOOTH) return "unknown";
  return method_name(static_cast<Method>(method));
}

int saddlevr_method_from_name(const char* name, int* method) {
  if (int rc = require(name && method, "null argument")) return rc;
  const auto m = method_from_name(name);
  if (!m) {
    set_error(std::string("unknown method '") + name + "'");
    return SADDLEVR_ERR_INVALID;
  }
  *method = static_cast<int>(*m);
  return SADDLEVR_OK;
}

void saddlevr_solver_config_init(saddlevr_solver_config* cfg, int method) {
  if (!cfg) return;
  cfg->method = method;
  cfg->gamma = 0.0;
  cfg->theta = 0.9;
  cfg->tau = -1.0;
  cfg->m = 0;
  cfg->epochs = 50;
  cfg->seed = 0;
  cfg->trace_every = 0;
}

int saddlevr_solve(const saddlevr_problem* p, const saddlevr_solver_config* cfg,
                   saddlevr_trace** out) {
  if (int rc = require(p && cfg && out, "null argument")) return rc;
  if (int rc = require(cfg->method >= 0 &&
                           cfg->method <= SADDLEVR_METHOD_POINT_SAGA_NONSMOOTH,
                       "unknown method"))
    return rc;
  return guarded([&] {
    SolverConfig c;
    c.method = static_cast<Method>(cfg->method);
    c.gamma = cfg->gamma;
    c.theta = cfg->theta;
    c.tau = cfg->tau;
    c.m = cfg->m;
    c.epochs = cfg->epochs;
    c.seed = cfg->seed;
    c.trace_every = cfg->trace_every;
    auto* trace = new saddlevr_trace{solve(*p->impl, c)};
    *out = trace;
    if (trace->impl.diverged) {
      set_error("solver aborted: non-finite or runaway iterate");
      return SADDLEVR_ERR_DIVERGED;
    }
    return SADDLEVR_OK;
  });
}

void saddlevr_trace_free(saddlevr_trace* t) { delete t; }

int64_t saddlevr_trace_rows(const saddlevr_trace* t) {
  return t ? static_cast<int64_t>(t->impl.rows.size()) : 0;
}

int saddlevr_trace_get_row(const saddlevr_trace* t, int64_t index,
                       saddlevr_trace_row* out) {
  if (int rc = require(t && out, "null argument")) return rc;
  if (int rc = require(index >= 0 &&
                           index < static_cast<int64_t>(t->impl.rows.size()),
                       "row index out of range"))
    return rc;
  const TraceRow& r = t->impl.rows[static_cast<std::size_t>(index)];
  out->iter = r.iter;
  out->grad_evals = r.grad_evals;
  out->dist_sq = r.dist_sq;
  out->lyapunov = r.lyapunov;
  out->primal_gap = r.primal_gap;
  out->wall_seconds = r.wall_seconds;
  return SADDLEVR_OK;
}

double saddlevr_trace_gamma(const saddlevr_trace* t) { return t ? t->impl.gamma : 0.0; }
double saddlevr_trace_tau(const saddlevr_trace* t) { return t ? t->impl.tau : 0.0; }
int saddlevr_trace_diverged(const saddlevr_trace* t) {
  return t && t->impl.diverged ? 1 : 0;
}
double saddlevr_trace_final_dist_sq(const saddlevr_trace* t) {
  return t ? t->impl.final_dist_sq() : std::numeric_limits<double>::quiet_NaN();
}
int64_t saddlevr_trace_final_grad_evals(const saddlevr_trace* t) {
  return t ? t->impl.final_grad_evals() : 0;
}

int64_t saddlevr_trace_evals_to(const saddlevr_trace* t, int metric,
                                double threshold) {
  if (!t) return -1;
  if (metric == 0) return t->impl.evals_to_dist_sq(threshold);
  if (metric == 1) return t->impl.evals_to_primal_gap(threshold);
  return -1;
}

int saddlevr_trace_estimate_rate(const saddlevr_trace* t, double burn_in,
                                 double* alpha_hat) {
  if (int rc = require(t && alpha_hat, "null argument")) return rc;
  return guarded([&] {
    *alpha_hat = estimate_rate(t->impl, burn_in);
    return SADDLEVR_OK;
  });
}

int saddlevr_trace_averaged(const saddlevr_trace* t, double* x, double* y) {
  if (int rc = require(t && x && y, "null argument")) return rc;
  if (!t->impl.averaged) {
    set_error("trace has no averaged iterates (non-smooth variant only)");
    return SADDLEVR_ERR_UNSUPPORTED;
  }
  std::memcpy(x, t->impl.averaged->x.data(),
              sizeof(double) * t->impl.averaged->x.size());
  std::memcpy(y, t->impl.averaged->y.data(),
              sizeof(double) * t->impl.averaged->y.size());
  return SADDLEVR_OK;
}

int saddlevr_trace_save_csv(const saddlevr_trace* t, const char* path) {
  if (int rc = require(t && path, "null argument")) return rc;
  return guarded([&] {
    save_trace(path, t->impl.rows);
    return SADDLEVR_OK;
  });
}

/* ---------------------------- trajectories --------------------------- */

int saddlevr_batch_generate(uint64_t seed, int64_t n, int32_t d, double eta,
                            int feature_model, double reward_noise,
                            saddlevr_batch** out) {
  if (int rc = require(out != nullptr, "null output handle")) return rc;
  if (int rc = require(feature_model == SADDLEVR_FEATURES_GAUSSIAN ||
                           feature_model == SADDLEVR_FEATURES_RANDOM_WALK,
                       "unknown feature model"))
    return rc;
  return guarded([&] {
    TrajectoryGenOptions opts;
    opts.model = feature_model == SADDLEVR_FEATURES_GAUSSIAN
                     ? FeatureModel::kGaussian
                     : FeatureModel::kRandomWalk;
    opts.reward_noise = reward_noise;
    *out = new saddlevr_batch{generate_trajectories(seed, n, d, eta, opts)};
    return SADDLEVR_OK;
  });
}

int saddlevr_batch_load(const char* path, saddlevr_batch** out) {
  if (int rc = require(path && out, "null argument")) return rc;
  return guarded([&] {
    *out = new saddlevr_batch{load_trajectories(path)};
    return SADDLEVR_OK;
  });
}

int saddlevr_batch_save(const saddlevr_batch* b, const char* path) {
  if (int rc = require(b && path, "null argument")) return rc;
  return guarded([&] {
    save_trajectories(path, b->impl);
    return SADDLEVR_OK;
  });
}

void saddlevr_batch_free(saddlevr_batch* b) { delete b; }

int64_t saddlevr_batch_n(const saddlevr_batch* b) { return b ? b->impl.n() : 0; }
int32_t saddlevr_batch_d(const saddlevr_batch* b) {
  return b ? static_cast<int32_t>(b->impl.d) : 0;
}
double saddlevr_batch_eta(const saddlevr_batch* b) { return b ? b->impl.eta : 0.0; }

/* ---------------------------- verification --------------------------- */

void saddlevr_verify_options_init(saddlevr_verify_options* opts) {
  if (!opts) return;
  opts->trials = 200;
  opts->seed = 20240001;
  opts->negative_control = 0;
}

int saddlevr_verify_run(const saddlevr_verify_options* opts,
                        saddlevr_verify_report** out) {
  if (int rc = require(opts && out, "null argument")) return rc;
  return guarded([&] {
    VerifyOptions o;
    o.trials = opts->trials;
    o.seed = opts->seed;
    o.negative_control = opts->negative_control != 0;
    *out = new saddlevr_verify_report{run_verification(o)};
    return SADDLEVR_OK;
  });
}

void saddlevr_verify_report_free(saddlevr_verify_report* r) { delete r; }

int64_t saddlevr_verify_report_suites(const saddlevr_verify_report* r) {
  return r ? static_cast<int64_t>(r->impl.suites.size()) : 0;
}

static const VerifySuiteResult* suite_at(const saddlevr_verify_report* r,
                                         int64_t i) {
  if (!r || i < 0 || i >= static_cast<int64_t>(r->impl.suites.size()))
    return nullptr;
  return &r->impl.suites[static_cast<std::size_t>(i)];
}

const char* saddlevr_verify_suite_name(const saddlevr_verify_report* r, int64_t i) {
  const auto* s = suite_at(r, i);
  return s ? s->name.c_str() : "";
}
int64_t saddlevr_verify_suite_trials(const saddlevr_verify_report* r, int64_t i) {
  const auto* s = suite_at(r, i);
  return s ? s->trials : 0;
}
int64_t saddlevr_verify_suite_failures(const saddlevr_verify_report* r, int64_t i) {
  const auto* s = suite_at(r, i);
  return s ? s->failures : 0;
}
double saddlevr_verify_suite_worst_slack(const saddlevr_verify_report* r,
                                         int64_t i) {
  const auto* s = suite_at(r, i);
  return s ? s->worst_slack : 0.0;
}
const char* saddlevr_verify_suite_detail(const saddlevr_verify_report* r,
                                         int64_t i) {
  const auto* s = suite_at(r, i);
  return s ? s->detail.c_str() : "";
}
int saddlevr_verify_suite_is_negative_control(const saddlevr_verify_report* r,
                                              int64_t i) {
  const auto* s = suite_at(r, i);
  return s && s->negative_control ? 1 : 0;
}

int saddlevr_verify_report_passed(const saddlevr_verify_report* r) {
  return r && r->impl.passed() ? 1 : 0;
}

} /* extern "C" */
