// Command-line front end for the saddlevr shared library: generate synthetic
// trajectories, run single experiments, compare methods across seeds, and run
// the verification suites.  Everything goes through the C API; this tool only
// parses flags, schedules runs and writes CSV/JSON.
//
// Exit codes: 0 success, 1 verification/convergence failure, 2 usage error,
// 3 I/O or file-format error.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "saddlevr.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw CliError{code, message};
}

int exit_code_for_status(int status) {
  switch (status) {
    case SADDLEVR_OK:
      return kExitOk;
    case SADDLEVR_ERR_DIVERGED:
      return kExitFailure;
    case SADDLEVR_ERR_IO:
    case SADDLEVR_ERR_FORMAT:
      return kExitIo;
    default:
      return kExitUsage;
  }
}

void check_status(int status) {
  if (status != SADDLEVR_OK)
    fail(exit_code_for_status(status), saddlevr_last_error());
}

template <typename T>
using Handle = std::unique_ptr<T, void (*)(T*)>;

Handle<saddlevr_problem> wrap(saddlevr_problem* p) {
  return {p, saddlevr_problem_free};
}
Handle<saddlevr_trace> wrap(saddlevr_trace* t) { return {t, saddlevr_trace_free}; }
Handle<saddlevr_batch> wrap(saddlevr_batch* b) { return {b, saddlevr_batch_free}; }

// ---------------------------------------------------------------------------
// problem construction from flags
// ---------------------------------------------------------------------------

struct ProblemFlags {
  std::string family = "quad";
  std::int64_t n = 10;
  int dx = 2;
  int dy = 2;
  int d = 2;
  double mu = 1.0;
  double lip = 10.0;
  double block_spread = 0.25;
  double linear_scale = 1.0;
  double scale = 1.0;
  double rho = 1e-5;
  double lambda = 1e-5;
  std::uint64_t problem_seed = 1;
  std::string data;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& pf) {
  cmd->add_option("--problem", pf.family,
                  "Problem family: quad, mspbe, nonsmooth, demo")
      ->default_val("quad");
  cmd->add_option("--n", pf.n, "Component count (quad, nonsmooth)");
  cmd->add_option("--dx", pf.dx, "Primal dimension (quad)");
  cmd->add_option("--dy", pf.dy, "Dual dimension (quad)");
  cmd->add_option("--d", pf.d, "Dimension (nonsmooth)");
  cmd->add_option("--mu", pf.mu, "Strong convexity-concavity modulus");
  cmd->add_option("--lip", pf.lip, "Operator Lipschitz constant (quad)");
  cmd->add_option("--block-spread", pf.block_spread,
                  "Fraction of conditioning carried by the diagonal blocks (quad)");
  cmd->add_option("--linear-scale", pf.linear_scale, "Scale of linear terms (quad)");
  cmd->add_option("--scale", pf.scale, "Coefficient scale (nonsmooth)");
  cmd->add_option("--rho", pf.rho, "Primal regularization (mspbe)");
  cmd->add_option("--lambda", pf.lambda, "Dual regularization (mspbe)");
  cmd->add_option("--problem-seed", pf.problem_seed, "Seed for random families");
  cmd->add_option("--data", pf.data, "Trajectory CSV (mspbe)");
}

Handle<saddlevr_problem> build_problem(const ProblemFlags& pf) {
  saddlevr_problem* raw = nullptr;
  if (pf.family == "quad") {
    check_status(saddlevr_problem_quadratic_random(
        pf.problem_seed, pf.n, pf.dx, pf.dy, pf.mu, pf.lip, pf.block_spread,
        pf.linear_scale, &raw));
  } else if (pf.family == "demo") {
    check_status(saddlevr_problem_demo(&raw));
  } else if (pf.family == "nonsmooth") {
    check_status(saddlevr_problem_nonsmooth_random(pf.problem_seed, pf.n, pf.d,
                                                   pf.mu, pf.scale, &raw));
  } else if (pf.family == "mspbe") {
    if (pf.data.empty())
      fail(kExitUsage, "--problem mspbe requires --data <trajectory csv>");
    saddlevr_batch* batch = nullptr;
    check_status(saddlevr_batch_load(pf.data.c_str(), &batch));
    auto guard = wrap(batch);
    check_status(saddlevr_problem_mspbe(batch, pf.rho, pf.lambda, &raw));
  } else {
    fail(kExitUsage, "unknown problem family '" + pf.family + "'");
  }
  return wrap(raw);
}

// ---------------------------------------------------------------------------
// solver configuration from flags
// ---------------------------------------------------------------------------

struct RunFlags {
  std::string gamma = "auto";
  double theta = 0.9;
  double tau = -1.0;
  std::int64_t m = 0;
  std::int64_t epochs = 50;
  std::int64_t trace_every = 0;
};

void add_run_flags(CLI::App* cmd, RunFlags& rf) {
  cmd->add_option("--gamma", rf.gamma, "Step size, or 'auto'")->default_val("auto");
  cmd->add_option("--theta", rf.theta, "Extrapolation weight (afb)");
  cmd->add_option("--tau", rf.tau, "Catalyst regularization strength (<0: auto)");
  cmd->add_option("--m", rf.m, "Snapshot interval (svrg; 0: 2n)");
  cmd->add_option("--epochs", rf.epochs, "Budget in epochs");
  cmd->add_option("--trace-every", rf.trace_every,
                  "Trace cadence in iterations (0: per epoch)");
}

double parse_gamma(const std::string& text) {
  if (text == "auto") return 0.0;
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size() || !(value > 0.0)) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    fail(kExitUsage,
         "--gamma expects a positive number or 'auto', got '" + text + "'");
  }
}

int parse_method(const std::string& name) {
  int method = 0;
  if (saddlevr_method_from_name(name.c_str(), &method) != SADDLEVR_OK)
    fail(kExitUsage, saddlevr_last_error());
  return method;
}

saddlevr_solver_config make_config(int method, const RunFlags& rf,
                                   std::uint64_t seed) {
  saddlevr_solver_config cfg;
  saddlevr_solver_config_init(&cfg, method);
  cfg.gamma = parse_gamma(rf.gamma);
  cfg.theta = rf.theta;
  cfg.tau = rf.tau;
  cfg.m = rf.m;
  cfg.epochs = rf.epochs;
  cfg.seed = seed;
  cfg.trace_every = rf.trace_every;
  return cfg;
}

// ---------------------------------------------------------------------------
// outputs
// ---------------------------------------------------------------------------

json config_json(const saddlevr_solver_config& cfg, const saddlevr_trace* trace) {
  return json{{"gamma", saddlevr_trace_gamma(trace)},
              {"theta", cfg.theta},
              {"tau", saddlevr_trace_tau(trace)},
              {"m", cfg.m},
              {"epochs", cfg.epochs},
              {"seed", cfg.seed},
              {"trace_every", cfg.trace_every}};
}

json summary_json(const std::string& method, const saddlevr_solver_config& cfg,
                  const saddlevr_trace* trace) {
  double alpha_hat = std::nan("");
  json alpha = nullptr;
  if (saddlevr_trace_estimate_rate(trace, 0.2, &alpha_hat) == SADDLEVR_OK)
    alpha = alpha_hat;
  return json{{"method", method},
              {"config", config_json(cfg, trace)},
              {"final_dist_sq", saddlevr_trace_final_dist_sq(trace)},
              {"alpha_hat", alpha},
              {"grad_evals", saddlevr_trace_final_grad_evals(trace)},
              {"diverged", saddlevr_trace_diverged(trace) != 0}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(kExitIo, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out.flush()) fail(kExitIo, "write failed for '" + path.string() + "'");
}

struct Cell {
  std::string method_name;
  int method = 0;
  std::uint64_t seed = 0;
  std::string stem;  // output file prefix
  saddlevr_solver_config cfg{};
  Handle<saddlevr_trace> trace{nullptr, saddlevr_trace_free};
  int status = SADDLEVR_OK;
};

int sweep_threads() {
  if (const char* env = std::getenv("SADDLE_VR_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs all cells, up to SADDLE_VR_THREADS at a time.  Each cell touches only
// its own state; the problem handle is shared read-only.
void run_cells(const saddlevr_problem* problem, std::vector<Cell>& cells) {
  std::atomic<std::size_t> next{0};
  const int workers =
      std::max(1, std::min<int>(sweep_threads(), static_cast<int>(cells.size())));
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      saddlevr_trace* raw = nullptr;
      cells[i].status = saddlevr_solve(problem, &cells[i].cfg, &raw);
      cells[i].trace = wrap(raw);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
}

void write_cell_outputs(const fs::path& out_dir, const Cell& cell) {
  const fs::path trace_path = out_dir / (cell.stem + ".trace.csv");
  check_status(
      saddlevr_trace_save_csv(cell.trace.get(), trace_path.string().c_str()));
  write_text(
      out_dir / (cell.stem + ".summary.json"),
      summary_json(cell.method_name, cell.cfg, cell.trace.get()).dump(2) + "\n");
}

// Metric value at or before the given cumulative-eval budget; NaN before the
// first row.
double value_at_evals(const saddlevr_trace* trace, int metric, std::int64_t evals) {
  double value = std::nan("");
  const std::int64_t rows = saddlevr_trace_rows(trace);
  for (std::int64_t r = 0; r < rows; ++r) {
    saddlevr_trace_row row;
    saddlevr_trace_get_row(trace, r, &row);
    if (row.grad_evals > evals) break;
    value = metric == 0 ? row.dist_sq : row.primal_gap;
  }
  return value;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size();
  if (m == 0) return std::nan("");
  return m % 2 == 1 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

std::string format_cell(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Aligned epochs-vs-metric table: per method the across-seed median of the
// last trace value within each epoch budget.
void write_compare_csv(const fs::path& path, const saddlevr_problem* problem,
                       const std::vector<std::string>& methods,
                       const std::vector<std::uint64_t>& seeds,
                       const std::vector<Cell>& cells, std::int64_t epochs) {
  const std::int64_t n = saddlevr_problem_n(problem);
  const bool primal = saddlevr_problem_has_primal_metric(problem) != 0;
  std::ostringstream out;
  out << "epoch,grad_evals";
  for (const auto& m : methods) {
    out << ',' << m << "_dist_sq";
    if (primal) out << ',' << m << "_primal_gap";
  }
  out << "\n";
  for (std::int64_t e = 1; e <= epochs; ++e) {
    out << e << ',' << e * n;
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      std::vector<double> dist, gap;
      for (std::size_t si = 0; si < seeds.size(); ++si) {
        const Cell& cell = cells[mi * seeds.size() + si];
        if (!cell.trace) continue;
        dist.push_back(value_at_evals(cell.trace.get(), 0, e * n));
        if (primal) gap.push_back(value_at_evals(cell.trace.get(), 1, e * n));
      }
      out << ',' << format_cell(median(dist));
      if (primal) out << ',' << format_cell(median(gap));
    }
    out << "\n";
  }
  write_text(path, out.str());
}

// ---------------------------------------------------------------------------
// sweep spec files: [experiment] and [method.<name>] key=value sections
// ---------------------------------------------------------------------------

using SpecSections = std::map<std::string, std::map<std::string, std::string>>;

SpecSections parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(kExitIo, "cannot open spec file '" + path + "'");
  SpecSections sections;
  std::string line, current = "experiment";
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.front() == '[') {
      if (line.back() != ']')
        fail(kExitIo,
             path + ":" + std::to_string(line_no) + ": unterminated section");
      current = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(kExitIo, path + ":" + std::to_string(line_no) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    sections[current][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return sections;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_gen_data(std::int64_t n, int d, double eta, std::uint64_t seed,
                 const std::string& model, double reward_noise,
                 const std::string& out) {
  int feature_model = SADDLEVR_FEATURES_GAUSSIAN;
  if (model == "random_walk")
    feature_model = SADDLEVR_FEATURES_RANDOM_WALK;
  else if (model != "gaussian")
    fail(kExitUsage, "unknown feature model '" + model + "'");
  saddlevr_batch* raw = nullptr;
  check_status(
      saddlevr_batch_generate(seed, n, d, eta, feature_model, reward_noise, &raw));
  auto batch = wrap(raw);
  check_status(saddlevr_batch_save(batch.get(), out.c_str()));
  std::cout << "wrote " << n << " rows (d=" << d << ", eta=" << eta << ") to "
            << out << "\n";
  return kExitOk;
}

int cmd_run(const ProblemFlags& pf, const RunFlags& rf, const std::string& method,
            std::uint64_t seed, const std::string& out) {
  const auto problem = build_problem(pf);
  const fs::path out_dir(out);
  std::error_code ec;
  fs::create_directories(out_dir, ec);

  Cell cell;
  cell.method_name = method;
  cell.method = parse_method(method);
  cell.seed = seed;
  cell.stem = method + "_seed" + std::to_string(seed);
  cell.cfg = make_config(cell.method, rf, seed);
  saddlevr_trace* raw = nullptr;
  cell.status = saddlevr_solve(problem.get(), &cell.cfg, &raw);
  cell.trace = wrap(raw);
  if (!cell.trace) fail(exit_code_for_status(cell.status), saddlevr_last_error());

  write_cell_outputs(out_dir, cell);
  std::cout << "method=" << method
            << " gamma=" << saddlevr_trace_gamma(cell.trace.get())
            << (cell.cfg.gamma <= 0.0 ? " (auto)" : "")
            << " grad_evals=" << saddlevr_trace_final_grad_evals(cell.trace.get())
            << " final_dist_sq=" << saddlevr_trace_final_dist_sq(cell.trace.get())
            << "\n";
  if (cell.status == SADDLEVR_ERR_DIVERGED) {
    std::cerr << "run diverged; see " << (out_dir / (cell.stem + ".summary.json"))
              << "\n";
    return kExitFailure;
  }
  check_status(cell.status);
  return kExitOk;
}

// Per-method configuration overrides from a sweep spec's [method.<name>]
// sections: gamma, tau, theta, m.
using MethodOverrides = std::map<std::string, std::map<std::string, std::string>>;

void apply_overrides(const MethodOverrides& overrides, const std::string& method,
                     saddlevr_solver_config& cfg) {
  const auto it = overrides.find(method);
  if (it == overrides.end()) return;
  for (const auto& [key, value] : it->second) {
    if (key == "gamma")
      cfg.gamma = parse_gamma(value);
    else if (key == "tau")
      cfg.tau = std::stod(value);
    else if (key == "theta")
      cfg.theta = std::stod(value);
    else if (key == "m")
      cfg.m = std::stoll(value);
    else if (key == "epochs")
      cfg.epochs = std::stoll(value);
    else
      fail(kExitUsage, "unknown method override '" + key + "'");
  }
}

int cmd_compare(const ProblemFlags& pf, const RunFlags& rf,
                std::vector<std::string> methods, std::vector<std::uint64_t> seeds,
                const std::string& out, const MethodOverrides& overrides) {
  if (methods.size() < 2)
    fail(kExitUsage, "compare needs at least two --methods entries");
  if (seeds.empty()) seeds = {0};
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (std::size_t j = i + 1; j < seeds.size(); ++j)
      if (seeds[i] == seeds[j]) fail(kExitUsage, "seeds must be distinct");

  const auto problem = build_problem(pf);
  const fs::path out_dir(out);
  std::error_code ec;
  fs::create_directories(out_dir, ec);

  std::vector<Cell> cells;
  std::map<std::string, int> name_uses;
  for (const auto& method : methods) {
    const int occurrence = name_uses[method]++;
    for (const auto seed : seeds) {
      Cell cell;
      cell.method_name = method;
      cell.method = parse_method(method);
      cell.seed = seed;
      cell.stem = method +
                  (occurrence > 0 ? "." + std::to_string(occurrence) : "") +
                  "_seed" + std::to_string(seed);
      cell.cfg = make_config(cell.method, rf, seed);
      apply_overrides(overrides, method, cell.cfg);
      cells.push_back(std::move(cell));
    }
  }

  run_cells(problem.get(), cells);

  bool diverged = false;
  for (const auto& cell : cells) {
    if (!cell.trace) fail(exit_code_for_status(cell.status), saddlevr_last_error());
    write_cell_outputs(out_dir, cell);
    diverged = diverged || cell.status == SADDLEVR_ERR_DIVERGED;
  }
  write_compare_csv(out_dir / "compare.csv", problem.get(), methods, seeds, cells,
                    rf.epochs);
  std::cout << "wrote " << cells.size() << " runs and compare.csv to " << out
            << "\n";
  return diverged ? kExitFailure : kExitOk;
}

int cmd_verify(std::int64_t trials, std::uint64_t seed, bool negative_control,
               const std::string& json_path) {
  saddlevr_verify_options opts;
  saddlevr_verify_options_init(&opts);
  opts.trials = trials;
  opts.seed = seed;
  opts.negative_control = negative_control ? 1 : 0;

  saddlevr_verify_report* raw = nullptr;
  check_status(saddlevr_verify_run(&opts, &raw));
  Handle<saddlevr_verify_report> report{raw, saddlevr_verify_report_free};

  const std::int64_t suites = saddlevr_verify_report_suites(report.get());
  json jr;
  jr["suites"] = json::array();
  std::cout << "suite                                trials  failures  worst_slack\n";
  for (std::int64_t i = 0; i < suites; ++i) {
    const std::string name = saddlevr_verify_suite_name(report.get(), i);
    const auto t = saddlevr_verify_suite_trials(report.get(), i);
    const auto f = saddlevr_verify_suite_failures(report.get(), i);
    const double slack = saddlevr_verify_suite_worst_slack(report.get(), i);
    const bool control =
        saddlevr_verify_suite_is_negative_control(report.get(), i) != 0;
    std::cout << "  " << name
              << std::string(name.size() < 34 ? 34 - name.size() : 1, ' ') << t
              << "  " << f << "  " << slack << (control ? "  (control)" : "")
              << "\n";
    jr["suites"].push_back(
        {{"name", name},
         {"trials", t},
         {"failures", f},
         {"worst_slack", slack},
         {"negative_control", control},
         {"detail", saddlevr_verify_suite_detail(report.get(), i)}});
  }
  const bool passed = saddlevr_verify_report_passed(report.get()) != 0;
  jr["passed"] = passed;
  std::cout << "verification: " << (passed ? "PASS" : "FAIL") << "\n";
  if (!json_path.empty()) write_text(json_path, jr.dump(2) + "\n");
  return passed ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic proximal-point and variance-reduced saddle-point solvers"};
  app.require_subcommand(1);

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "Generate synthetic MDP trajectories");
  std::int64_t gen_n = 1000;
  int gen_d = 50;
  double gen_eta = 0.95;
  std::uint64_t gen_seed = 1;
  std::string gen_model = "gaussian";
  double gen_noise = 0.1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Number of samples")->required();
  gen->add_option("--d", gen_d, "Feature dimension")->required();
  gen->add_option("--eta", gen_eta, "Discount factor in [0,1)");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--feature-model", gen_model, "gaussian or random_walk");
  gen->add_option("--reward-noise", gen_noise, "Reward noise level");
  gen->add_option("--out", gen_out, "Output CSV path")->required();

  // run
  auto* run = app.add_subcommand("run", "Run one method on one problem");
  ProblemFlags run_pf;
  RunFlags run_rf;
  std::string run_method;
  std::uint64_t run_seed = 0;
  std::string run_out = ".";
  add_problem_flags(run, run_pf);
  add_run_flags(run, run_rf);
  run->add_option("--method", run_method, "Solver method")->required();
  run->add_option("--seed", run_seed, "Run seed");
  run->add_option("--out", run_out, "Output directory");

  // compare
  auto* cmp = app.add_subcommand("compare", "Run several methods across seeds");
  ProblemFlags cmp_pf;
  RunFlags cmp_rf;
  std::string cmp_methods;
  std::string cmp_seeds = "0";
  std::string cmp_out = ".";
  std::string cmp_spec;
  add_problem_flags(cmp, cmp_pf);
  add_run_flags(cmp, cmp_rf);
  cmp->add_option("--methods", cmp_methods, "Comma-separated method list");
  cmp->add_option("--seeds", cmp_seeds, "Comma-separated seed list");
  cmp->add_option("--out", cmp_out, "Output directory");
  cmp->add_option("--spec", cmp_spec, "Sweep spec file (key=value sections)");

  // verify
  auto* ver = app.add_subcommand("verify", "Run the analysis verification suites");
  std::int64_t ver_trials = 200;
  std::uint64_t ver_seed = 20240001;
  bool ver_negative = false;
  std::string ver_json;
  ver->add_option("--trials", ver_trials, "Randomised trials per suite");
  ver->add_option("--seed", ver_seed, "Suite seed");
  ver->add_flag("--negative-control", ver_negative,
                "Also run the oversized-step contraction control");
  ver->add_option("--json", ver_json, "Write the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed())
      return cmd_gen_data(gen_n, gen_d, gen_eta, gen_seed, gen_model, gen_noise,
                          gen_out);
    if (run->parsed())
      return cmd_run(run_pf, run_rf, run_method, run_seed, run_out);
    if (cmp->parsed()) {
      std::vector<std::string> methods = split_list(cmp_methods);
      std::vector<std::uint64_t> seeds;
      for (const auto& s : split_list(cmp_seeds))
        seeds.push_back(std::strtoull(s.c_str(), nullptr, 10));
      MethodOverrides overrides;

      if (!cmp_spec.empty()) {
        const auto sections = parse_spec_file(cmp_spec);
        for (const auto& [section, kv] : sections)
          if (section.rfind("method.", 0) == 0)
            overrides[section.substr(7)] = kv;
        const auto exp = sections.find("experiment");
        if (exp != sections.end()) {
          const auto& kv = exp->second;
          auto get = [&](const char* key) -> std::optional<std::string> {
            const auto it = kv.find(key);
            return it == kv.end() ? std::nullopt
                                  : std::optional<std::string>(it->second);
          };
          if (const auto v = get("problem")) cmp_pf.family = *v;
          if (const auto v = get("n")) cmp_pf.n = std::stoll(*v);
          if (const auto v = get("dx")) cmp_pf.dx = std::stoi(*v);
          if (const auto v = get("dy")) cmp_pf.dy = std::stoi(*v);
          if (const auto v = get("mu")) cmp_pf.mu = std::stod(*v);
          if (const auto v = get("lip")) cmp_pf.lip = std::stod(*v);
          if (const auto v = get("rho")) cmp_pf.rho = std::stod(*v);
          if (const auto v = get("lambda")) cmp_pf.lambda = std::stod(*v);
          if (const auto v = get("data")) cmp_pf.data = *v;
          if (const auto v = get("problem_seed"))
            cmp_pf.problem_seed = std::stoull(*v);
          if (const auto v = get("methods")) methods = split_list(*v);
          if (const auto v = get("epochs")) cmp_rf.epochs = std::stoll(*v);
          if (const auto v = get("gamma")) cmp_rf.gamma = *v;
          if (const auto v = get("out")) cmp_out = *v;
          if (const auto v = get("seeds")) {
            seeds.clear();
            for (const auto& s : split_list(*v))
              seeds.push_back(std::strtoull(s.c_str(), nullptr, 10));
          }
        }
      }
      return cmd_compare(cmp_pf, cmp_rf, methods, seeds, cmp_out, overrides);
    }
    if (ver->parsed())
      return cmd_verify(ver_trials, ver_seed, ver_negative, ver_json);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
