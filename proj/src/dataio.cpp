#include "dataio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rng.hpp"

namespace saddlevr {

const char* const kTraceCsvHeader =
    "iter,grad_evals,dist_sq,lyapunov,primal_gap,wall_seconds";

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view cell, const std::string& path, std::size_t line) {
  double value = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
    throw FormatError(path + ":" + std::to_string(line) + ": non-numeric cell '" +
                      std::string(cell) + "'");
  return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(pos));
      break;
    }
    cells.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return cells;
}

}  // namespace

TrajectoryBatch generate_trajectories(std::uint64_t seed, std::int64_t n,
                                      Eigen::Index d, double eta,
                                      const TrajectoryGenOptions& opts) {
  if (n < 1 || d < 1) throw std::invalid_argument("generate_trajectories: bad sizes");
  if (eta < 0.0 || eta >= 1.0)
    throw std::invalid_argument("generate_trajectories: eta must lie in [0, 1)");
  Rng rng(seed);
  TrajectoryBatch batch;
  batch.d = d;
  batch.eta = eta;
  batch.reward.reserve(n);
  batch.phi.reserve(n);
  batch.phi_next.reserve(n);

  Eigen::VectorXd w(d);
  if (opts.unit_weights)
    w.setOnes();
  else
    for (Eigen::Index j = 0; j < d; ++j) w(j) = rng.gaussian();

  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Eigen::VectorXd state(d);
  for (Eigen::Index j = 0; j < d; ++j) state(j) = scale * rng.gaussian();
  for (std::int64_t i = 0; i < n; ++i) {
    Eigen::VectorXd phi(d), phin(d);
    if (opts.model == FeatureModel::kGaussian) {
      for (Eigen::Index j = 0; j < d; ++j) phi(j) = scale * rng.gaussian();
      for (Eigen::Index j = 0; j < d; ++j) phin(j) = scale * rng.gaussian();
    } else {
      // Chained walk with episode resets every 200 steps: consecutive samples
      // continue one trajectory, so features are serially correlated the way
      // on-policy data is, while episodes keep the magnitudes stationary.
      if (i > 0 && i % 200 == 0)
        for (Eigen::Index j = 0; j < d; ++j) state(j) = scale * rng.gaussian();
      phi = state;
      for (Eigen::Index j = 0; j < d; ++j)
        phin(j) = phi(j) + 0.5 * scale * rng.gaussian();
      state = phin;
    }
    const double r = w.dot(phi) + opts.reward_noise * rng.gaussian();
    batch.reward.push_back(r);
    batch.phi.push_back(std::move(phi));
    batch.phi_next.push_back(std::move(phin));
  }
  return batch;
}

void save_trajectories(const std::string& path, const TrajectoryBatch& batch) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "# n=" << batch.n() << " d=" << batch.d
      << " eta=" << format_double(batch.eta) << "\n";
  out << "r";
  for (Eigen::Index j = 0; j < batch.d; ++j) out << ",phi_" << j;
  for (Eigen::Index j = 0; j < batch.d; ++j) out << ",phin_" << j;
  out << "\n";
  for (std::int64_t i = 0; i < batch.n(); ++i) {
    out << format_double(batch.reward[i]);
    for (Eigen::Index j = 0; j < batch.d; ++j)
      out << ',' << format_double(batch.phi[i](j));
    for (Eigen::Index j = 0; j < batch.d; ++j)
      out << ',' << format_double(batch.phi_next[i](j));
    out << "\n";
  }
  if (!out.flush()) throw IoError("write failed for '" + path + "'");
}

TrajectoryBatch load_trajectories(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw FormatError(path + ":1: expected '# n=<n> d=<d> eta=<eta>' preamble");

  std::int64_t n = -1;
  Eigen::Index d = -1;
  double eta = std::nan("");
  {
    std::istringstream meta(line.substr(2));
    std::string tok;
    while (meta >> tok) {
      if (tok.rfind("n=", 0) == 0)
        n = std::stoll(tok.substr(2));
      else if (tok.rfind("d=", 0) == 0)
        d = static_cast<Eigen::Index>(std::stoll(tok.substr(2)));
      else if (tok.rfind("eta=", 0) == 0)
        eta = parse_double(tok.substr(4), path, 1);
    }
  }
  if (n < 1 || d < 1 || std::isnan(eta))
    throw FormatError(path + ":1: incomplete preamble");

  if (!std::getline(in, line) || line.rfind("r,phi_0", 0) != 0)
    throw FormatError(path + ":2: expected trajectory header");

  TrajectoryBatch batch;
  batch.d = d;
  batch.eta = eta;
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != static_cast<std::size_t>(1 + 2 * d))
      throw FormatError(path + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(1 + 2 * d) + " cells, found " +
                        std::to_string(cells.size()));
    batch.reward.push_back(parse_double(cells[0], path, line_no));
    Eigen::VectorXd phi(d), phin(d);
    for (Eigen::Index j = 0; j < d; ++j)
      phi(j) = parse_double(cells[1 + j], path, line_no);
    for (Eigen::Index j = 0; j < d; ++j)
      phin(j) = parse_double(cells[1 + d + j], path, line_no);
    batch.phi.push_back(std::move(phi));
    batch.phi_next.push_back(std::move(phin));
  }
  if (batch.n() != n)
    throw FormatError(path + ": preamble states n=" + std::to_string(n) +
                      " but file has " + std::to_string(batch.n()) + " rows");
  return batch;
}

void save_trace(const std::string& path, const std::vector<TraceRow>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << kTraceCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.iter << ',' << r.grad_evals << ',';
    if (std::isfinite(r.dist_sq)) out << format_double(r.dist_sq);
    out << ',';
    if (std::isfinite(r.lyapunov)) out << format_double(r.lyapunov);
    out << ',';
    if (std::isfinite(r.primal_gap)) out << format_double(r.primal_gap);
    out << ',' << format_double(r.wall_seconds) << "\n";
  }
  if (!out.flush()) throw IoError("write failed for '" + path + "'");
}

std::vector<TraceRow> load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line) || line != kTraceCsvHeader)
    throw FormatError(path + ":1: unexpected trace header");
  std::vector<TraceRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 6)
      throw FormatError(path + ":" + std::to_string(line_no) +
                        ": expected 6 cells");
    TraceRow r;
    r.iter = static_cast<std::int64_t>(parse_double(cells[0], path, line_no));
    r.grad_evals = static_cast<std::int64_t>(parse_double(cells[1], path, line_no));
    const auto opt = [&](std::string_view c) {
      return c.empty() ? std::nan("") : parse_double(c, path, line_no);
    };
    r.dist_sq = opt(cells[2]);
    r.lyapunov = opt(cells[3]);
    r.primal_gap = opt(cells[4]);
    r.wall_seconds = parse_double(cells[5], path, line_no);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace saddlevr
