#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "solvers.hpp"

namespace saddlevr {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Policy-evaluation samples: reward r_i, features phi_i and next-step
/// features phi'_i, plus the discount eta.
struct TrajectoryBatch {
  Eigen::Index d = 0;
  double eta = 0.0;
  std::vector<double> reward;
  std::vector<Eigen::VectorXd> phi;
  std::vector<Eigen::VectorXd> phi_next;

  std::int64_t n() const { return static_cast<std::int64_t>(reward.size()); }
};

enum class FeatureModel {
  kGaussian,    // phi, phi' independent N(0, I/d)
  kRandomWalk,  // phi' = phi + 0.5 * N(0, I/d)
};

struct TrajectoryGenOptions {
  FeatureModel model = FeatureModel::kGaussian;
  double reward_noise = 0.1;
  /// Use the all-ones regression weights instead of random ones.
  bool unit_weights = false;
};

/// Deterministic synthetic MDP trajectories: rewards follow a hidden linear
/// model r_i = w'phi_i + noise.  Fixed draw order (weights, then per row
/// phi, phi', reward noise) so batches are reproducible from the seed alone.
TrajectoryBatch generate_trajectories(std::uint64_t seed, std::int64_t n,
                                      Eigen::Index d, double eta,
                                      const TrajectoryGenOptions& opts = {});

/// CSV with a "# n=<n> d=<d> eta=<eta>" preamble and header
/// "r,phi_0..phi_{d-1},phin_0..phin_{d-1}".  Values are written as
/// shortest-round-trip decimal text, so save/load is lossless.
void save_trajectories(const std::string& path, const TrajectoryBatch& batch);
TrajectoryBatch load_trajectories(const std::string& path);

/// Trace CSV: exactly the TraceRow columns in order, empty cells for absent
/// optionals.
void save_trace(const std::string& path, const std::vector<TraceRow>& rows);
std::vector<TraceRow> load_trace(const std::string& path);

extern const char* const kTraceCsvHeader;

/// Shortest decimal text that round-trips the exact binary64 value.
std::string format_double(double v);

}  // namespace saddlevr
