#pragma once

#include <cstdint>

namespace saddlevr {

/// Deterministic 64-bit generator used for every random decision in the
/// library (index sampling, data generation, problem construction).
///
/// The state is xoshiro256** seeded through splitmix64, with the standard
/// published constants:
///   splitmix64:  increment 0x9e3779b97f4a7c15,
///                mix multipliers 0xbf58476d1ce4e5b9 and 0x94d049bb133111eb
///   xoshiro256**: output rotl(s1 * 5, 7) * 9, rotations 45/… as below
///
/// Uniform doubles take the top 53 bits; Gaussians use the Marsaglia polar
/// method (sqrt/log only).  The integer pipeline is exactly reproducible on
/// any platform with 64-bit arithmetic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

  /// Log-uniform in [lo, hi), lo > 0.
  double log_uniform(double lo, double hi);

  /// Unbiased integer in [0, bound) via Lemire rejection.
  std::uint64_t bounded(std::uint64_t bound);

  /// Standard normal.
  double gaussian();

 private:
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace saddlevr
