#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace tpk {

/// SplitMix64 finalizer. Used to decorrelate user seeds and to derive
/// independent per-stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for stream `stream` of a run seeded with `seed`. Streams derived this
/// way are what make grid results independent of how cells are scheduled.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Portable random source: a 64-bit Mersenne twister with hand-rolled
/// conversions, so a seed yields the same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_positive();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi);
  /// Standard exponential variate.
  double exponential();
  /// Uniform index in [0, n).
  std::size_t index(std::size_t n);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tpk
