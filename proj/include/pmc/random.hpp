#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pmc {

/// Seeded generator with portable draws.
///
/// Every logical stream (ground truth, mask, counts, trial k, ...) is derived
/// from the user seed plus a label and index, so adding a stream never shifts
/// the draws of another. Uniform and Poisson variates are computed here
/// rather than through <random> distributions, whose output is
/// implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Bernoulli(p).
  bool bernoulli(double p) { return uniform() < p; }
  /// Poisson(lambda): sequential inversion below 30, PTRS rejection above.
  std::int64_t poisson(double lambda);

private:
  std::int64_t poisson_inversion(double lambda);
  std::int64_t poisson_ptrs(double lambda);

  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

} // namespace pmc
