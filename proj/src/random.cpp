#include "pmc/random.hpp"

#include <cmath>

#include "pmc/error.hpp"

namespace pmc {
namespace {

constexpr double kInversionCutoff = 30.0;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

} // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::substream(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  return Rng(mix64(mix64(seed) ^ fnv1a(label)) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::int64_t Rng::poisson(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::NonPositiveIntensity, "Poisson rate must be positive and finite");
  }
  return lambda < kInversionCutoff ? poisson_inversion(lambda) : poisson_ptrs(lambda);
}

std::int64_t Rng::poisson_inversion(double lambda) {
  const double u = uniform();
  double p = std::exp(-lambda);
  double cdf = p;
  std::int64_t k = 0;
  // The tail beyond k = 1000 is far below double resolution for lambda < 30.
  while (u > cdf && k < 1000) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables".
std::int64_t Rng::poisson_ptrs(double lambda) {
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -lambda + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::int64_t>(k);
    }
  }
}

} // namespace pmc
