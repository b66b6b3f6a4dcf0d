#pragma once

#include <string>

#include <json.hpp>

#include "pmc/core.hpp"

namespace pmc {

/// Absolute constants in the recovery bounds. The defaults are the values
/// the proofs pin down: C' = 128 (1 + sqrt 6) e, C1 = 1/256, C2 = 1/4096,
/// and C0 = 33 (the proof needs C0 > 32).
struct BoundConstants {
  double c_prime = 128.0 * (1.0 + 2.449489742783178098197) * 2.718281828459045235360;
  double c0 = 33.0;
  double c1 = 1.0 / 256.0;
  double c2 = 1.0 / 4096.0;
};

/// Throws Error{NonPositiveParameter} unless every constant is > 0.
void validate_constants(const BoundConstants& k);

/// An evaluated bound on the per-entry MSE.
///
/// `value` is always computed when the inputs are numerically meaningful,
/// even if a hypothesis of the underlying theorem fails; `valid` and
/// `reason` say whether the bound actually applies.
struct BoundReport {
  double value = 0.0;
  /// Upper: "general" or "simplified" (m >= (d1+d2) log(d1 d2)).
  /// Lower: "constant" (C1 branch of the min) or "rate" (C2 branch).
  std::string regime;
  bool valid = false;
  std::string reason;
  /// Probability qualifier of the statement, as text.
  std::string probability;
  BoundConstants constants;
};

nlohmann::json to_json(const BoundReport& report);

/// Upper bound on ||M - M_hat||_F^2 / (d1 d2) for the constrained ML estimate.
BoundReport upper_bound(const FeasibleRegion& region, double m, const BoundConstants& k = {});

/// Minimax lower bound min{C1, C2 alpha^{3/2} sqrt(r max(d1,d2) / m)}.
BoundReport lower_bound(const FeasibleRegion& region, double m, const BoundConstants& k = {});

/// upper / lower; throws Error{InvalidRegime} unless both are valid.
double bound_gap(const FeasibleRegion& region, double m, const BoundConstants& k = {});

/// t0 = alpha (e^2 - 3): for Y ~ Poisson(lambda), lambda <= alpha,
/// P(Y - lambda >= t) <= e^{-t} whenever t >= t0.
double poisson_tail_threshold(double alpha);
double tail_bound(double t);

} // namespace pmc
