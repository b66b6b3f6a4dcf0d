#include "pmc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pmc/likelihood.hpp"

namespace pmc {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void add_reason(BoundReport& report, const std::string& why) {
  if (!report.reason.empty()) report.reason += "; ";
  report.reason += why;
  report.valid = false;
}

bool check_inputs(BoundReport& report, const FeasibleRegion& region, double m) {
  try {
    validate_region(region);
  } catch (const Error& e) {
    add_reason(report, e.what());
    report.value = kNaN;
    return false;
  }
  if (!(m > 0.0) || !std::isfinite(m)) {
    add_reason(report, "m must be positive");
    report.value = kNaN;
    return false;
  }
  return true;
}

} // namespace

void validate_constants(const BoundConstants& k) {
  if (!(k.c_prime > 0.0) || !(k.c0 > 0.0) || !(k.c1 > 0.0) || !(k.c2 > 0.0)) {
    throw Error(ErrorCode::NonPositiveParameter, "bound constants must be positive");
  }
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json j;
  if (std::isfinite(report.value)) {
    j["value"] = report.value;
  } else {
    j["value"] = nullptr;
  }
  j["regime"] = report.regime;
  j["valid"] = report.valid;
  j["reason"] = report.reason;
  j["probability"] = report.probability;
  j["constants"] = {{"c_prime", report.constants.c_prime},
                    {"c0", report.constants.c0},
                    {"c1", report.constants.c1},
                    {"c2", report.constants.c2}};
  return j;
}

BoundReport upper_bound(const FeasibleRegion& region, double m, const BoundConstants& k) {
  validate_constants(k);
  BoundReport report;
  report.constants = k;
  report.probability = "at least 1 - C/(d1 d2) over Omega and Y";
  report.valid = true;
  if (!check_inputs(report, region, m)) return report;

  const double d1 = region.d1;
  const double d2 = region.d2;
  const double log_d = std::log(d1 * d2);
  const double e2 = std::exp(2.0);
  // 8 alpha T / (1 - e^{-T}), continuous at T = 0
  const double hellinger_factor = 8.0 * region.alpha / one_minus_exp_over(hellinger_t(region));
  const double prefactor = k.c_prime * hellinger_factor * (region.alpha * std::sqrt(double(region.r)) / region.beta) *
                           (region.alpha * (e2 - 2.0) + 3.0 * log_d) * std::sqrt((d1 + d2) / m);
  if (m >= (d1 + d2) * log_d) {
    report.regime = "simplified";
    report.value = std::numbers::sqrt2 * prefactor;
  } else {
    report.regime = "general";
    report.value = prefactor * std::sqrt(1.0 + (d1 + d2) * log_d / m);
  }
  return report;
}

BoundReport lower_bound(const FeasibleRegion& region, double m, const BoundConstants& k) {
  validate_constants(k);
  BoundReport report;
  report.constants = k;
  report.probability = "at least 3/4, for some M in S, against any estimator";
  report.valid = true;
  if (!check_inputs(report, region, m)) return report;

  const double dmax = std::max(region.d1, region.d2);
  const double dmin = std::min(region.d1, region.d2);
  const double rate = k.c2 * std::pow(region.alpha, 1.5) * std::sqrt(region.r * dmax / m);
  if (k.c1 <= rate) {
    report.regime = "constant";
    report.value = k.c1;
  } else {
    report.regime = "rate";
    report.value = rate;
  }

  if (region.alpha < 1.0) add_reason(report, "requires alpha >= 1");
  if (region.r < 4) add_reason(report, "requires r >= 4");
  if (region.alpha < 2.0 * region.beta) add_reason(report, "requires alpha >= 2 beta");
  if (region.alpha * region.alpha * region.r * dmax < k.c0) {
    add_reason(report, "requires alpha^2 r max(d1,d2) >= C0");
  }
  const double floor = region.r * region.alpha * region.alpha / dmin;
  if (!(report.value > floor)) {
    add_reason(report, "bound must exceed r alpha^2 / min(d1,d2)");
  }
  return report;
}

double bound_gap(const FeasibleRegion& region, double m, const BoundConstants& k) {
  const BoundReport up = upper_bound(region, m, k);
  const BoundReport low = lower_bound(region, m, k);
  if (!up.valid) throw Error(ErrorCode::InvalidRegime, "upper bound invalid: " + up.reason);
  if (!low.valid) throw Error(ErrorCode::InvalidRegime, "lower bound invalid: " + low.reason);
  return up.value / low.value;
}

double poisson_tail_threshold(double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::NonPositiveParameter, "alpha must be positive");
  return alpha * (std::exp(2.0) - 3.0);
}

double tail_bound(double t) { return std::exp(-t); }

} // namespace pmc
