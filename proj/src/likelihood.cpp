#include "pmc/likelihood.hpp"

#include <cmath>
#include <string>

namespace pmc {
namespace {

void require_positive_at(double v, const Sample& s) {
  if (!(v > 0.0)) {
    throw Error(ErrorCode::NonPositiveEntryAtObservation,
                "x(" + std::to_string(s.i) + "," + std::to_string(s.j) + ") = " + std::to_string(v));
  }
}

void require_positive(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) {
    throw Error(ErrorCode::NonPositiveParameter,
                "rates must be positive, got " + std::to_string(p) + ", " + std::to_string(q));
  }
}

template <typename F>
double entry_mean(const Matrix& p, const Matrix& q, F&& f) {
  require_same_shape(p, q, "divergence");
  if (p.size() == 0) return 0.0;
  double sum = 0.0;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    for (Eigen::Index i = 0; i < p.rows(); ++i) sum += f(p(i, j), q(i, j));
  }
  return sum / static_cast<double>(p.size());
}

} // namespace

double neg_log_likelihood(const Matrix& x, const ObservationSet& obs) {
  require_shape(x, obs.d1(), obs.d2(), "neg_log_likelihood");
  double f = 0.0;
  for (const Sample& s : obs.samples()) {
    const double v = x(s.i, s.j);
    require_positive_at(v, s);
    f += v;
    if (s.y != 0) f -= static_cast<double>(s.y) * std::log(v);
  }
  return f;
}

Matrix gradient(const Matrix& x, const ObservationSet& obs) {
  require_shape(x, obs.d1(), obs.d2(), "gradient");
  Matrix g = Matrix::Zero(x.rows(), x.cols());
  for (const Sample& s : obs.samples()) {
    const double v = x(s.i, s.j);
    require_positive_at(v, s);
    g(s.i, s.j) = 1.0 - static_cast<double>(s.y) / v;
  }
  return g;
}

double lipschitz_constant(const FeasibleRegion& region) {
  validate_region(region);
  return region.alpha / (region.beta * region.beta);
}

double kl(double p, double q) {
  require_positive(p, q);
  return p * std::log(p / q) - (p - q);
}

double hellinger_sq(double p, double q) {
  require_positive(p, q);
  const double d = std::sqrt(p) - std::sqrt(q);
  // 2 - 2 e^{-d^2/2} without cancellation for small d
  return -2.0 * std::expm1(-0.5 * d * d);
}

double kl_matrix(const Matrix& p, const Matrix& q) {
  return entry_mean(p, q, [](double a, double b) { return kl(a, b); });
}

double hellinger_sq_matrix(const Matrix& p, const Matrix& q) {
  return entry_mean(p, q, [](double a, double b) { return hellinger_sq(a, b); });
}

double hellinger_t(const FeasibleRegion& region) {
  const double gap = region.alpha - region.beta;
  return gap * gap / (8.0 * region.beta);
}

double one_minus_exp_over(double t) {
  if (t == 0.0) return 1.0;
  return -std::expm1(-t) / t;
}

double hellinger_mse_floor(const FeasibleRegion& region) {
  validate_region(region);
  return one_minus_exp_over(hellinger_t(region)) / (4.0 * region.alpha);
}

} // namespace pmc
