#include "pmc/projections.hpp"

#include <cmath>
#include <string>

namespace pmc {
namespace {

Matrix reassemble(const Svd& svd, const Vector& s) {
  return svd.u * s.asDiagonal() * svd.v.transpose();
}

} // namespace

Matrix project_box(const Matrix& x, const FeasibleRegion& region) {
  require_shape(x, region.d1, region.d2, "project_box");
  return x.cwiseMax(region.beta).cwiseMin(region.alpha);
}

double nuclear_ball_threshold(const Vector& sigma, double radius) {
  if (sigma.sum() <= radius) return 0.0;
  // sigma is sorted nonincreasing: scan breakpoints for the active count k.
  double prefix = 0.0;
  double theta = 0.0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    prefix += sigma(k);
    const double candidate = (prefix - radius) / static_cast<double>(k + 1);
    if (sigma(k) > candidate) {
      theta = candidate;
    } else {
      break;
    }
  }
  return std::max(theta, 0.0);
}

Matrix project_nuclear_ball(const Matrix& x, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::BadRadius, "radius must be positive, got " + std::to_string(radius));
  }
  if (x.size() == 0) return x;
  const Svd svd = thin_svd(x);
  if (svd.s.sum() <= radius) return x;
  const double theta = nuclear_ball_threshold(svd.s, radius);
  return reassemble(svd, (svd.s.array() - theta).cwiseMax(0.0).matrix());
}

Matrix svt(const Matrix& x, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::BadTau, "tau must be >= 0, got " + std::to_string(tau));
  }
  if (x.size() == 0) return x;
  const Svd svd = thin_svd(x);
  return reassemble(svd, (svd.s.array() - tau).cwiseMax(0.0).matrix());
}

ProjectionReport alternating_projection(const Matrix& u0, const FeasibleRegion& region, double tol,
                                        int max_iter) {
  validate_region(region);
  require_shape(u0, region.d1, region.d2, "alternating_projection");
  if (!(tol > 0.0)) throw Error(ErrorCode::BadConfig, "tol must be positive");
  if (max_iter < 1) throw Error(ErrorCode::BadConfig, "max_iter must be >= 1");

  const double radius = region.nuclear_radius();
  ProjectionReport report;
  report.result = u0;
  for (int j = 1; j <= max_iter; ++j) {
    const Matrix v = project_nuclear_ball(report.result, radius);
    report.result = project_box(v, region);
    const double gap = (v - report.result).norm();
    report.gaps.push_back(gap);
    report.iterations = j;
    report.final_gap = gap;
    if (gap <= tol) {
      report.converged = true;
      break;
    }
  }
  return report;
}

} // namespace pmc
