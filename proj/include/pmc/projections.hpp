#pragma once

#include <vector>

#include "pmc/core.hpp"

namespace pmc {

/// Tolerance on ||V_j - U_j||_F used by alternating projection by default.
inline constexpr double kDefaultProjTol = 1e-6;
inline constexpr int kDefaultProjMaxIter = 1000;

/// Elementwise clamp into [beta, alpha]: the Frobenius-nearest box point.
Matrix project_box(const Matrix& x, const FeasibleRegion& region);

/// Euclidean projection onto {Y : ||Y||_* <= radius}.
///
/// Soft-thresholds the singular values by the unique theta >= 0 with
/// sum_i (sigma_i - theta)_+ = radius. Returns `x` unchanged when it is
/// already inside the ball.
Matrix project_nuclear_ball(const Matrix& x, double radius);

/// Threshold theta used by project_nuclear_ball for singular values `sigma`
/// (nonincreasing, nonnegative). Zero when sum(sigma) <= radius.
double nuclear_ball_threshold(const Vector& sigma, double radius);

/// Singular value thresholding D_tau(x) = U diag((sigma - tau)_+) V^T, the
/// minimizer of 0.5 ||Y - x||_F^2 + tau ||Y||_*.
Matrix svt(const Matrix& x, double tau);

struct ProjectionReport {
  Matrix result;
  int iterations = 0;
  double final_gap = 0.0;
  /// False when max_iter was reached with final_gap > tol.
  bool converged = false;
  /// ||V_j - U_j||_F for every iteration j.
  std::vector<double> gaps;
};

/// Alternating projections V_j = P_nuclear(U_{j-1}), U_j = P_box(V_j) until
/// ||V_j - U_j||_F <= tol. The result is the last U_j, so it always lies in
/// the box. Non-convergence is signalled by `converged == false`, never by
/// throwing, so callers keep the last iterate.
ProjectionReport alternating_projection(const Matrix& u0, const FeasibleRegion& region,
                                        double tol = kDefaultProjTol,
                                        int max_iter = kDefaultProjMaxIter);

} // namespace pmc
