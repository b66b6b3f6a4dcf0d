#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pmc/error.hpp"

namespace pmc {

/// Dense real matrix of Poisson intensities (counts per observation).
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default absolute tolerance for membership checks.
inline constexpr double kMembershipTol = 1e-9;

/// The feasible set S: entries in [beta, alpha] and nuclear norm at most
/// alpha * sqrt(r * d1 * d2).
struct FeasibleRegion {
  int d1 = 0;
  int d2 = 0;
  double alpha = 0.0;
  double beta = 0.0;
  int r = 0;

  double nuclear_radius() const;
};

/// Throws Error{BadShape|BadBounds|BadRank} unless the region is well formed.
void validate_region(const FeasibleRegion& region);

struct Sample {
  int i = 0;
  int j = 0;
  std::int64_t y = 0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Sampled index set Omega with its Poisson counts.
///
/// Indices are zero based, unique and inside the d1 x d2 grid; counts are
/// nonnegative. Samples are kept in the order given.
class ObservationSet {
public:
  ObservationSet() = default;
  ObservationSet(int d1, int d2, std::vector<Sample> samples, double m_expected = 0.0);

  int d1() const noexcept { return d1_; }
  int d2() const noexcept { return d2_; }
  std::span<const Sample> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  double m_expected() const noexcept { return m_expected_; }

  /// d1 x d2 0/1 matrix marking observed cells.
  Eigen::MatrixXi mask() const;

  friend bool operator==(const ObservationSet&, const ObservationSet&) = default;

private:
  int d1_ = 0;
  int d2_ = 0;
  std::vector<Sample> samples_;
  double m_expected_ = 0.0;
};

void require_finite(const Matrix& x, const char* what);
void require_same_shape(const Matrix& a, const Matrix& b, const char* what);
void require_shape(const Matrix& x, int d1, int d2, const char* what);

double mse_per_entry(const Matrix& a, const Matrix& b);

/// Thin SVD x = u * diag(s) * v^T with s nonincreasing.
struct Svd {
  Matrix u;
  Vector s;
  Matrix v;
};

/// Throws Error{SvdFailure} on non-finite input or a failed factorization.
Svd thin_svd(const Matrix& x);

/// Singular values in nonincreasing order.
Vector singular_values(const Matrix& x);
double nuclear_norm(const Matrix& x);

/// Number of singular values above rel_floor * sigma_max.
int numerical_rank(const Matrix& x, double rel_floor = 1e-12);

struct MembershipReport {
  bool in_box = false;
  bool in_nuclear_ball = false;

  bool feasible() const noexcept { return in_box && in_nuclear_ball; }
};

MembershipReport membership(const Matrix& x, const FeasibleRegion& region,
                            double tol = kMembershipTol);

} // namespace pmc
