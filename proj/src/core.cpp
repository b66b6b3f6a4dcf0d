#include "pmc/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

namespace pmc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::BadBounds: return "BadBounds";
  case ErrorCode::BadRank: return "BadRank";
  case ErrorCode::BadShape: return "BadShape";
  case ErrorCode::ShapeMismatch: return "ShapeMismatch";
  case ErrorCode::BadObservation: return "BadObservation";
  case ErrorCode::NonPositiveEntryAtObservation: return "NonPositiveEntryAtObservation";
  case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
  case ErrorCode::BadRadius: return "BadRadius";
  case ErrorCode::BadTau: return "BadTau";
  case ErrorCode::BadConfig: return "BadConfig";
  case ErrorCode::SvdFailure: return "SvdFailure";
  case ErrorCode::NoConvergence: return "NoConvergence";
  case ErrorCode::ProjectionFailure: return "ProjectionFailure";
  case ErrorCode::BacktrackOverflow: return "BacktrackOverflow";
  case ErrorCode::InvalidRegime: return "InvalidRegime";
  case ErrorCode::RankInfeasible: return "RankInfeasible";
  case ErrorCode::DegenerateRange: return "DegenerateRange";
  case ErrorCode::BadM: return "BadM";
  case ErrorCode::NonPositiveIntensity: return "NonPositiveIntensity";
  case ErrorCode::IndivisibleLayout: return "IndivisibleLayout";
  case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
  case ErrorCode::CorruptFile: return "CorruptFile";
  case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

double FeasibleRegion::nuclear_radius() const {
  return alpha * std::sqrt(static_cast<double>(r) * d1 * d2);
}

void validate_region(const FeasibleRegion& region) {
  if (region.d1 < 1 || region.d2 < 1) {
    throw Error(ErrorCode::BadShape, "d1 and d2 must be >= 1");
  }
  if (!std::isfinite(region.alpha) || !std::isfinite(region.beta) || !(region.beta > 0.0) ||
      region.beta > region.alpha) {
    throw Error(ErrorCode::BadBounds, "need 0 < beta <= alpha, got beta=" +
                                          std::to_string(region.beta) +
                                          " alpha=" + std::to_string(region.alpha));
  }
  if (region.r < 1 || region.r > std::min(region.d1, region.d2)) {
    throw Error(ErrorCode::BadRank, "rank " + std::to_string(region.r) + " outside [1, " +
                                        std::to_string(std::min(region.d1, region.d2)) + "]");
  }
}

ObservationSet::ObservationSet(int d1, int d2, std::vector<Sample> samples, double m_expected)
  : d1_(d1), d2_(d2), samples_(std::move(samples)), m_expected_(m_expected) {
  if (d1 < 1 || d2 < 1) {
    throw Error(ErrorCode::BadShape, "observation grid must be at least 1x1");
  }
  std::set<std::pair<int, int>> seen;
  for (const Sample& s : samples_) {
    if (s.i < 0 || s.i >= d1 || s.j < 0 || s.j >= d2) {
      throw Error(ErrorCode::BadObservation, "index (" + std::to_string(s.i) + "," +
                                                 std::to_string(s.j) + ") outside grid");
    }
    if (s.y < 0) {
      throw Error(ErrorCode::BadObservation, "negative count at (" + std::to_string(s.i) + "," +
                                                 std::to_string(s.j) + ")");
    }
    if (!seen.emplace(s.i, s.j).second) {
      throw Error(ErrorCode::BadObservation, "duplicate index (" + std::to_string(s.i) + "," +
                                                 std::to_string(s.j) + ")");
    }
  }
}

Eigen::MatrixXi ObservationSet::mask() const {
  Eigen::MatrixXi out = Eigen::MatrixXi::Zero(d1_, d2_);
  for (const Sample& s : samples_) out(s.i, s.j) = 1;
  return out;
}

void require_finite(const Matrix& x, const char* what) {
  if (!x.allFinite()) throw Error(ErrorCode::BadShape, std::string(what) + " has non-finite entries");
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

void require_shape(const Matrix& x, int d1, int d2, const char* what) {
  if (x.rows() != d1 || x.cols() != d2) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(what) + ": expected " + std::to_string(d1) + "x" +
                    std::to_string(d2) + ", got " + std::to_string(x.rows()) + "x" +
                    std::to_string(x.cols()));
  }
}

double mse_per_entry(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "mse_per_entry");
  if (a.size() == 0) return 0.0;
  return (a - b).squaredNorm() / static_cast<double>(a.size());
}

Svd thin_svd(const Matrix& x) {
  if (!x.allFinite()) throw Error(ErrorCode::SvdFailure, "non-finite input");
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw Error(ErrorCode::SvdFailure, "factorization failed");
  return Svd{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Vector singular_values(const Matrix& x) {
  if (!x.allFinite()) throw Error(ErrorCode::SvdFailure, "non-finite input");
  Eigen::JacobiSVD<Matrix> svd(x);
  if (svd.info() != Eigen::Success) throw Error(ErrorCode::SvdFailure, "factorization failed");
  return svd.singularValues();
}

double nuclear_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  return singular_values(x).sum();
}

int numerical_rank(const Matrix& x, double rel_floor) {
  if (x.size() == 0) return 0;
  const Vector s = singular_values(x);
  if (s(0) <= 0.0) return 0;
  const double floor = rel_floor * s(0);
  return static_cast<int>((s.array() > floor).count());
}

MembershipReport membership(const Matrix& x, const FeasibleRegion& region, double tol) {
  require_shape(x, region.d1, region.d2, "membership");
  MembershipReport report;
  report.in_box = ((x.array() >= region.beta - tol) && (x.array() <= region.alpha + tol)).all();
  report.in_nuclear_ball = nuclear_norm(x) <= region.nuclear_radius() + tol;
  return report;
}

} // namespace pmc
