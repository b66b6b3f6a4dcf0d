#include "pmc/solvers.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <string>

#include "pmc/likelihood.hpp"

namespace pmc {
namespace {

constexpr double kMaxBacktrackL = 1e15;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_problem(const ObservationSet& obs, const FeasibleRegion& region, const SolverConfig& cfg) {
  validate_region(region);
  validate_config(cfg);
  if (obs.d1() != region.d1 || obs.d2() != region.d2) {
    throw Error(ErrorCode::ShapeMismatch, "observation grid does not match region shape");
  }
  if (obs.empty()) throw Error(ErrorCode::BadObservation, "at least one observation is required");
}

double active_fraction(const Matrix& x, const FeasibleRegion& region) {
  if (x.size() == 0) return 0.0;
  const auto active = ((x.array() == region.beta) || (x.array() == region.alpha)).count();
  return static_cast<double>(active) / static_cast<double>(x.size());
}

void finish(SolverReport& report, const FeasibleRegion& region, Clock::time_point start) {
  report.iterations_run = static_cast<int>(report.objective_trace.size());
  report.box_active_fraction = active_fraction(report.estimate, region);
  report.wall_time = seconds_since(start);
}

// Shared loop for PG (momentum off) and APG (momentum on).
SolverReport proximal_gradient(const ObservationSet& obs, const FeasibleRegion& region,
                               const SolverConfig& cfg, bool accelerate,
                               const IterationCallback& on_iter) {
  check_problem(obs, region, cfg);
  const auto start = Clock::now();
  const double lip = lipschitz_constant(region);

  SolverReport report;
  report.algorithm = accelerate ? Algorithm::APG : Algorithm::PG;
  report.final_l = lip;

  Matrix prev = init_matrix(obs, region);
  Matrix z = prev;
  for (int k = 1; k <= cfg.max_iter; ++k) {
    // The extrapolated point can leave the box (even go nonpositive); the
    // gradient is taken at its box projection.
    const Matrix at = accelerate ? project_box(z, region) : z;
    const Matrix step = at - gradient(at, obs) / lip;
    ProjectionReport proj = alternating_projection(step, region, cfg.proj_tol, cfg.proj_max_iter);
    Matrix current = std::move(proj.result);
    const double f = neg_log_likelihood(current, obs);
    report.objective_trace.push_back(f);
    if (on_iter) on_iter(k, f, lip);
    if (!proj.converged) {
      report.estimate = std::move(current);
      report.termination = Termination::ProjectionFailure;
      finish(report, region, start);
      return report;
    }
    if (accelerate) {
      const double momentum = static_cast<double>(k - 1) / static_cast<double>(k + 2);
      z = current + momentum * (current - prev);
    } else {
      z = current;
    }
    prev = std::move(current);
  }
  report.estimate = std::move(prev);
  report.termination = Termination::MaxIter;
  finish(report, region, start);
  return report;
}

} // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
  case Algorithm::PG: return "pg";
  case Algorithm::APG: return "apg";
  case Algorithm::PMLSV: return "pmlsv";
  }
  return "unknown";
}

std::string_view to_string(Termination t) {
  switch (t) {
  case Termination::MaxIter: return "MaxIter";
  case Termination::QGapSmall: return "QGapSmall";
  case Termination::ProjectionFailure: return "ProjectionFailure";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "pg") return Algorithm::PG;
  if (lower == "apg") return Algorithm::APG;
  if (lower == "pmlsv") return Algorithm::PMLSV;
  return std::nullopt;
}

void validate_config(const SolverConfig& cfg) {
  if (cfg.max_iter < 1) throw Error(ErrorCode::BadConfig, "max_iter must be >= 1");
  if (!(cfg.eta > 1.0) || !std::isfinite(cfg.eta)) throw Error(ErrorCode::BadConfig, "eta must be > 1");
  if (!(cfg.lambda >= 0.0) || !std::isfinite(cfg.lambda)) throw Error(ErrorCode::BadConfig, "lambda must be >= 0");
  if (!(cfg.l0 > 0.0) || !std::isfinite(cfg.l0)) throw Error(ErrorCode::BadConfig, "l0 must be > 0");
  if (!(cfg.proj_tol > 0.0)) throw Error(ErrorCode::BadConfig, "proj_tol must be > 0");
  if (cfg.proj_max_iter < 1) throw Error(ErrorCode::BadConfig, "proj_max_iter must be >= 1");
}

nlohmann::json to_json(const SolverReport& report, bool include_timing) {
  nlohmann::json j;
  j["algorithm"] = std::string(to_string(report.algorithm));
  j["iterations_run"] = report.iterations_run;
  j["termination"] = std::string(to_string(report.termination));
  if (include_timing) j["wall_time_sec"] = report.wall_time;
  j["objective_trace"] = report.objective_trace;
  j["final_l"] = report.final_l;
  j["backtracks"] = report.backtracks;
  j["box_active_fraction"] = report.box_active_fraction;
  return j;
}

Matrix init_matrix(const ObservationSet& obs, const FeasibleRegion& region) {
  validate_region(region);
  if (obs.d1() != region.d1 || obs.d2() != region.d2) {
    throw Error(ErrorCode::ShapeMismatch, "observation grid does not match region shape");
  }
  Matrix m = Matrix::Constant(region.d1, region.d2, 0.5 * (region.alpha + region.beta));
  for (const Sample& s : obs.samples()) m(s.i, s.j) = static_cast<double>(s.y);
  return project_box(m, region);
}

double q_model(const Matrix& m, const Matrix& m_prev, double t, const ObservationSet& obs) {
  require_same_shape(m, m_prev, "q_model");
  if (!(t > 0.0)) throw Error(ErrorCode::BadConfig, "t must be positive");
  const Matrix delta = m - m_prev;
  return neg_log_likelihood(m_prev, obs) + delta.cwiseProduct(gradient(m_prev, obs)).sum() +
         0.5 * t * delta.squaredNorm();
}

SolverReport solve_pg(const ObservationSet& obs, const FeasibleRegion& region,
                      const SolverConfig& cfg, const IterationCallback& on_iter) {
  return proximal_gradient(obs, region, cfg, false, on_iter);
}

SolverReport solve_apg(const ObservationSet& obs, const FeasibleRegion& region,
                       const SolverConfig& cfg, const IterationCallback& on_iter) {
  return proximal_gradient(obs, region, cfg, true, on_iter);
}

SolverReport solve_pmlsv(const ObservationSet& obs, const FeasibleRegion& region,
                         const SolverConfig& cfg, const IterationCallback& on_iter) {
  check_problem(obs, region, cfg);
  const auto start = Clock::now();

  SolverReport report;
  report.algorithm = Algorithm::PMLSV;

  const double stop_gap = 0.5 / static_cast<double>(cfg.max_iter);
  double lip = cfg.l0;
  Matrix prev = init_matrix(obs, region);
  for (int k = 1; k <= cfg.max_iter; ++k) {
    const double f_prev = neg_log_likelihood(prev, obs);
    const Matrix grad = gradient(prev, obs);

    Matrix current;
    double f = 0.0;
    double q = 0.0;
    while (true) {
      const Matrix step = prev - grad / lip;
      current = project_box(svt(step, cfg.lambda / lip), region);
      f = neg_log_likelihood(current, obs);
      const Matrix delta = current - prev;
      q = f_prev + delta.cwiseProduct(grad).sum() + 0.5 * lip * delta.squaredNorm();
      if (f <= q) break;
      lip *= cfg.eta;
      ++report.backtracks;
      if (lip > kMaxBacktrackL) {
        throw Error(ErrorCode::BacktrackOverflow,
                    "L exceeded " + std::to_string(kMaxBacktrackL) + " at iteration " + std::to_string(k));
      }
    }

    report.objective_trace.push_back(f);
    report.model_trace.push_back(q);
    if (on_iter) on_iter(k, f, lip);
    prev = std::move(current);
    if (std::abs(f - q) < stop_gap) {
      report.termination = Termination::QGapSmall;
      break;
    }
  }
  report.estimate = std::move(prev);
  report.final_l = lip;
  finish(report, region, start);
  return report;
}

SolverReport solve(const ObservationSet& obs, const FeasibleRegion& region, const SolverConfig& cfg,
                   const IterationCallback& on_iter) {
  switch (cfg.algorithm) {
  case Algorithm::PG: return solve_pg(obs, region, cfg, on_iter);
  case Algorithm::APG: return solve_apg(obs, region, cfg, on_iter);
  case Algorithm::PMLSV: return solve_pmlsv(obs, region, cfg, on_iter);
  }
  throw Error(ErrorCode::BadConfig, "unknown algorithm");
}

} // namespace pmc
