#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pmc/core.hpp"
#include "pmc/projections.hpp"

namespace pmc {

enum class Algorithm { PG, APG, PMLSV };
enum class Termination { MaxIter, QGapSmall, ProjectionFailure };

std::string_view to_string(Algorithm a);
std::string_view to_string(Termination t);
/// Accepts "pg", "apg", "pmlsv" (any case).
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Solver selection and hyperparameters. Defaults are the values used for
/// the image experiments: lambda 0.1, K 2000, initial L 1e-4, eta 1.1.
struct SolverConfig {
  Algorithm algorithm = Algorithm::PMLSV;
  int max_iter = 2000;
  /// Nuclear-norm weight (PMLSV only).
  double lambda = 0.1;
  /// Initial reciprocal step size (PMLSV only; PG/APG use alpha / beta^2).
  double l0 = 1e-4;
  /// Step-shrink factor applied to L on a failed majorization test.
  double eta = 1.1;
  double proj_tol = kDefaultProjTol;
  int proj_max_iter = kDefaultProjMaxIter;
  /// Carried into reports for reproducibility; the solvers are deterministic.
  std::uint64_t seed = 0;
};

/// Throws Error{BadConfig} unless K >= 1, eta > 1, lambda >= 0, l0 > 0 and
/// proj_tol > 0.
void validate_config(const SolverConfig& cfg);

struct SolverReport {
  Algorithm algorithm = Algorithm::PMLSV;
  Matrix estimate;
  /// f(M_k) after projection, one entry per iteration.
  std::vector<double> objective_trace;
  /// PMLSV only: Q_L(M_k, M_{k-1}) at each accepted step.
  std::vector<double> model_trace;
  int iterations_run = 0;
  Termination termination = Termination::MaxIter;
  double wall_time = 0.0;
  /// Last reciprocal step size (constant alpha / beta^2 for PG/APG).
  double final_l = 0.0;
  /// PMLSV only: number of L <- eta L increases.
  int backtracks = 0;
  /// Fraction of estimate entries sitting on beta or alpha.
  double box_active_fraction = 0.0;
};

/// Serializes as {algorithm, iterations_run, termination, wall_time_sec,
/// objective_trace, final_l, ...}. The estimate is not included.
nlohmann::json to_json(const SolverReport& report, bool include_timing = true);

/// Called after every iteration with (k, f(M_k), current L).
using IterationCallback = std::function<void(int, double, double)>;

/// M_0 = Y on observed cells, (alpha + beta)/2 elsewhere, clamped into the box.
Matrix init_matrix(const ObservationSet& obs, const FeasibleRegion& region);

/// Quadratic model f(m_prev) + <m - m_prev, grad f(m_prev)> + t/2 ||m - m_prev||_F^2.
double q_model(const Matrix& m, const Matrix& m_prev, double t, const ObservationSet& obs);

/// Proximal gradient with step 1/L, L = alpha / beta^2, and projection onto
/// S by alternating projections.
SolverReport solve_pg(const ObservationSet& obs, const FeasibleRegion& region,
                      const SolverConfig& cfg, const IterationCallback& on_iter = {});

/// Accelerated proximal gradient with momentum (k-1)/(k+2).
SolverReport solve_apg(const ObservationSet& obs, const FeasibleRegion& region,
                       const SolverConfig& cfg, const IterationCallback& on_iter = {});

/// Gradient step, singular value shrinkage by lambda/L and box projection,
/// with L <- eta L backtracking until f(M_k) <= Q_L(M_k, M_{k-1}). Stops early
/// once |f(M_k) - Q_L(M_k, M_{k-1})| < 0.5/K.
SolverReport solve_pmlsv(const ObservationSet& obs, const FeasibleRegion& region,
                         const SolverConfig& cfg, const IterationCallback& on_iter = {});

/// Dispatches on cfg.algorithm.
SolverReport solve(const ObservationSet& obs, const FeasibleRegion& region,
                   const SolverConfig& cfg, const IterationCallback& on_iter = {});

} // namespace pmc
