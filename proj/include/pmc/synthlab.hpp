#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "pmc/core.hpp"
#include "pmc/solvers.hpp"

namespace pmc {

/// Synthetic problem description. The region carries d1, d2 and the target
/// rank r.
struct SynthesisSpec {
  FeasibleRegion region;
  /// Expected observation count m; cells are kept with probability m/(d1 d2).
  double mask_m = 0.0;
  std::uint64_t seed = 0;
};

struct Cell {
  int i = 0;
  int j = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Observed cells in row-major order.
using IndexSet = std::vector<Cell>;

/// Ground truth in S with rank <= r: a uniform rank-(r-1) product A B^T
/// affinely rescaled onto [beta, alpha]. Constant when beta == alpha.
Matrix make_low_rank(const SynthesisSpec& spec);

/// Bernoulli(m/(d1 d2)) mask. Throws Error{BadM} unless 0 < m <= d1 d2.
IndexSet sample_mask(int d1, int d2, double m, std::uint64_t seed);

/// Independent Poisson(truth(i,j)) count for every masked cell.
ObservationSet sample_poisson(const Matrix& truth, const IndexSet& mask, std::uint64_t seed,
                              double m_expected = 0.0);

struct TrialResult {
  double mse = 0.0;
  /// MSE of the constant (alpha + beta)/2 matrix against the same truth.
  double baseline_mse = 0.0;
  int m_realized = 0;
  SolverReport solver_report;
  std::uint64_t seed = 0;
};

/// Truth, mask and counts for trial `trial` of `spec`, each from its own
/// labeled substream of spec.seed.
struct SyntheticProblem {
  Matrix truth;
  IndexSet mask;
  ObservationSet observations;
};

SyntheticProblem make_problem(const SynthesisSpec& spec, std::uint64_t trial = 0);

/// Generates, solves and scores one synthetic instance.
TrialResult run_trial(const SynthesisSpec& spec, const SolverConfig& cfg, std::uint64_t trial = 0);

struct SweepRow {
  double m = 0.0;
  int trials = 0;
  double mean_mse = 0.0;
  /// Sample standard deviation (zero for a single trial).
  double std_mse = 0.0;
  double mean_iters = 0.0;
  double mean_wall_time = 0.0;
};

/// Runs `trials` trials per m. Trial k uses substream k of the template seed
/// for every m, so the rows share seeds.
std::vector<SweepRow> sweep_m(const SynthesisSpec& spec_template, const std::vector<double>& m_list,
                              int trials, const SolverConfig& cfg);

/// Header "m,trials,mean_mse,std_mse,mean_iters,mean_wall_time".
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Sample budget for verify_lemmas.
struct LemmaBudget {
  int scalar_pairs = 10'000;
  int matrix_pairs = 1'000;
  int tail_draws = 1'000'000;

  /// scalar = samples, matrix = samples/10, tail draws = 100 samples.
  static LemmaBudget from_samples(int samples);
};

struct InequalityCheck {
  int samples = 0;
  int violations = 0;
};

struct TailCheck {
  double lambda = 0.0;
  double t = 0.0;
  int draws = 0;
  int exceedances = 0;
  double empirical = 0.0;
  double bound = 0.0;
  double standard_error = 0.0;
  /// empirical <= bound + 3 standard errors
  bool ok = false;
};

struct LemmaReport {
  InequalityCheck kl_quadratic;    // D(x||y) <= (y - x)^2 / y
  InequalityCheck hellinger_mse;   // d_H^2(M, X) >= c * MSE(M, X)
  InequalityCheck kl_hellinger;    // D(x||y) >= d_H^2(x, y)
  std::vector<TailCheck> tail;

  /// True when a deterministic inequality failed somewhere.
  bool deterministic_violation() const;
  bool tail_ok() const;
};

/// Monte-Carlo check of the divergence inequalities and the Poisson tail
/// bound over random draws in the region's box. Tail checks run for
/// lambda in {0.5, 1, 3, alpha} (those <= alpha) and t in {t0, 1.5 t0, 2 t0}.
LemmaReport verify_lemmas(const FeasibleRegion& region, const LemmaBudget& budget, std::uint64_t seed);

nlohmann::json to_json(const LemmaReport& report);

} // namespace pmc
