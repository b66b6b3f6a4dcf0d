#include "pmc/synthlab.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "pmc/bounds.hpp"
#include "pmc/csv_io.hpp"
#include "pmc/likelihood.hpp"
#include "pmc/random.hpp"

namespace pmc {
namespace {

constexpr double kLemmaRelSlack = 1e-12;

Matrix uniform_matrix(Rng& rng, int rows, int cols, double lo, double hi) {
  Matrix x(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) x(i, j) = rng.uniform(lo, hi);
  }
  return x;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - mu) * (x - mu);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

} // namespace

Matrix make_low_rank(const SynthesisSpec& spec) {
  const FeasibleRegion& region = spec.region;
  validate_region(region);
  if (region.alpha == region.beta) return Matrix::Constant(region.d1, region.d2, region.alpha);
  if (region.r < 2) {
    throw Error(ErrorCode::RankInfeasible, "r >= 2 needed: one rank is spent on the constant offset");
  }

  Rng rng = Rng::substream(spec.seed, "truth");
  const Matrix a = uniform_matrix(rng, region.d1, region.r - 1, 0.0, 1.0);
  const Matrix b = uniform_matrix(rng, region.d2, region.r - 1, 0.0, 1.0);
  const Matrix p = a * b.transpose();
  const double lo = p.minCoeff();
  const double hi = p.maxCoeff();
  if (!(hi > lo)) throw Error(ErrorCode::DegenerateRange, "factor product is constant");

  const Matrix unit = (p.array() - lo) / (hi - lo);
  // The affine image of [lo, hi] is exactly [beta, alpha], which already
  // implies the nuclear bound; the check guards the invariant anyway.
  double span = region.alpha - region.beta;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix m = (region.beta + span * unit.array()).matrix();
    m = m.cwiseMax(region.beta).cwiseMin(region.alpha);
    if (membership(m, region).feasible()) return m;
    span *= 0.9;
  }
  throw Error(ErrorCode::DegenerateRange, "could not place ground truth inside S");
}

IndexSet sample_mask(int d1, int d2, double m, std::uint64_t seed) {
  if (d1 < 1 || d2 < 1) throw Error(ErrorCode::BadShape, "mask grid must be at least 1x1");
  const double cells = static_cast<double>(d1) * d2;
  if (!(m > 0.0) || m > cells) {
    throw Error(ErrorCode::BadM, "m must lie in (0, d1*d2], got " + std::to_string(m));
  }
  const double prob = m / cells;
  Rng rng = Rng::substream(seed, "mask");
  IndexSet mask;
  mask.reserve(static_cast<std::size_t>(m * 1.1) + 16);
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d2; ++j) {
      // Always consume one draw per cell so the stream layout is fixed.
      const double u = rng.uniform();
      if (u < prob) mask.push_back(Cell{i, j});
    }
  }
  return mask;
}

ObservationSet sample_poisson(const Matrix& truth, const IndexSet& mask, std::uint64_t seed,
                              double m_expected) {
  Rng rng = Rng::substream(seed, "counts");
  std::vector<Sample> samples;
  samples.reserve(mask.size());
  for (const Cell& c : mask) {
    if (c.i < 0 || c.i >= truth.rows() || c.j < 0 || c.j >= truth.cols()) {
      throw Error(ErrorCode::ShapeMismatch, "mask cell outside truth matrix");
    }
    const double lambda = truth(c.i, c.j);
    if (!(lambda > 0.0)) {
      throw Error(ErrorCode::NonPositiveIntensity,
                  "intensity at (" + std::to_string(c.i) + "," + std::to_string(c.j) + ") is not positive");
    }
    samples.push_back(Sample{c.i, c.j, rng.poisson(lambda)});
  }
  return ObservationSet(static_cast<int>(truth.rows()), static_cast<int>(truth.cols()),
                        std::move(samples), m_expected);
}

SyntheticProblem make_problem(const SynthesisSpec& spec, std::uint64_t trial) {
  const std::uint64_t seed = trial == 0 ? spec.seed : Rng::substream(spec.seed, "trial", trial).next_u64();
  SynthesisSpec trial_spec = spec;
  trial_spec.seed = seed;
  SyntheticProblem problem;
  problem.truth = make_low_rank(trial_spec);
  problem.mask = sample_mask(spec.region.d1, spec.region.d2, spec.mask_m, seed);
  problem.observations = sample_poisson(problem.truth, problem.mask, seed, spec.mask_m);
  return problem;
}

TrialResult run_trial(const SynthesisSpec& spec, const SolverConfig& cfg, std::uint64_t trial) {
  const SyntheticProblem problem = make_problem(spec, trial);
  TrialResult result;
  result.seed = spec.seed;
  result.m_realized = static_cast<int>(problem.mask.size());
  result.solver_report = solve(problem.observations, spec.region, cfg);
  result.mse = mse_per_entry(problem.truth, result.solver_report.estimate);
  const Matrix baseline =
      Matrix::Constant(spec.region.d1, spec.region.d2, 0.5 * (spec.region.alpha + spec.region.beta));
  result.baseline_mse = mse_per_entry(problem.truth, baseline);
  return result;
}

std::vector<SweepRow> sweep_m(const SynthesisSpec& spec_template, const std::vector<double>& m_list,
                              int trials, const SolverConfig& cfg) {
  if (trials < 1) throw Error(ErrorCode::BadConfig, "trials must be >= 1");
  if (!std::is_sorted(m_list.begin(), m_list.end())) {
    throw Error(ErrorCode::BadM, "m_list must be increasing");
  }
  std::vector<SweepRow> rows;
  for (double m : m_list) {
    SynthesisSpec spec = spec_template;
    spec.mask_m = m;
    std::vector<double> mse, iters, wall;
    for (int k = 0; k < trials; ++k) {
      // Trial indices start at 1 so that no trial reuses the bare seed.
      const TrialResult t = run_trial(spec, cfg, static_cast<std::uint64_t>(k) + 1);
      mse.push_back(t.mse);
      iters.push_back(t.solver_report.iterations_run);
      wall.push_back(t.solver_report.wall_time);
    }
    rows.push_back(SweepRow{m, trials, mean(mse), sample_std(mse), mean(iters), mean(wall)});
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "m,trials,mean_mse,std_mse,mean_iters,mean_wall_time\n";
  for (const SweepRow& r : rows) {
    out << format_double(r.m) << ',' << r.trials << ',' << format_double(r.mean_mse) << ','
        << format_double(r.std_mse) << ',' << format_double(r.mean_iters) << ','
        << format_double(r.mean_wall_time) << '\n';
  }
}

LemmaBudget LemmaBudget::from_samples(int samples) {
  samples = std::max(samples, 1);
  return LemmaBudget{samples, std::max(samples / 10, 1), samples * 100};
}

bool LemmaReport::deterministic_violation() const {
  return kl_quadratic.violations > 0 || hellinger_mse.violations > 0 || kl_hellinger.violations > 0;
}

bool LemmaReport::tail_ok() const {
  return std::all_of(tail.begin(), tail.end(), [](const TailCheck& t) { return t.ok; });
}

LemmaReport verify_lemmas(const FeasibleRegion& region, const LemmaBudget& budget, std::uint64_t seed) {
  validate_region(region);
  LemmaReport report;

  Rng scalars = Rng::substream(seed, "lemma-scalars");
  for (int n = 0; n < budget.scalar_pairs; ++n) {
    const double x = scalars.uniform(region.beta, region.alpha);
    const double y = scalars.uniform(region.beta, region.alpha);
    const double d = kl(x, y);
    const double quad = (y - x) * (y - x) / y;
    if (d > quad * (1.0 + kLemmaRelSlack)) ++report.kl_quadratic.violations;
    if (hellinger_sq(x, y) > d * (1.0 + kLemmaRelSlack)) ++report.kl_hellinger.violations;
  }
  report.kl_quadratic.samples = budget.scalar_pairs;
  report.kl_hellinger.samples = budget.scalar_pairs;

  const double floor = hellinger_mse_floor(region);
  Rng matrices = Rng::substream(seed, "lemma-matrices");
  for (int n = 0; n < budget.matrix_pairs; ++n) {
    const Matrix m = uniform_matrix(matrices, region.d1, region.d2, region.beta, region.alpha);
    const Matrix x = uniform_matrix(matrices, region.d1, region.d2, region.beta, region.alpha);
    if (hellinger_sq_matrix(m, x) < floor * mse_per_entry(m, x) * (1.0 - kLemmaRelSlack)) {
      ++report.hellinger_mse.violations;
    }
  }
  report.hellinger_mse.samples = budget.matrix_pairs;

  const double t0 = poisson_tail_threshold(region.alpha);
  std::vector<double> lambdas;
  for (double lambda : {0.5, 1.0, 3.0, region.alpha}) {
    if (lambda <= region.alpha && std::find(lambdas.begin(), lambdas.end(), lambda) == lambdas.end()) {
      lambdas.push_back(lambda);
    }
  }
  std::uint64_t stream = 0;
  for (double lambda : lambdas) {
    for (double t : {t0, 1.5 * t0, 2.0 * t0}) {
      Rng draws = Rng::substream(seed, "lemma-tail", stream++);
      TailCheck check;
      check.lambda = lambda;
      check.t = t;
      check.draws = budget.tail_draws;
      for (int n = 0; n < budget.tail_draws; ++n) {
        if (static_cast<double>(draws.poisson(lambda)) - lambda >= t) ++check.exceedances;
      }
      const double n = std::max(check.draws, 1);
      check.empirical = check.exceedances / n;
      check.bound = tail_bound(t);
      check.standard_error = std::sqrt(check.empirical * (1.0 - check.empirical) / n);
      check.ok = check.empirical <= check.bound + 3.0 * check.standard_error;
      report.tail.push_back(check);
    }
  }
  return report;
}

nlohmann::json to_json(const LemmaReport& report) {
  auto ineq = [](const InequalityCheck& c) {
    return nlohmann::json{{"samples", c.samples}, {"violations", c.violations}};
  };
  nlohmann::json tail = nlohmann::json::array();
  for (const TailCheck& t : report.tail) {
    tail.push_back({{"lambda", t.lambda},
                    {"t", t.t},
                    {"draws", t.draws},
                    {"exceedances", t.exceedances},
                    {"empirical", t.empirical},
                    {"bound", t.bound},
                    {"standard_error", t.standard_error},
                    {"ok", t.ok}});
  }
  return {{"kl_quadratic", ineq(report.kl_quadratic)},
          {"hellinger_mse", ineq(report.hellinger_mse)},
          {"kl_hellinger", ineq(report.kl_hellinger)},
          {"tail", tail},
          {"deterministic_violation", report.deterministic_violation()},
          {"tail_ok", report.tail_ok()}};
}

} // namespace pmc
