// pmc: command-line front end for Poisson matrix completion.
//
// Exit codes: 0 ok, 1 I/O, 2 validation, 3 solver failure, 4 verification
// violation.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmc/bounds.hpp"
#include "pmc/core.hpp"
#include "pmc/csv_io.hpp"
#include "pmc/imaging.hpp"
#include "pmc/likelihood.hpp"
#include "pmc/solvers.hpp"
#include "pmc/synthlab.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

enum Exit : int { kOk = 0, kIo = 1, kValidation = 2, kSolver = 3, kViolation = 4 };

int exit_code_for(pmc::ErrorCode code) {
  using pmc::ErrorCode;
  switch (code) {
  case ErrorCode::IoFailure:
  case ErrorCode::CorruptFile:
  case ErrorCode::UnsupportedFormat: return kIo;
  case ErrorCode::SvdFailure:
  case ErrorCode::NoConvergence:
  case ErrorCode::ProjectionFailure:
  case ErrorCode::BacktrackOverflow: return kSolver;
  default: return kValidation;
  }
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw pmc::Error(pmc::ErrorCode::IoFailure, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw pmc::Error(pmc::ErrorCode::IoFailure, "write failed: " + path.string());
}

fs::path prepare_out(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw pmc::Error(pmc::ErrorCode::IoFailure, "cannot create " + out + ": " + ec.message());
  return dir;
}

/// Canonical "--name value" list covering every option of `sub`, defaults
/// included, so a manifest replays the run without relying on defaults.
std::vector<std::string> canonical_args(const CLI::App& sub) {
  std::vector<std::string> args;
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_name();
    if (name == "--help" || name.empty()) continue;
    if (opt->get_expected_max() == 0) {
      if (opt->count() > 0) args.push_back(name);
      continue;
    }
    std::string value = opt->count() > 0 ? opt->results().front() : opt->get_default_str();
    if (value.empty()) continue;
    // Paths are stored absolute so a replay works from any directory.
    if (name == "--image" || name == "--obs" || name == "--truth" || name == "--out") {
      value = fs::absolute(value).lexically_normal().string();
    }
    args.push_back(name);
    args.push_back(value);
  }
  return args;
}

void write_manifest(const fs::path& dir, const CLI::App& sub, std::uint64_t seed,
                    const std::vector<std::string>& artifacts) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "pmc";
  j["version"] = kToolVersion;
  j["command"] = sub.get_name();
  j["args"] = canonical_args(sub);
  j["seed"] = seed;
  j["artifacts"] = artifacts;
  write_json(dir / "manifest.json", j);
}

pmc::FeasibleRegion region_from(int d1, int d2, double alpha, double beta, int rank) {
  pmc::FeasibleRegion region{d1, d2, alpha, beta, rank};
  pmc::validate_region(region);
  return region;
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
  int d1 = 0, d2 = 0, rank = 0;
  double alpha = 0, beta = 0, m = 0;
  std::uint64_t seed = 0;
  std::string out = "./run";
};

int run_simulate(const SimulateOpts& o, const CLI::App& sub) {
  const auto region = region_from(o.d1, o.d2, o.alpha, o.beta, o.rank);
  if (!(o.m > 0) || o.m > static_cast<double>(o.d1) * o.d2) {
    throw UsageError("--m must lie in (0, d1*d2]");
  }
  const pmc::SynthesisSpec spec{region, o.m, o.seed};
  const pmc::SyntheticProblem problem = pmc::make_problem(spec);
  const fs::path dir = prepare_out(o.out);
  pmc::write_matrix_csv(dir / "truth.csv", problem.truth);
  pmc::write_observations_csv(dir / "observations.csv", problem.observations);
  write_manifest(dir, sub, o.seed, {"truth.csv", "observations.csv"});
  std::cout << "wrote " << problem.observations.size() << " observations of a " << o.d1 << "x" << o.d2
            << " rank-" << o.rank << " matrix to " << dir.string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------- complete

struct CompleteOpts {
  std::string obs;
  std::string truth;
  int d1 = 0, d2 = 0, rank = 1;
  double alpha = 0, beta = 0;
  std::string algo = "pmlsv";
  int iters = 2000;
  double lambda = 0.1, l0 = 1e-4, eta = 1.1, proj_tol = pmc::kDefaultProjTol;
  bool baseline = false;
  int log_every = 0;
  std::uint64_t seed = 0;
  std::string out = "./run";
};

pmc::IterationCallback iteration_logger(int every) {
  if (every <= 0) return {};
  return [every](int k, double f, double l) {
    if (k % every == 0) std::cerr << "iter " << k << " f=" << std::setprecision(12) << f << " L=" << l << '\n';
  };
}

int run_complete(const CompleteOpts& o, const CLI::App& sub) {
  const auto algo = pmc::parse_algorithm(o.algo);
  if (!algo) throw UsageError("--algo must be one of pg, apg, pmlsv");
  if (o.baseline && o.truth.empty()) throw UsageError("--baseline requires --truth");

  // Grid shape: explicit flags, else the truth file, else the largest index.
  int d1 = o.d1, d2 = o.d2;
  pmc::Matrix truth;
  if (!o.truth.empty()) {
    truth = pmc::read_matrix_csv(fs::path(o.truth));
    if (d1 == 0) d1 = static_cast<int>(truth.rows());
    if (d2 == 0) d2 = static_cast<int>(truth.cols());
  }
  if (d1 == 0 || d2 == 0) {
    const pmc::ObservationSet probe = pmc::read_observations_csv(fs::path(o.obs), 1 << 30, 1 << 30);
    int max_i = -1, max_j = -1;
    for (const auto& s : probe.samples()) {
      max_i = std::max(max_i, s.i);
      max_j = std::max(max_j, s.j);
    }
    if (d1 == 0) d1 = max_i + 1;
    if (d2 == 0) d2 = max_j + 1;
  }
  const pmc::ObservationSet obs = pmc::read_observations_csv(fs::path(o.obs), d1, d2);
  const auto region = region_from(d1, d2, o.alpha, o.beta, o.rank);

  pmc::SolverConfig cfg;
  cfg.algorithm = *algo;
  cfg.max_iter = o.iters;
  cfg.lambda = o.lambda;
  cfg.l0 = o.l0;
  cfg.eta = o.eta;
  cfg.proj_tol = o.proj_tol;
  cfg.seed = o.seed;
  pmc::validate_config(cfg);

  const pmc::SolverReport report = pmc::solve(obs, region, cfg, iteration_logger(o.log_every));

  const fs::path dir = prepare_out(o.out);
  pmc::write_matrix_csv(dir / "estimate.csv", report.estimate);
  json j = pmc::to_json(report, false);
  j["schema_version"] = kSchemaVersion;
  j["d1"] = d1;
  j["d2"] = d2;
  j["observations"] = obs.size();
  if (truth.size() > 0) {
    pmc::require_shape(truth, d1, d2, "--truth");
    j["mse"] = pmc::mse_per_entry(truth, report.estimate);
    if (o.baseline) {
      const pmc::Matrix flat = pmc::Matrix::Constant(d1, d2, 0.5 * (o.alpha + o.beta));
      j["baseline_mse"] = pmc::mse_per_entry(truth, flat);
    }
  }
  write_json(dir / "report.json", j);
  write_json(dir / "timing.json", {{"wall_time_sec", report.wall_time}});
  write_manifest(dir, sub, o.seed, {"estimate.csv", "report.json", "timing.json"});

  std::cout << to_string(report.algorithm) << ": " << report.iterations_run << " iterations, "
            << to_string(report.termination) << ", f=" << std::setprecision(10)
            << (report.objective_trace.empty() ? 0.0 : report.objective_trace.back()) << '\n';
  if (j.contains("mse")) std::cout << "mse per entry " << j["mse"].get<double>() << '\n';
  if (j.contains("baseline_mse")) std::cout << "baseline mse  " << j["baseline_mse"].get<double>() << '\n';
  return report.termination == pmc::Termination::ProjectionFailure ? kSolver : kOk;
}

// ---------------------------------------------------------------- bounds

struct BoundsOpts {
  int d1 = 0, d2 = 0, rank = 0;
  double alpha = 0, beta = 0, m = 0;
  pmc::BoundConstants k;
  bool json_out = false;
  std::string out;
};

json bounds_json(const BoundsOpts& o, const pmc::FeasibleRegion& region) {
  const pmc::BoundReport up = pmc::upper_bound(region, o.m, o.k);
  const pmc::BoundReport low = pmc::lower_bound(region, o.m, o.k);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["upper"] = pmc::to_json(up);
  j["lower"] = pmc::to_json(low);
  if (up.valid && low.valid) {
    j["gap"] = pmc::bound_gap(region, o.m, o.k);
  } else {
    j["gap"] = nullptr;
  }
  return j;
}

std::string value_text(const json& v) {
  if (v.is_null()) return "n/a";
  std::ostringstream s;
  s << std::setprecision(8) << v.get<double>();
  return s.str();
}

int run_bounds(const BoundsOpts& o, const CLI::App& sub) {
  const auto region = region_from(o.d1, o.d2, o.alpha, o.beta, o.rank);
  if (!(o.m > 0)) throw UsageError("--m must be positive");
  pmc::validate_constants(o.k);
  const json j = bounds_json(o, region);
  if (o.json_out) {
    std::cout << j.dump(2) << '\n';
  } else {
    auto row = [](const char* name, const json& b) {
      std::cout << std::left << std::setw(8) << name << std::setw(16) << value_text(b["value"])
                << std::setw(12) << b["regime"].get<std::string>()
                << (b["valid"].get<bool>() ? "valid" : "invalid: " + b["reason"].get<std::string>()) << '\n';
    };
    std::cout << std::left << std::setw(8) << "bound" << std::setw(16) << "mse/entry" << std::setw(12)
              << "regime" << "status\n";
    row("upper", j["upper"]);
    row("lower", j["lower"]);
    std::cout << "gap     " << value_text(j["gap"]) << '\n';
  }
  if (!o.out.empty()) {
    const fs::path dir = prepare_out(o.out);
    write_json(dir / "bounds.json", j);
    write_manifest(dir, sub, 0, {"bounds.json"});
  }
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOpts {
  int samples = 10000;
  std::uint64_t seed = 0;
  double alpha = 3.0, beta = 1.0;
  int d1 = 8, d2 = 8;
  std::string out = "./run";
};

int run_verify(const VerifyOpts& o, const CLI::App& sub) {
  if (o.samples < 1) throw UsageError("--samples must be >= 1");
  const auto region = region_from(o.d1, o.d2, o.alpha, o.beta, 1);
  const pmc::LemmaReport report = pmc::verify_lemmas(region, pmc::LemmaBudget::from_samples(o.samples), o.seed);
  json j = pmc::to_json(report);
  j["schema_version"] = kSchemaVersion;
  const fs::path dir = prepare_out(o.out);
  write_json(dir / "lemmas.json", j);
  write_manifest(dir, sub, o.seed, {"lemmas.json"});
  std::cout << "kl <= quadratic:      " << report.kl_quadratic.violations << " / " << report.kl_quadratic.samples
            << " violations\n"
            << "hellinger >= c * mse: " << report.hellinger_mse.violations << " / "
            << report.hellinger_mse.samples << " violations\n"
            << "kl >= hellinger:      " << report.kl_hellinger.violations << " / " << report.kl_hellinger.samples
            << " violations\n"
            << "poisson tail:         " << (report.tail_ok() ? "ok" : "exceeded") << " (" << report.tail.size()
            << " checks)\n";
  return report.deterministic_violation() ? kViolation : kOk;
}

// ---------------------------------------------------------------- demo

struct DemoOpts {
  std::string image;
  double p = 0.8;
  double lambda = 0.1, l0 = 1e-4, eta = 1.1;
  int iters = 2000;
  std::uint64_t seed = 0;
  int patch = 8;
  double scale = 1.0;
  double beta = 1.0;
  double alpha = 0.0;
  int rank = 10;
  int log_every = 0;
  std::string out = "./run";
};

int run_demo(const DemoOpts& o, const CLI::App& sub) {
  if (!(o.p > 0.0) || o.p > 1.0) throw UsageError("--p must lie in (0, 1]");
  if (!(o.scale > 0.0)) throw UsageError("--scale must be positive");
  const pmc::Image source = pmc::read_image(fs::path(o.image));

  const pmc::PatchLayout layout{static_cast<int>(source.pixels.rows()), static_cast<int>(source.pixels.cols()),
                                o.patch, o.patch};
  pmc::validate_layout(layout);

  // Pixels become Poisson rates: scaled, then lifted to beta and capped at alpha.
  const pmc::Matrix scaled = source.pixels * o.scale;
  const double alpha = o.alpha > 0.0 ? o.alpha : std::max(scaled.maxCoeff(), o.beta);
  const pmc::Matrix rates_image = scaled.cwiseMax(o.beta).cwiseMin(alpha);
  const pmc::Matrix truth = pmc::patchify(rates_image, layout);
  const int d1 = static_cast<int>(truth.rows());
  const int d2 = static_cast<int>(truth.cols());
  const auto region = region_from(d1, d2, alpha, o.beta, std::min({o.rank, d1, d2}));

  const double m = o.p * d1 * d2;
  const pmc::IndexSet mask = pmc::sample_mask(d1, d2, m, o.seed);
  const pmc::ObservationSet obs = pmc::sample_poisson(truth, mask, o.seed, m);

  pmc::SolverConfig cfg;
  cfg.algorithm = pmc::Algorithm::PMLSV;
  cfg.max_iter = o.iters;
  cfg.lambda = o.lambda;
  cfg.l0 = o.l0;
  cfg.eta = o.eta;
  cfg.seed = o.seed;
  pmc::validate_config(cfg);
  const pmc::SolverReport report = pmc::solve(obs, region, cfg, iteration_logger(o.log_every));

  pmc::Matrix counts = pmc::Matrix::Zero(d1, d2);
  for (const auto& s : obs.samples()) counts(s.i, s.j) = static_cast<double>(s.y);
  const pmc::Matrix observed_image = pmc::mask_overlay(pmc::unpatchify(counts, layout), mask, layout);

  const fs::path dir = prepare_out(o.out);
  const int maxval = source.maxval;
  pmc::write_image({pmc::to_display(rates_image, o.beta, alpha, maxval), maxval}, dir / "truth.pgm");
  pmc::write_image({pmc::to_display(observed_image, o.beta, alpha, maxval), maxval}, dir / "observed.pgm");
  pmc::write_image({pmc::to_display(pmc::unpatchify(report.estimate, layout), o.beta, alpha, maxval), maxval},
                   dir / "recovered.pgm");

  const double mse = pmc::mse_per_entry(truth, report.estimate);
  const double baseline = pmc::mse_per_entry(truth, pmc::Matrix::Constant(d1, d2, 0.5 * (alpha + o.beta)));
  json j;
  j["schema_version"] = kSchemaVersion;
  j["p"] = o.p;
  j["m_expected"] = m;
  j["m_realized"] = obs.size();
  j["d1"] = d1;
  j["d2"] = d2;
  j["alpha"] = alpha;
  j["beta"] = o.beta;
  j["mse"] = mse;
  j["baseline_mse"] = baseline;
  j["solver"] = pmc::to_json(report, false);
  write_json(dir / "report.json", j);
  write_json(dir / "timing.json", {{"wall_time_sec", report.wall_time}});
  write_manifest(dir, sub, o.seed,
                 {"truth.pgm", "observed.pgm", "recovered.pgm", "report.json", "timing.json"});

  std::cout << "p=" << o.p << " observed " << obs.size() << "/" << d1 * d2 << " entries; "
            << report.iterations_run << " iterations (" << to_string(report.termination) << ") in "
            << std::setprecision(4) << report.wall_time << " s; mse " << std::setprecision(6) << mse
            << " vs baseline " << baseline << '\n';
  return kOk;
}

// ---------------------------------------------------------------- app

int run(int argc, const char* const* argv);

int run_replay(const std::string& manifest_path, const std::string& out_override) {
  std::ifstream in(manifest_path);
  if (!in) throw pmc::Error(pmc::ErrorCode::IoFailure, "cannot open " + manifest_path);
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw pmc::Error(pmc::ErrorCode::CorruptFile, std::string("bad manifest: ") + e.what());
  }
  if (!manifest.contains("command") || !manifest.contains("args")) {
    throw pmc::Error(pmc::ErrorCode::CorruptFile, "manifest lacks command/args");
  }
  std::vector<std::string> args{"pmc", manifest["command"].get<std::string>()};
  const auto recorded = manifest["args"].get<std::vector<std::string>>();
  for (std::size_t i = 0; i < recorded.size(); ++i) {
    args.push_back(recorded[i]);
    if (recorded[i] == "--out" && i + 1 < recorded.size() && !out_override.empty()) {
      args.push_back(out_override);
      ++i;
    }
  }
  std::vector<const char*> raw;
  for (const auto& a : args) raw.push_back(a.c_str());
  return run(static_cast<int>(raw.size()), raw.data());
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Poisson matrix completion: simulate, complete, bound and verify"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  SimulateOpts sim;
  auto* simulate = app.add_subcommand("simulate", "Generate a low-rank truth and Poisson observations");
  simulate->add_option("--d1", sim.d1, "Rows")->required();
  simulate->add_option("--d2", sim.d2, "Columns")->required();
  simulate->add_option("--rank", sim.rank, "Rank of the ground truth")->required();
  simulate->add_option("--alpha", sim.alpha, "Entry upper bound")->required();
  simulate->add_option("--beta", sim.beta, "Entry lower bound")->required();
  simulate->add_option("--m", sim.m, "Expected number of observations")->required();
  simulate->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
  simulate->add_option("--out", sim.out, "Output directory")->capture_default_str();

  CompleteOpts comp;
  auto* complete = app.add_subcommand("complete", "Estimate the intensity matrix from observations");
  complete->add_option("--obs", comp.obs, "Observation CSV (i,j,y)")->required();
  complete->add_option("--truth", comp.truth, "Ground-truth CSV for scoring");
  complete->add_option("--d1", comp.d1, "Rows (default: from --truth or max index)")->capture_default_str();
  complete->add_option("--d2", comp.d2, "Columns (default: from --truth or max index)")->capture_default_str();
  complete->add_option("--rank", comp.rank, "Rank budget r")->capture_default_str();
  complete->add_option("--alpha", comp.alpha, "Entry upper bound")->required();
  complete->add_option("--beta", comp.beta, "Entry lower bound")->required();
  complete->add_option("--algo", comp.algo, "pg | apg | pmlsv")->capture_default_str();
  complete->add_option("--iters", comp.iters, "Maximum iterations K")->capture_default_str();
  complete->add_option("--lambda", comp.lambda, "Nuclear-norm weight (pmlsv)")->capture_default_str();
  complete->add_option("--l0", comp.l0, "Initial L (pmlsv)")->capture_default_str();
  complete->add_option("--eta", comp.eta, "Backtracking factor (pmlsv)")->capture_default_str();
  complete->add_option("--proj-tol", comp.proj_tol, "Alternating projection tolerance (pg/apg)")
      ->capture_default_str();
  complete->add_flag("--baseline", comp.baseline, "Also report the constant (alpha+beta)/2 baseline MSE");
  complete->add_option("--log-every", comp.log_every, "Log every N iterations to stderr")->capture_default_str();
  complete->add_option("--seed", comp.seed, "Recorded in the manifest")->capture_default_str();
  complete->add_option("--out", comp.out, "Output directory")->capture_default_str();

  BoundsOpts bnd;
  auto* bounds = app.add_subcommand("bounds", "Evaluate the upper and lower MSE bounds");
  bounds->add_option("--d1", bnd.d1, "Rows")->required();
  bounds->add_option("--d2", bnd.d2, "Columns")->required();
  bounds->add_option("--rank", bnd.rank, "Rank r")->required();
  bounds->add_option("--alpha", bnd.alpha, "Entry upper bound")->required();
  bounds->add_option("--beta", bnd.beta, "Entry lower bound")->required();
  bounds->add_option("--m", bnd.m, "Expected number of observations")->required();
  bounds->add_option("--c-prime", bnd.k.c_prime, "Upper-bound constant C'");
  bounds->add_option("--c0", bnd.k.c0, "Lower-bound constant C0");
  bounds->add_option("--c1", bnd.k.c1, "Lower-bound constant C1");
  bounds->add_option("--c2", bnd.k.c2, "Lower-bound constant C2");
  bounds->add_flag("--json", bnd.json_out, "Print JSON instead of a table");
  bounds->add_option("--out", bnd.out, "Also write bounds.json and manifest.json here");

  VerifyOpts ver;
  auto* verify = app.add_subcommand("verify", "Monte-Carlo check of the divergence and tail inequalities");
  verify->add_option("--samples", ver.samples, "Scalar pairs (matrix pairs = /10, tail draws = x100)")
      ->capture_default_str();
  verify->add_option("--seed", ver.seed, "RNG seed")->capture_default_str();
  verify->add_option("--alpha", ver.alpha, "Entry upper bound")->capture_default_str();
  verify->add_option("--beta", ver.beta, "Entry lower bound")->capture_default_str();
  verify->add_option("--d1", ver.d1, "Rows of the random matrix pairs")->capture_default_str();
  verify->add_option("--d2", ver.d2, "Columns of the random matrix pairs")->capture_default_str();
  verify->add_option("--out", ver.out, "Output directory")->capture_default_str();

  DemoOpts dem;
  auto* demo = app.add_subcommand("demo", "Patch-based image recovery with PMLSV");
  demo->add_option("--image", dem.image, "Grayscale PGM (or CSV) image")->required();
  demo->add_option("--p", dem.p, "Expected observed fraction in (0,1]")->capture_default_str();
  demo->add_option("--lambda", dem.lambda, "Nuclear-norm weight")->capture_default_str();
  demo->add_option("--iters", dem.iters, "Maximum iterations K")->capture_default_str();
  demo->add_option("--l0", dem.l0, "Initial L")->capture_default_str();
  demo->add_option("--eta", dem.eta, "Backtracking factor")->capture_default_str();
  demo->add_option("--seed", dem.seed, "RNG seed")->capture_default_str();
  demo->add_option("--patch", dem.patch, "Square patch size")->capture_default_str();
  demo->add_option("--scale", dem.scale, "Multiplier from pixel value to Poisson rate")->capture_default_str();
  demo->add_option("--beta", dem.beta, "Rate floor")->capture_default_str();
  demo->add_option("--alpha", dem.alpha, "Rate ceiling (0: largest scaled pixel)")->capture_default_str();
  demo->add_option("--rank", dem.rank, "Rank budget recorded in the region")->capture_default_str();
  demo->add_option("--log-every", dem.log_every, "Log every N iterations to stderr")->capture_default_str();
  demo->add_option("--out", dem.out, "Output directory")->capture_default_str();

  std::string manifest_path, replay_out;
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest.json");
  replay->add_option("--manifest", manifest_path, "Path to manifest.json")->required();
  replay->add_option("--out", replay_out, "Write to this directory instead of the recorded one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*simulate) return run_simulate(sim, *simulate);
    if (*complete) return run_complete(comp, *complete);
    if (*bounds) return run_bounds(bnd, *bounds);
    if (*verify) return run_verify(ver, *verify);
    if (*demo) return run_demo(dem, *demo);
    if (*replay) return run_replay(manifest_path, replay_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const pmc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kValidation;
}

} // namespace

int main(int argc, char** argv) {
  return run(argc, argv);
}
