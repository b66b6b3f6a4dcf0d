#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pmc/bounds.hpp"
#include "pmc/csv_io.hpp"

using namespace pmc;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pmc_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "pmc_cli_capture";
  fs::create_directories(dir);
  const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = std::string("\"") + PMC_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  return json::parse(in);
}

const std::string kSimulate = "simulate --d1 10 --d2 8 --rank 2 --alpha 9 --beta 1 --m 40 --seed 7";

} // namespace

TEST_CASE("simulate writes parseable files") {
  const fs::path dir = scratch("simulate");
  const CliResult r = run_cli(kSimulate + " --out " + dir.string());
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "truth.csv"));
  CHECK(fs::exists(dir / "observations.csv"));
  CHECK(fs::exists(dir / "manifest.json"));

  const Matrix truth = read_matrix_csv(dir / "truth.csv");
  CHECK(truth.rows() == 10);
  CHECK(truth.cols() == 8);
  const ObservationSet obs = read_observations_csv(dir / "observations.csv", 10, 8);
  CHECK(obs.size() > 0);
  std::ostringstream again;
  write_observations_csv(again, obs);
  CHECK(again.str() == slurp(dir / "observations.csv"));

  const json manifest = read_json(dir / "manifest.json");
  CHECK(manifest["command"] == "simulate");
  CHECK(manifest["seed"] == 7);
  CHECK(manifest["schema_version"] == 1);
}

TEST_CASE("simulate is deterministic") {
  const fs::path a = scratch("sim_a");
  const fs::path b = scratch("sim_b");
  REQUIRE(run_cli(kSimulate + " --out " + a.string()).code == 0);
  REQUIRE(run_cli(kSimulate + " --out " + b.string()).code == 0);
  CHECK(slurp(a / "truth.csv") == slurp(b / "truth.csv"));
  CHECK(slurp(a / "observations.csv") == slurp(b / "observations.csv"));
}

TEST_CASE("simulate rejects m above d1 d2") {
  const CliResult r = run_cli("simulate --d1 4 --d2 4 --rank 2 --alpha 9 --beta 1 --m 17 --out " +
                              scratch("sim_bad").string());
  CHECK(r.code == 2);
  CHECK(r.err.find("--m") != std::string::npos);
}

TEST_CASE("complete beats the baseline on the simulated case") {
  const fs::path dir = scratch("complete");
  REQUIRE(run_cli(kSimulate + " --out " + dir.string()).code == 0);
  for (const std::string algo : {"pg", "apg", "pmlsv"}) {
    const fs::path out = dir / algo;
    const CliResult r = run_cli("complete --obs " + (dir / "observations.csv").string() + " --truth " +
                                (dir / "truth.csv").string() + " --rank 2 --alpha 9 --beta 1 --algo " + algo +
                                " --iters 300 --baseline --out " + out.string());
    REQUIRE(r.code == 0);
    const json report = read_json(out / "report.json");
    CHECK(report["mse"].get<double>() < report["baseline_mse"].get<double>());
    CHECK(report["algorithm"] == algo);
    CHECK(read_matrix_csv(out / "estimate.csv").rows() == 10);
    CHECK_FALSE(report.contains("wall_time_sec"));
    CHECK(read_json(out / "timing.json").contains("wall_time_sec"));
  }
}

TEST_CASE("complete usage errors") {
  CHECK(run_cli("complete --rank 2 --alpha 9 --beta 1").code == 2);
  CHECK(run_cli("complete --obs /nonexistent/obs.csv --rank 2 --alpha 9 --beta 1 --d1 3 --d2 3 --out " +
                scratch("complete_missing").string())
            .code == 1);
  CHECK(run_cli("complete --obs x.csv --rank 2 --alpha 9 --beta 1 --algo sgd").code == 2);
}

TEST_CASE("bounds JSON equals the module") {
  const CliResult r = run_cli("bounds --d1 64 --d2 48 --rank 4 --alpha 9 --beta 1 --m 900 --json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  const FeasibleRegion region{64, 48, 9.0, 1.0, 4};
  CHECK(j["upper"] == to_json(upper_bound(region, 900.0)));
  CHECK(j["lower"] == to_json(lower_bound(region, 900.0)));
}

TEST_CASE("bounds flags and table output") {
  const CliResult r3 = run_cli("bounds --d1 2048 --d2 2048 --rank 3 --alpha 1 --beta 0.5 --m 100 --json");
  REQUIRE(r3.code == 0);
  const json j = json::parse(r3.out);
  CHECK(j["lower"]["valid"] == false);
  CHECK(j["lower"]["reason"].get<std::string>().find("r >= 4") != std::string::npos);

  const CliResult table = run_cli("bounds --d1 2048 --d2 2048 --rank 4 --alpha 1 --beta 0.5 --m 100");
  REQUIRE(table.code == 0);
  CHECK(table.out.find("upper") != std::string::npos);
  CHECK(table.out.find("lower") != std::string::npos);
  CHECK(table.out.find("gap") != std::string::npos);
  CHECK_FALSE(json::accept(table.out));

  BoundConstants k;
  k.c_prime = 2.0;
  const CliResult custom = run_cli("bounds --d1 64 --d2 48 --rank 4 --alpha 9 --beta 1 --m 900 --c-prime 2 --json");
  CHECK(json::parse(custom.out)["upper"] == to_json(upper_bound({64, 48, 9.0, 1.0, 4}, 900.0, k)));

  CHECK(run_cli("bounds --d1 64 --d2 48 --rank 4 --alpha 1 --beta 2 --m 900").code == 2);
}

TEST_CASE("verify") {
  const fs::path dir = scratch("verify");
  const CliResult tiny = run_cli("verify --samples 1 --out " + dir.string());
  CHECK(tiny.code == 0);
  const CliResult r = run_cli("verify --samples 500 --seed 3 --out " + dir.string());
  REQUIRE(r.code == 0);
  const json first = read_json(dir / "lemmas.json");
  CHECK(first["kl_quadratic"]["violations"] == 0);
  REQUIRE(run_cli("verify --samples 500 --seed 3 --out " + dir.string()).code == 0);
  CHECK(read_json(dir / "lemmas.json") == first);
}

TEST_CASE("demo with a missing image") {
  const CliResult r = run_cli("demo --image /nonexistent/flare.pgm --out " + scratch("demo_missing").string());
  CHECK(r.code == 1);
}

TEST_CASE("demo writes images and a report") {
  const fs::path dir = scratch("demo");
  const CliResult r =
      run_cli("demo --image " + std::string(PMC_TEST_DATA_DIR) + "/flare48.pgm --p 0.8 --iters 200 --out " + dir.string());
  REQUIRE(r.code == 0);
  for (const char* f : {"truth.pgm", "observed.pgm", "recovered.pgm", "report.json", "manifest.json"}) {
    CHECK(fs::exists(dir / f));
  }
  const json report = read_json(dir / "report.json");
  CHECK(report["d1"] == 64);
  CHECK(report["d2"] == 36);
  CHECK(report["mse"].get<double>() < report["baseline_mse"].get<double>());
}

TEST_CASE("replay reproduces outputs") {
  const fs::path dir = scratch("replay");
  REQUIRE(run_cli(kSimulate + " --out " + (dir / "sim").string()).code == 0);
  REQUIRE(run_cli("complete --obs " + (dir / "sim" / "observations.csv").string() +
                  " --rank 2 --alpha 9 --beta 1 --algo apg --iters 50 --out " + (dir / "run").string())
              .code == 0);
  const std::string estimate = slurp(dir / "run" / "estimate.csv");
  const std::string report = slurp(dir / "run" / "report.json");
  const std::string manifest = slurp(dir / "run" / "manifest.json");

  REQUIRE(run_cli("replay --manifest " + (dir / "run" / "manifest.json").string()).code == 0);
  CHECK(slurp(dir / "run" / "estimate.csv") == estimate);
  CHECK(slurp(dir / "run" / "report.json") == report);
  CHECK(slurp(dir / "run" / "manifest.json") == manifest);

  REQUIRE(run_cli("replay --manifest " + (dir / "run" / "manifest.json").string() + " --out " +
                  (dir / "again").string())
              .code == 0);
  CHECK(slurp(dir / "again" / "estimate.csv") == estimate);
  CHECK(slurp(dir / "again" / "report.json") == report);

  CHECK(run_cli("replay --manifest " + (dir / "missing.json").string()).code == 1);
}
