#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ghartree/io.hpp"
#include "ghartree/presets.hpp"

using namespace ghartree;
namespace fs = std::filesystem;

namespace {

const std::string kMinimal =
    "preset = conservation\n"
    "params.N = 1\n"
    "params.p = 1.8\n"
    "params.gamma = 0.05\n"
    "params.mu = 1.0\n"
    "params.m = 0.55\n"
    "params.M = 6\n"
    "params.M0 = 4\n"
    "grid.L = 40\n"
    "grid.n = 256\n";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path("harness_test_out") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("minimal config parses with defaults") {
  const RunConfig cfg = parse_config(kMinimal);
  CHECK(cfg.preset == Preset::conservation);
  CHECK(cfg.params.has_value());
  CHECK(cfg.params->p() == doctest::Approx(1.8));
  CHECK(cfg.grid->npts[0] == 256);
  CHECK(cfg.integrator.dt == doctest::Approx(1e-3));
  CHECK(cfg.integrator.record_every == 10);
  CHECK(cfg.seed == 0);
}

TEST_CASE("comments and spacing are tolerated") {
  const RunConfig cfg = parse_config(
      "# full-line comment\n"
      "preset = params-report\n"
      "params.N = 1   # trailing comment\n"
      "params.p = 1.8\nparams.gamma = 0.05\nparams.m = 0.55\n"
      "params.M = 6\nparams.M0 = 4\n");
  CHECK(cfg.preset == Preset::params_report);
  CHECK(cfg.params->dim() == 1);
}

TEST_CASE("admissibility violations cite the condition id") {
  std::string bad = kMinimal;
  bad.replace(bad.find("params.p = 1.8"), 14, "params.p = 2.5");
  try {
    parse_config(bad);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("p.upper") != std::string::npos);
    CHECK(msg.find("p < 2") != std::string::npos);
  }
}

TEST_CASE("duplicate keys report both line numbers") {
  try {
    parse_config("preset = params-report\nparams.N = 1\nparams.N = 2\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2") != std::string::npos);
    CHECK(msg.find("3") != std::string::npos);
    CHECK(msg.find("params.N") != std::string::npos);
  }
}

TEST_CASE("unknown keys are rejected with their line number") {
  try {
    parse_config(kMinimal + "grid.spacing = 0.1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("grid.spacing") != std::string::npos);
    CHECK(msg.find("line 11") != std::string::npos);
  }
}

TEST_CASE("malformed values and missing blocks fail") {
  CHECK_THROWS_AS(parse_config("preset = warp\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("preset = conservation\n"), ConfigError);
  std::string bad = kMinimal;
  bad.replace(bad.find("grid.n = 256"), 12, "grid.n = many");
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
}

TEST_CASE("zero-mode policy and scatter index parse") {
  const RunConfig cfg =
      parse_config(kMinimal + "zero_mode = cellavg\nscatter.s = 0.75\n");
  CHECK(cfg.integrator.zero_mode == ZeroModePolicy::cellavg);
  CHECK(cfg.scatter_s == doctest::Approx(0.75));
  CHECK_THROWS_AS(parse_config(kMinimal + "zero_mode = drop\n"), ConfigError);
}

TEST_CASE("half chirp convention maps onto the quarter-phase code path") {
  const RunConfig quarter = parse_config(kMinimal + "params.b = 1.5\n");
  CHECK(quarter.params->b() == doctest::Approx(1.5));
  const RunConfig half = parse_config(
      kMinimal + "params.b = 1.5\nparams.chirp_convention = half\n");
  CHECK(half.params->b() == doctest::Approx(3.0));
  CHECK(half.params->chirp_convention() == ChirpConvention::half);
}

TEST_CASE("snapshot round-trip is bit identical") {
  const Grid g = make_grid(2, 12.5, 16);
  Field f = sample_gaussian(g, complexd(0.3, -0.7), 0.8);
  f.time = 1.25;
  const fs::path dir = fresh_dir("snapshot");
  write_snapshot(f, dir / "field.ghrt");
  const Field back = read_snapshot(dir / "field.ghrt");
  CHECK(back.grid == f.grid);
  CHECK(back.time == f.time);
  REQUIRE(back.values.size() == f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i)
    CHECK(back.values[i] == f.values[i]);

  CHECK_THROWS(read_snapshot(dir / "missing.ghrt"));

  write_text_file(dir / "junk.ghrt", "XXXX not a snapshot");
  CHECK_THROWS(read_snapshot(dir / "junk.ghrt"));
}

TEST_CASE("timeseries writer rejects empty input and emits the schema") {
  const fs::path dir = fresh_dir("timeseries");
  CHECK_THROWS_AS(write_timeseries({}, 1, dir / "x.csv"), std::invalid_argument);

  ObservableRecord rec;
  rec.t = 0.5;
  rec.mass = 2.0;
  write_timeseries({rec}, 1, dir / "ts.csv");
  const std::string text = slurp(dir / "ts.csv");
  CHECK(text.rfind(ObservableRecord::csv_header(1), 0) == 0);
  CHECK(text.find("0.5,2,") != std::string::npos);
}

TEST_CASE("params-report preset writes the report and manifest") {
  RunConfig cfg = parse_config(
      "preset = params-report\n"
      "params.N = 1\nparams.p = 1.8\nparams.gamma = 0.05\nparams.mu = 1.0\n"
      "params.m = 0.55\nparams.M = 6\nparams.M0 = 4\n");
  cfg.output.dir = fresh_dir("params_report").string();
  const auto result = run_experiment(cfg);
  CHECK(result.exit_code == 0);

  const std::string report = slurp(result.outdir / "report.txt");
  CHECK(report.find("wellposed") != std::string::npos);
  CHECK(report.find("M = 6") != std::string::npos);
  CHECK(report.find("M0 = 4") != std::string::npos);
  CHECK(report.find("suggested minimal orders: M0 = 2, M = 6") != std::string::npos);

  const std::string manifest = slurp(result.outdir / "MANIFEST");
  CHECK(manifest.find("status = complete") != std::string::npos);
  CHECK(manifest.find("zero_mode_policy = zero") != std::string::npos);
  CHECK(manifest.find("chirp_convention = exp(i*b*|x|^2/4)") != std::string::npos);
  CHECK(manifest.find("--- config ---") != std::string::npos);
}

TEST_CASE("linear conservation run: energy drift at roundoff, reproducible bytes") {
  std::string text = kMinimal;
  text.replace(text.find("params.mu = 1.0"), 15, "params.mu = 0.0");
  text +=
      "integrator.dt = 1e-3\n"
      "integrator.t_end = 0.05\n"
      "integrator.record_every = 10\n"
      "init.kind = gaussian\n"
      "init.amplitude = 1.0\n"
      "init.sigma = 0.05\n"
      "seed = 42\n";
  RunConfig cfg = parse_config(text);

  cfg.output.dir = fresh_dir("linear_a").string();
  const auto r1 = run_experiment(cfg);
  CHECK(r1.exit_code == 0);
  CHECK(r1.halt == HaltReason::completed);

  // energy column drift
  std::ifstream csv(r1.outdir / "timeseries.csv");
  std::string line;
  std::getline(csv, line);  // header
  double e0 = 0.0;
  bool first = true;
  while (std::getline(csv, line)) {
    std::istringstream row(line);
    std::string cell;
    for (int c = 0; c <= 2; ++c) std::getline(row, cell, ',');
    const double e = std::stod(cell);
    if (first) {
      e0 = e;
      first = false;
    }
    CHECK(std::abs(e - e0) <= 1e-10 * std::abs(e0));
  }

  cfg.output.dir = fresh_dir("linear_b").string();
  const auto r2 = run_experiment(cfg);
  CHECK(slurp(r1.outdir / "timeseries.csv") == slurp(r2.outdir / "timeseries.csv"));
}

TEST_CASE("snapshots appear at configured times through the preset") {
  std::string text = kMinimal +
                     "integrator.dt = 1e-2\n"
                     "integrator.t_end = 0.05\n"
                     "init.sigma = 0.05\n"
                     "output.snapshots = 0.0, 0.05\n";
  RunConfig cfg = parse_config(text);
  cfg.output.dir = fresh_dir("snaps").string();
  const auto r = run_experiment(cfg);
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(r.outdir / "snapshot_0.ghrt"));
  CHECK(fs::exists(r.outdir / "snapshot_1.ghrt"));
  const Field s0 = read_snapshot(r.outdir / "snapshot_0.ghrt");
  CHECK(s0.time == doctest::Approx(0.0));
  const Field s1 = read_snapshot(r.outdir / "snapshot_1.ghrt");
  CHECK(s1.time == doctest::Approx(0.05));
}

TEST_CASE("scatter-demo config requires a positive chirp") {
  std::string text = kMinimal;
  text.replace(text.find("preset = conservation"), 21, "preset = scatter-demo");
  CHECK_THROWS_AS(parse_config(text), ConfigError);
}

TEST_CASE("blowup scan rows are deterministic and order-independent of jobs") {
  RunConfig cfg = parse_config(
      "preset = blowup-demo\n"
      "params.N = 3\nparams.p = 1.9\nparams.gamma = 0.5\nparams.mu = 1.0\n"
      "params.m = 3\nparams.M = 13\nparams.M0 = 7\n"
      "grid.L = 16\ngrid.n = 32\n"
      "init.kind = gaussian\ninit.amplitude = 1.0\ninit.sigma = 1.0\n");
  const fs::path dir = fresh_dir("bscan");
  const auto serial = blowup_scan(cfg, -6.0, -3.0, 13, 1, dir);
  const auto parallel = blowup_scan(cfg, -6.0, -3.0, 13, 4, dir);
  REQUIRE(serial.size() == parallel.size());
  CHECK(bscan_csv(serial) == bscan_csv(parallel));
  CHECK(fs::exists(dir / "worker_0" / "partial.csv"));
  // strongly negative chirps satisfy the criterion for this profile
  CHECK(serial.front().satisfied);
}
