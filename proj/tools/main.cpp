// Command-line front end for the gHartree simulator. Subcommands:
//   check-params        parameter admissibility report
//   simulate            conservation / virial / blowup-demo trajectory runs
//   blowup-scan         chirp ranges plus a verdict sweep over b
//   scatter-demo        pseudo-conformal scattering run and residuals
//   verify-inequalities weighted-inequality fixture suite
//
// Exit codes: 0 completed, 2 blowup-indicated, 3 resolution-lost,
// 4 non-finite, 64 config error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ghartree/io.hpp"
#include "ghartree/presets.hpp"

namespace {

using namespace ghartree;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
  auto* c = cmd->add_option("--config", opts.config_path, "config file (key = value)");
  if (config_required) c->required();
  cmd->add_option("--out", opts.out_dir, "output directory (overrides output.dir)");
  cmd->add_option("--seed", opts.seed, "RNG seed (overrides config)")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--jobs", opts.jobs, "worker fan-out for sweeps")
      ->check(CLI::PositiveNumber);
}

RunConfig load(const CommonOpts& opts) {
  RunConfig cfg = parse_config(slurp(opts.config_path));
  if (!opts.out_dir.empty()) cfg.output.dir = opts.out_dir;
  if (opts.seed_set) cfg.seed = opts.seed;
  return cfg;
}

int run_and_report(const RunConfig& cfg) {
  const auto result = run_experiment(cfg);
  std::cout << "preset " << to_string(cfg.preset) << " finished: halt = "
            << to_string(result.halt) << ", artifacts in " << result.outdir.string()
            << "\n";
  return result.exit_code;
}

int cmd_check_params(const CommonOpts& opts) {
  RunConfig cfg = load(opts);
  cfg.preset = Preset::params_report;
  const auto result = run_experiment(cfg);
  std::ifstream report(result.outdir / "report.txt");
  std::cout << report.rdbuf();
  return result.exit_code;
}

int cmd_simulate(const CommonOpts& opts) {
  RunConfig cfg = load(opts);
  if (cfg.preset != Preset::conservation && cfg.preset != Preset::virial &&
      cfg.preset != Preset::blowup_demo)
    throw ConfigError("simulate expects preset conservation, virial or blowup-demo");
  return run_and_report(cfg);
}

int cmd_scatter(const CommonOpts& opts) {
  RunConfig cfg = load(opts);
  if (cfg.preset != Preset::scatter_demo)
    throw ConfigError("scatter-demo expects preset scatter-demo");
  return run_and_report(cfg);
}

int cmd_verify_inequalities(const CommonOpts& opts) {
  RunConfig cfg;
  if (!opts.config_path.empty()) cfg = load(opts);
  cfg.preset = Preset::inequality_suite;
  if (!opts.out_dir.empty()) cfg.output.dir = opts.out_dir;
  if (opts.seed_set) cfg.seed = opts.seed;
  if (cfg.source_text.empty()) cfg.source_text = "preset = inequality-suite\n";
  try {
    const auto result = run_experiment(cfg);
    std::ifstream summary(result.outdir / "summary.txt");
    std::cout << summary.rdbuf();
    return 0;
  } catch (const std::runtime_error&) {
    std::ifstream summary(std::filesystem::path(cfg.output.dir) / "summary.txt");
    if (summary) std::cout << summary.rdbuf();
    std::cerr << "inequality suite FAILED\n";
    return 1;
  }
}

int cmd_blowup_scan(const CommonOpts& opts, double b_min, double b_max, int count) {
  RunConfig cfg = load(opts);
  const auto& P = cfg.require_params();
  std::filesystem::path outdir = cfg.output.dir;
  std::filesystem::create_directories(outdir);

  const Field v0 = build_initial_data(cfg);
  const auto ranges = chirp_b_ranges(v0, P);
  std::ostringstream txt;
  if (ranges.positive_interval)
    txt << "positive_interval = (" << ranges.positive_interval->first << ", "
        << ranges.positive_interval->second << ")\n";
  else
    txt << "positive_interval = empty\n";
  if (ranges.negative_threshold)
    txt << "negative_threshold = " << *ranges.negative_threshold << "\n";
  else
    txt << "negative_threshold = none\n";
  write_text_file(outdir / "branges.txt", txt.str());
  std::cout << txt.str();

  if (b_min == 0.0 && b_max == 0.0) {
    // Default sweep window spanning both branches.
    b_min = ranges.negative_threshold ? 2.0 * *ranges.negative_threshold : -10.0;
    b_max = ranges.positive_interval ? 1.2 * ranges.positive_interval->second : 10.0;
  }
  const auto rows = blowup_scan(cfg, b_min, b_max, count, opts.jobs, outdir);
  write_text_file(outdir / "bscan.csv", bscan_csv(rows));
  std::cout << "wrote " << rows.size() << " verdicts to "
            << (outdir / "bscan.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudospectral gHartree simulator and analysis toolkit"};
  app.require_subcommand(1);

  CommonOpts check_opts, sim_opts, scan_opts, scatter_opts, ineq_opts;
  double b_min = 0.0, b_max = 0.0;
  int scan_count = 41;

  auto* check = app.add_subcommand("check-params", "parameter admissibility report");
  add_common(check, check_opts);
  auto* sim = app.add_subcommand("simulate", "run a trajectory preset");
  add_common(sim, sim_opts);
  auto* scan = app.add_subcommand("blowup-scan", "chirp ranges and verdict sweep");
  add_common(scan, scan_opts);
  scan->add_option("--b-min", b_min, "sweep lower endpoint");
  scan->add_option("--b-max", b_max, "sweep upper endpoint");
  scan->add_option("--count", scan_count, "sweep points")->check(CLI::PositiveNumber);
  auto* scat = app.add_subcommand("scatter-demo", "pseudo-conformal scattering run");
  add_common(scat, scatter_opts);
  auto* ineq = app.add_subcommand("verify-inequalities", "weighted inequality suite");
  add_common(ineq, ineq_opts, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check_params(check_opts);
    if (sim->parsed()) return cmd_simulate(sim_opts);
    if (scan->parsed()) return cmd_blowup_scan(scan_opts, b_min, b_max, scan_count);
    if (scat->parsed()) return cmd_scatter(scatter_opts);
    if (ineq->parsed()) return cmd_verify_inequalities(ineq_opts);
  } catch (const ghartree::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 70;
  }
  return 0;
}
