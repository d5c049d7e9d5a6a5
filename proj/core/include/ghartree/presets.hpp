#pragma once

#include <filesystem>
#include <string>

#include "ghartree/config.hpp"
#include "ghartree/criteria.hpp"
#include "ghartree/weighted_checks.hpp"

namespace ghartree {

inline constexpr const char* kCodeVersion = "0.1.0";

struct ExperimentResult {
  int exit_code = 0;
  HaltReason halt = HaltReason::completed;
  std::filesystem::path outdir;
};

/// Runs the preset named in the config and writes its artifacts (MANIFEST,
/// CSV time series, reports, snapshots) under config.output.dir. On internal
/// failure the partial outputs stay on disk, the MANIFEST records the
/// incompleteness, and the exception propagates.
ExperimentResult run_experiment(const RunConfig& config);

struct InequalityFixtureOutcome {
  RatioReport base;
  RatioReport refined;
  double refinement_drift = 0.0;  // |max_refined - max_base| / max_base
  bool stable = false;            // drift <= 0.2
  bool expected_bounded = true;   // the out-of-window probe is expected unbounded
};

struct InequalitySuiteResult {
  std::vector<InequalityFixtureOutcome> fixtures;
  double inside_window_max = 0.0;
  double outside_window_max = 0.0;
  bool contrast_ok = false;  // outside >= 3x inside
  bool all_passed = false;
  std::string summary_text;
};

/// The frozen fixture set behind the `verify-inequalities` CLI command and
/// the acceptance suite: weighted Riesz bounds inside/outside the A_{p,q}
/// window, Stein equivalence, interpolation, the homogeneous-weight bound
/// and the weighted propagator growth, each with a one-step grid refinement.
InequalitySuiteResult run_inequality_suite(std::uint64_t seed);

struct BScanRow {
  double b = 0.0;
  double E_u0 = 0.0;
  double V0 = 0.0;
  double Vt0 = 0.0;
  double x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool preconditions_ok = false;
  bool satisfied = false;
};

/// Chirp-parameter sweep for the `blowup-scan` command: evaluates the
/// blow-up verdict for `count` values of b in [b_min, b_max] on the
/// configured profile. `jobs` > 1 fans the sweep out across worker threads;
/// each worker writes its partial CSV under outdir/worker_<k>/.
std::vector<BScanRow> blowup_scan(const RunConfig& config, double b_min,
                                  double b_max, int count, int jobs,
                                  const std::filesystem::path& outdir);

std::string bscan_csv(const std::vector<BScanRow>& rows);

}  // namespace ghartree
