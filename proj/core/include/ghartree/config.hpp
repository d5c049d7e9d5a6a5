#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghartree/evolution.hpp"
#include "ghartree/grid.hpp"
#include "ghartree/params.hpp"

namespace ghartree {

enum class Preset {
  params_report,
  conservation,
  virial,
  blowup_demo,
  scatter_demo,
  inequality_suite,
};

const char* to_string(Preset p);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InitialDataSpec {
  enum class Kind { gaussian, power_weight };
  Kind kind = Kind::gaussian;
  double amplitude = 1.0;
  double sigma = 1.0;  // gaussian width parameter
  double m = 1.0;      // power-weight decay
  double chirp_b = 0.0;
  bool chirp_auto = false;  // pick b below the negative blow-up threshold
};

struct OutputOptions {
  std::string dir = "out";
  bool timeseries = true;
  bool reports = true;
  std::vector<double> snapshot_times;
};

struct RunConfig {
  Preset preset = Preset::params_report;
  std::optional<ModelParameters> params;
  std::optional<Grid> grid;
  IntegratorConfig integrator;
  InitialDataSpec init;
  OutputOptions output;
  std::uint64_t seed = 0;
  double blowup_margin = 0.15;  // distance below the negative threshold
  double scatter_s = 0.5;       // Sobolev index of the scattering residual
  std::string source_text;      // original config, echoed into the MANIFEST

  const ModelParameters& require_params() const;
  const Grid& require_grid() const;
};

/// Parses line-oriented `key = value` text with dotted section keys and `#`
/// comments. Unknown keys, duplicate keys and malformed values raise
/// ConfigError citing line numbers; admissibility violations cite the
/// params-module condition ids. The preset decides which regime must hold.
RunConfig parse_config(const std::string& text);

/// Builds the initial field described by `config.init` on `config.grid`
/// (chirp not applied; presets decide when to chirp).
Field build_initial_data(const RunConfig& config);

}  // namespace ghartree
