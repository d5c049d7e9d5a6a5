#include "ghartree/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace ghartree {

namespace {

struct RawEntry {
  std::string value;
  int line = 0;
};

struct RawConfig {
  std::map<std::string, RawEntry> entries;
  std::vector<std::string> consumed;

  const RawEntry* find(const std::string& key) {
    consumed.push_back(key);
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  }
};

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

RawConfig tokenize(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail("line " + std::to_string(lineno) + ": expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      fail("line " + std::to_string(lineno) + ": empty key or value");
    auto [it, inserted] = raw.entries.emplace(key, RawEntry{value, lineno});
    if (!inserted)
      fail("duplicate key `" + key + "` on lines " +
           std::to_string(it->second.line) + " and " + std::to_string(lineno));
  }
  return raw;
}

double parse_double(const std::string& key, const RawEntry& e) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    fail("line " + std::to_string(e.line) + ": `" + key +
         "` expects a number, got `" + e.value + "`");
  }
}

long parse_int(const std::string& key, const RawEntry& e) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    fail("line " + std::to_string(e.line) + ": `" + key +
         "` expects an integer, got `" + e.value + "`");
  }
}

bool parse_bool(const std::string& key, const RawEntry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  fail("line " + std::to_string(e.line) + ": `" + key +
       "` expects true or false, got `" + e.value + "`");
}

std::vector<double> parse_double_list(const std::string& key, const RawEntry& e) {
  std::vector<double> out;
  std::istringstream in(e.value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      fail("line " + std::to_string(e.line) + ": `" + key +
           "` expects comma-separated numbers");
    }
  }
  return out;
}

Preset parse_preset(const RawEntry& e) {
  const std::string& v = e.value;
  if (v == "params-report") return Preset::params_report;
  if (v == "conservation") return Preset::conservation;
  if (v == "virial") return Preset::virial;
  if (v == "blowup-demo") return Preset::blowup_demo;
  if (v == "scatter-demo") return Preset::scatter_demo;
  if (v == "inequality-suite") return Preset::inequality_suite;
  fail("line " + std::to_string(e.line) + ": unknown preset `" + v + "`");
}

}  // namespace

const char* to_string(Preset p) {
  switch (p) {
    case Preset::params_report: return "params-report";
    case Preset::conservation: return "conservation";
    case Preset::virial: return "virial";
    case Preset::blowup_demo: return "blowup-demo";
    case Preset::scatter_demo: return "scatter-demo";
    case Preset::inequality_suite: return "inequality-suite";
  }
  return "?";
}

const ModelParameters& RunConfig::require_params() const {
  if (!params) throw ConfigError("preset requires a params block");
  return *params;
}

const Grid& RunConfig::require_grid() const {
  if (!grid) throw ConfigError("preset requires a grid block");
  return *grid;
}

RunConfig parse_config(const std::string& text) {
  RawConfig raw = tokenize(text);
  RunConfig cfg;
  cfg.source_text = text;

  const RawEntry* preset = raw.find("preset");
  if (!preset) fail("missing required key `preset`");
  cfg.preset = parse_preset(*preset);

  if (const auto* e = raw.find("seed"))
    cfg.seed = static_cast<std::uint64_t>(parse_int("seed", *e));
  if (const auto* e = raw.find("zero_mode")) {
    if (e->value == "zero") cfg.integrator.zero_mode = ZeroModePolicy::zero;
    else if (e->value == "cellavg") cfg.integrator.zero_mode = ZeroModePolicy::cellavg;
    else fail("line " + std::to_string(e->line) + ": zero_mode must be zero or cellavg");
  }

  // params block
  const auto* pN = raw.find("params.N");
  const auto* pp = raw.find("params.p");
  const auto* pg = raw.find("params.gamma");
  const auto* pm = raw.find("params.m");
  const auto* pM = raw.find("params.M");
  const auto* pM0 = raw.find("params.M0");
  const auto* pmu = raw.find("params.mu");
  const auto* pb = raw.find("params.b");
  const auto* pconv = raw.find("params.chirp_convention");
  const bool has_params = pN || pp || pg || pm || pM || pM0 || pmu || pb;
  if (has_params) {
    if (!pN || !pp || !pg || !pm || !pM || !pM0)
      fail("params block requires params.N, params.p, params.gamma, params.m, "
           "params.M, params.M0");
    ChirpConvention conv = ChirpConvention::quarter;
    if (pconv) {
      if (pconv->value == "quarter") conv = ChirpConvention::quarter;
      else if (pconv->value == "half") conv = ChirpConvention::half;
      else fail("line " + std::to_string(pconv->line) +
                ": chirp_convention must be quarter or half");
    }
    double b = pb ? parse_double("params.b", *pb) : 0.0;
    // The half convention maps onto the quarter-phase code path via b -> 2b.
    if (conv == ChirpConvention::half) b *= 2.0;
    try {
      cfg.params.emplace(static_cast<int>(parse_int("params.N", *pN)),
                         parse_double("params.p", *pp),
                         parse_double("params.gamma", *pg),
                         pmu ? parse_double("params.mu", *pmu) : 1.0,
                         parse_double("params.m", *pm),
                         static_cast<int>(parse_int("params.M", *pM)),
                         static_cast<int>(parse_int("params.M0", *pM0)), b, conv);
    } catch (const std::invalid_argument& err) {
      fail(std::string("invalid params block: ") + err.what());
    }
  }

  // grid block
  const auto* gL = raw.find("grid.L");
  const auto* gn = raw.find("grid.n");
  if (gL || gn) {
    if (!gL || !gn) fail("grid block requires both grid.L and grid.n");
    if (!cfg.params) fail("grid block requires a params block (for N)");
    try {
      cfg.grid = make_grid(cfg.params->dim(), parse_double("grid.L", *gL),
                           static_cast<int>(parse_int("grid.n", *gn)));
    } catch (const std::invalid_argument& err) {
      fail(std::string("invalid grid block: ") + err.what());
    }
  }

  // integrator block
  if (const auto* e = raw.find("integrator.dt"))
    cfg.integrator.dt = parse_double("integrator.dt", *e);
  if (const auto* e = raw.find("integrator.t_end"))
    cfg.integrator.t_end = parse_double("integrator.t_end", *e);
  if (const auto* e = raw.find("integrator.record_every"))
    cfg.integrator.record_every = static_cast<int>(parse_int("integrator.record_every", *e));
  if (const auto* e = raw.find("integrator.nonautonomous"))
    cfg.integrator.nonautonomous = parse_bool("integrator.nonautonomous", *e);
  if (const auto* e = raw.find("integrator.grad_growth_factor"))
    cfg.integrator.grad_growth_factor = parse_double("integrator.grad_growth_factor", *e);
  if (const auto* e = raw.find("integrator.tail_threshold"))
    cfg.integrator.tail_threshold = parse_double("integrator.tail_threshold", *e);
  if (const auto* e = raw.find("integrator.modulus_floor"))
    cfg.integrator.modulus_floor = parse_double("integrator.modulus_floor", *e);
  if (!(cfg.integrator.dt > 0.0)) fail("integrator.dt must be positive");
  if (!(cfg.integrator.t_end >= 0.0)) fail("integrator.t_end must be >= 0");
  if (cfg.integrator.record_every < 1) fail("integrator.record_every must be >= 1");

  // initial data block
  if (const auto* e = raw.find("init.kind")) {
    if (e->value == "gaussian") cfg.init.kind = InitialDataSpec::Kind::gaussian;
    else if (e->value == "power") cfg.init.kind = InitialDataSpec::Kind::power_weight;
    else fail("line " + std::to_string(e->line) + ": init.kind must be gaussian or power");
  }
  if (const auto* e = raw.find("init.amplitude"))
    cfg.init.amplitude = parse_double("init.amplitude", *e);
  if (const auto* e = raw.find("init.sigma"))
    cfg.init.sigma = parse_double("init.sigma", *e);
  if (const auto* e = raw.find("init.m")) cfg.init.m = parse_double("init.m", *e);
  if (const auto* e = raw.find("init.chirp_b")) {
    if (e->value == "auto") cfg.init.chirp_auto = true;
    else cfg.init.chirp_b = parse_double("init.chirp_b", *e);
  }

  // output block
  if (const auto* e = raw.find("output.dir")) cfg.output.dir = e->value;
  if (const auto* e = raw.find("output.timeseries"))
    cfg.output.timeseries = parse_bool("output.timeseries", *e);
  if (const auto* e = raw.find("output.reports"))
    cfg.output.reports = parse_bool("output.reports", *e);
  if (const auto* e = raw.find("output.snapshots"))
    cfg.output.snapshot_times = parse_double_list("output.snapshots", *e);
  cfg.integrator.snapshot_times = cfg.output.snapshot_times;

  if (const auto* e = raw.find("blowup.margin"))
    cfg.blowup_margin = parse_double("blowup.margin", *e);
  if (const auto* e = raw.find("scatter.s"))
    cfg.scatter_s = parse_double("scatter.s", *e);

  // Reject anything we did not consume.
  for (const auto& [key, entry] : raw.entries) {
    if (std::find(raw.consumed.begin(), raw.consumed.end(), key) ==
        raw.consumed.end())
      fail("line " + std::to_string(entry.line) + ": unknown key `" + key + "`");
  }

  // Preset-specific completeness and admissibility.
  const bool needs_run =
      cfg.preset == Preset::conservation || cfg.preset == Preset::virial ||
      cfg.preset == Preset::blowup_demo || cfg.preset == Preset::scatter_demo;
  if (cfg.preset != Preset::inequality_suite && !cfg.params)
    fail("preset " + std::string(to_string(cfg.preset)) + " requires a params block");
  if (needs_run && !cfg.grid)
    fail("preset " + std::string(to_string(cfg.preset)) + " requires a grid block");

  if (cfg.preset == Preset::conservation || cfg.preset == Preset::virial ||
      cfg.preset == Preset::scatter_demo) {
    const auto rep = validate_wellposedness(*cfg.params);
    if (!rep.all_satisfied()) {
      std::string msg = "params fail well-posedness admissibility:";
      for (const auto& v : rep.violations) msg += "\n  " + v;
      fail(msg);
    }
  }
  if (cfg.preset == Preset::blowup_demo) {
    const auto rep = validate_blowup_regime(*cfg.params);
    if (!rep.all_satisfied()) {
      std::string msg = "params fail blow-up admissibility:";
      for (const auto& v : rep.violations) msg += "\n  " + v;
      fail(msg);
    }
  }
  if (cfg.preset == Preset::scatter_demo && !(cfg.params->b() > 0.0))
    fail("scatter-demo requires params.b > 0");
  return cfg;
}

Field build_initial_data(const RunConfig& config) {
  const Grid& g = config.require_grid();
  switch (config.init.kind) {
    case InitialDataSpec::Kind::gaussian:
      return sample_gaussian(g, config.init.amplitude, config.init.sigma);
    case InitialDataSpec::Kind::power_weight:
      return sample_power_weight(g, config.init.amplitude, config.init.m);
  }
  throw ConfigError("unknown initial data kind");
}

}  // namespace ghartree
