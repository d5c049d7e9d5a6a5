#include "ghartree/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ghartree {

namespace {

// Real phase potential W = (K_gamma * |u|^p) |u|^{p-2} on the lattice.
// Points with u = 0 get W = 0 (the nonlinearity extends by 0 there).
std::vector<double> phase_potential(const Field& field, const ModelParameters& params,
                                    double modulus_floor,
                                    const std::vector<double>& riesz_table) {
  const double p = params.p();
  Field amp_p = zero_field(field.grid);
  for (std::size_t i = 0; i < field.values.size(); ++i)
    amp_p.values[i] = std::pow(std::abs(field.values[i]), p);
  const Field conv = apply_real_symbol_table(amp_p, riesz_table);
  std::vector<double> w(field.values.size());
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const double mod = std::abs(field.values[i]);
    double amp;
    if (modulus_floor > 0.0) {
      amp = std::pow(mod * mod + modulus_floor * modulus_floor, 0.5 * (p - 2.0));
    } else {
      amp = mod > 0.0 ? std::pow(mod, p - 2.0) : 0.0;
    }
    w[i] = conv.values[i].real() * amp;
  }
  return w;
}

// u <- exp(i mu_eff h W) u with W frozen from the current state.
void apply_nonlinear_phase(Field& field, const ModelParameters& params,
                           const IntegratorConfig& config, complexd mu_eff,
                           double h, const std::vector<double>& riesz_table) {
  if (mu_eff == complexd(0.0, 0.0)) return;
  const auto w = phase_potential(field, params, config.modulus_floor, riesz_table);
  for (std::size_t i = 0; i < field.values.size(); ++i)
    field.values[i] *= std::exp(complexd(0.0, 1.0) * mu_eff * (h * w[i]));
}

complexd effective_coupling(const ModelParameters& params,
                            const IntegratorConfig& config, double t_mid) {
  if (!config.nonautonomous) return params.mu();
  const double base = 1.0 - params.b() * t_mid;
  if (base <= 0.0)
    throw std::invalid_argument("nonautonomous coefficient needs 1 - b t > 0");
  const double expo =
      params.dim() * (params.p() - 1.0) - 2.0 - params.gamma();
  return params.mu() * std::pow(base, expo);
}

Field strang_step_impl(const Field& field, double t, double dt,
                       const ModelParameters& params, const IntegratorConfig& config,
                       const std::vector<double>& riesz_table) {
  Field u = field;
  apply_nonlinear_phase(u, params, config,
                        effective_coupling(params, config, t + 0.25 * dt),
                        0.5 * dt, riesz_table);
  u = free_propagate(u, dt);
  apply_nonlinear_phase(u, params, config,
                        effective_coupling(params, config, t + 0.75 * dt),
                        0.5 * dt, riesz_table);
  u.time = field.time + dt;
  return u;
}

}  // namespace

const char* to_string(HaltReason r) {
  switch (r) {
    case HaltReason::completed: return "completed";
    case HaltReason::blowup_indicated: return "blowup-indicated";
    case HaltReason::resolution_lost: return "resolution-lost";
    case HaltReason::non_finite: return "non-finite";
  }
  return "?";
}

int exit_code(HaltReason r) {
  switch (r) {
    case HaltReason::completed: return 0;
    case HaltReason::blowup_indicated: return 2;
    case HaltReason::resolution_lost: return 3;
    case HaltReason::non_finite: return 4;
  }
  return 1;
}

Field hartree_nonlinearity(const Field& field, const ModelParameters& params,
                           double modulus_floor, ZeroModePolicy policy) {
  const auto table = riesz_symbol_table(field.grid, params.gamma(), policy);
  const auto w = phase_potential(field, params, modulus_floor, table);
  Field out = field;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= w[i];
  return out;
}

Field nonlinear_phase_step(const Field& field, const ModelParameters& params,
                           const IntegratorConfig& config, double t_mid, double h) {
  const auto table =
      riesz_symbol_table(field.grid, params.gamma(), config.zero_mode);
  Field u = field;
  apply_nonlinear_phase(u, params, config, effective_coupling(params, config, t_mid),
                        h, table);
  return u;
}

Field strang_step(const Field& field, double t, double dt,
                  const ModelParameters& params, const IntegratorConfig& config) {
  if (dt == 0.0 || !std::isfinite(dt))
    throw std::invalid_argument("dt must be nonzero and finite");
  const auto table =
      riesz_symbol_table(field.grid, params.gamma(), config.zero_mode);
  return strang_step_impl(field, t, dt, params, config, table);
}

std::optional<HaltReason> blowup_monitor(const ObservableRecord& now,
                                         const ObservableRecord& initial,
                                         const IntegratorConfig& config) {
  if (!std::isfinite(now.grad_l2_sq) || !std::isfinite(now.mass))
    return HaltReason::non_finite;
  if (initial.grad_l2_sq > 0.0 &&
      now.grad_l2_sq > config.grad_growth_factor * initial.grad_l2_sq)
    return HaltReason::blowup_indicated;
  if (now.spectral_tail_fraction > config.tail_threshold)
    return HaltReason::resolution_lost;
  return std::nullopt;
}

TrajectoryResult evolve(const Field& initial, const ModelParameters& params,
                        const IntegratorConfig& config) {
  if (!(config.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(config.t_end >= 0.0)) throw std::invalid_argument("t_end must be >= 0");
  if (config.record_every < 1)
    throw std::invalid_argument("record_every must be >= 1");
  if (config.nonautonomous && params.b() > 0.0 &&
      config.t_end > 1.0 / params.b() + 1e-12)
    throw std::invalid_argument("nonautonomous run requires t_end <= 1/b");

  const auto riesz_table =
      riesz_symbol_table(initial.grid, params.gamma(), config.zero_mode);

  TrajectoryResult result;
  Field u = initial;
  u.time = 0.0;

  // Snapshots fire at the first step whose time reaches the requested value.
  std::vector<double> pending = config.snapshot_times;
  std::sort(pending.begin(), pending.end());
  auto take_due_snapshots = [&](const Field& state) {
    while (!pending.empty() && state.time >= pending.front() - 0.5 * config.dt) {
      result.snapshots.push_back(state);
      pending.erase(pending.begin());
    }
  };

  const ObservableRecord first = make_record(u, params, config.zero_mode);
  result.records.push_back(first);
  take_due_snapshots(u);

  const long steps = std::lround(config.t_end / config.dt);
  for (long k = 0; k < steps; ++k) {
    const double t = k * config.dt;
    u = strang_step_impl(u, t, config.dt, params, config, riesz_table);
    u.time = (k + 1) * config.dt;

    if (!u.finite()) {
      result.halt = HaltReason::non_finite;
      break;
    }
    take_due_snapshots(u);

    const bool at_record = ((k + 1) % config.record_every == 0) || (k + 1 == steps);
    if (!at_record) continue;
    const ObservableRecord rec = make_record(u, params, config.zero_mode);
    result.records.push_back(rec);
    if (auto halt = blowup_monitor(rec, first, config)) {
      result.halt = *halt;
      break;
    }
  }
  result.final_field = std::move(u);
  return result;
}

}  // namespace ghartree
