#pragma once

#include <optional>
#include <vector>

#include "ghartree/grid.hpp"
#include "ghartree/observables.hpp"
#include "ghartree/params.hpp"
#include "ghartree/spectral.hpp"

namespace ghartree {

enum class HaltReason { completed, blowup_indicated, resolution_lost, non_finite };

const char* to_string(HaltReason r);
int exit_code(HaltReason r);  // process exit-code contract

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int record_every = 10;  // steps between observable records
  bool nonautonomous = false;   // evolve the (1 - b t)^{N(p-1)-2-gamma} equation
  double grad_growth_factor = 1e3;  // halt when grad_l2_sq grows by this factor
  double tail_threshold = 0.1;      // halt when the spectral tail exceeds this
  double modulus_floor = 0.0;       // epsilon regularization of |u|^{p-2}
  std::vector<double> snapshot_times;
  ZeroModePolicy zero_mode = ZeroModePolicy::zero;
};

struct TrajectoryResult {
  std::vector<ObservableRecord> records;
  Field final_field;
  HaltReason halt = HaltReason::completed;
  std::vector<Field> snapshots;
};

/// The Hartree nonlinearity N(u) = (|x|^{-(N-gamma)} * |u|^p) |u|^{p-2} u,
/// with |u|^{p-2} u read as |u|^{p-1} (u/|u|) and 0 mapped to 0 (continuous
/// extension, p > 1). With modulus_floor = eps > 0 the factor becomes
/// (|u|^2 + eps^2)^{(p-2)/2} u.
Field hartree_nonlinearity(const Field& field, const ModelParameters& params,
                           double modulus_floor = 0.0,
                           ZeroModePolicy policy = ZeroModePolicy::zero);

/// The nonlinear phase sub-flow alone: u -> exp(i mu_eff h W) u with
/// W = (K_gamma * |u|^p) |u|^{p-2} frozen from `field`. t_mid is where the
/// nonautonomous coefficient is sampled; ignored for autonomous runs.
Field nonlinear_phase_step(const Field& field, const ModelParameters& params,
                           const IntegratorConfig& config, double t_mid, double h);

/// One Strang step: half nonlinear phase, full free flight, half nonlinear
/// phase. The nonlinear sub-flow is exact: its potential
/// W = (K_gamma * |u|^p) |u|^{p-2} is real and frozen, and |u| is invariant
/// under the resulting phase rotation (real mu). For nonautonomous runs the
/// coupling is mu (1 - b tbar)^{N(p-1)-2-gamma} with tbar the midpoint of
/// each half step. dt may be negative (time reversal); it must be nonzero.
Field strang_step(const Field& field, double t, double dt,
                  const ModelParameters& params, const IntegratorConfig& config);

/// Monitor verdict for one record against the initial record. Gradient
/// growth is measured on grad_l2_sq; returns nullopt to continue.
std::optional<HaltReason> blowup_monitor(const ObservableRecord& now,
                                         const ObservableRecord& initial,
                                         const IntegratorConfig& config);

/// Fixed-step trajectory with records every `record_every` steps, monitor
/// checks at record times, and early halt on non-finite states. The final
/// state reached is always returned.
TrajectoryResult evolve(const Field& initial, const ModelParameters& params,
                        const IntegratorConfig& config);

}  // namespace ghartree
