#pragma once

#include <optional>
#include <string>

#include "ghartree/grid.hpp"
#include "ghartree/observables.hpp"
#include "ghartree/params.hpp"

namespace ghartree {

/// The blow-up threshold function
///   F(x) = +sqrt( 1/(k_c x^{k_c}) + x - (1+k_c)/k_c )  for 0 < x < 1,
///          -sqrt( ... )                                  for x >= 1,
/// with F(1) = 0 identically. Radicands within 1e-14 of zero are clipped;
/// genuinely negative radicands throw (they cannot occur for x > 0, k_c > 0).
double blowup_threshold_F(double x, double k_c);

struct BlowupVerdict {
  double mass = 0.0;
  double energy = 0.0;
  double V0 = 0.0;
  double Vt0 = 0.0;
  double omega_c = 0.0;
  double k_c = 0.0;

  double x = 0.0;    // E V0 / (omega_c M)^2
  double lhs = 0.0;  // Vt0 / (omega_c M)
  double rhs = 0.0;  // 4 sqrt(2) F(x)
  bool satisfied = false;

  // Equivalent polynomial forms, evaluated in their applicable sign case:
  //   Vt0 > 0 and x < 1, or Vt0 < 0 and x >= 1. Outside those cases the
  // verdict comes from the F-form alone and `polynomial_form_applicable`
  // stays false.
  bool polynomial_form_applicable = false;
  bool polynomial_form_satisfied = false;
  bool forms_agree = true;
};

/// Sufficient blow-up condition Vt0/(omega_c M) < 4 sqrt(2) F(E V0/(omega_c M)^2)
/// for mass-supercritical positive-energy data. Preconditions (params in the
/// blow-up regime, energy > 0, mass > 0, V0 > 0) are checked individually.
BlowupVerdict blowup_criterion(double mass, double energy, double V0, double Vt0,
                               const ModelParameters& params);

struct ChirpedObservables {
  // closed-form values from the unchirped profile v0
  double V0 = 0.0;    // || x v0 ||^2
  double Vt0 = 0.0;   // 4 Im int conj(v0) x.grad v0 + 2 b ||x v0||^2
  double E_u0 = 0.0;  // E[v0] + b/2 Im int conj(v0) x.grad v0 + b^2/8 ||x v0||^2
  double mass = 0.0;
  double E_v0 = 0.0;
  double angular_term = 0.0;  // Im int conj(v0) x.grad v0

  // the same three quantities evaluated directly on the chirped field
  double V0_direct = 0.0;
  double Vt0_direct = 0.0;
  double E_u0_direct = 0.0;
  double max_rel_deviation = 0.0;
};

/// Identities for u0 = exp(i b |x|^2/4) v0, with a direct cross-check on the
/// sampled chirped field.
ChirpedObservables chirped_observables(const Field& v0, double b,
                                       const ModelParameters& params);

struct ChirpRanges {
  // b > 0 branch: all b in (b0, b1) produce blow-up data; empty when the
  // hypotheses fail.
  std::optional<std::pair<double, double>> positive_interval;
  // b < 0 branch: blow-up for every b <= threshold; nullopt when the
  // hypothesis fails.
  std::optional<double> negative_threshold;
};

/// Chirp ranges for real-valued v0 (or data with vanishing angular term).
/// The positive endpoints come from the closed-form bounds; the negative
/// threshold is located by monotone bisection against blowup_criterion.
ChirpRanges chirp_b_ranges(const Field& v0, const ModelParameters& params);

/// The pseudo-conformal image of the internal state v at internal time
/// tau = t/(1+bt):
///   u(x, t) = (1+bt)^{-N/2} exp(i b |x|^2 / (4(1+bt))) v(x/(1+bt), tau).
/// v is first refined to n_target points per axis by zero-padded spectral
/// resampling (0 keeps the input resolution); the dilation itself is
/// sample-exact on the dilated grid (L -> (1+bt) L). n_target must be large
/// enough to resolve the chirp wavenumber b|x|/(2(1+bt)) over the support.
Field pseudo_conformal_map(const Field& v, double tau, double b, int n_target = 0);

/// External time t corresponding to internal time tau (requires 1 - b tau > 0).
double pseudo_conformal_time(double tau, double b);

/// Scattering state u+ = exp(i b |x|^2/4) e^{-(1/b) Laplacian} v(1/b),
/// the backward free flow applied to the internal state at tau = 1/b.
Field scattering_state(const Field& v_final, double b);

struct ScatteringResidual {
  double residual_Hs = 0.0;  // || J^s ( e^{-it Lap} u(t) - u+ ) ||_L2
  double decay_value = 0.0;  // (1+t)^{N/2} sup |u(t)|
};

ScatteringResidual scattering_residual(const Field& u_t, double t,
                                       const Field& u_plus, double s);

}  // namespace ghartree
