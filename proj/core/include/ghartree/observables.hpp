#pragma once

#include <array>
#include <string>
#include <vector>

#include "ghartree/grid.hpp"
#include "ghartree/params.hpp"
#include "ghartree/spectral.hpp"

namespace ghartree {

/// Time-stamped scalar diagnostics of a field. One CSV row per record; the
/// column order is fixed by csv_header().
struct ObservableRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  std::array<double, 3> momentum{0.0, 0.0, 0.0};
  double variance = 0.0;       // V = int |x|^2 |u|^2
  double variance_t = 0.0;     // 4 Im int conj(u) (x . grad u)
  double variance_tt = 0.0;    // 16(k_c+1)E - 8 k_c |grad u|^2
  double sup_norm = 0.0;
  double grad_l2_sq = 0.0;
  double x_norm = 0.0;
  double min_weighted_modulus = 0.0;
  double spectral_tail_fraction = 0.0;

  static std::string csv_header(int dim);
  std::string csv_row(int dim) const;
};

struct ConservedQuantities {
  double mass = 0.0;
  double energy = 0.0;
  std::array<double, 3> momentum{0.0, 0.0, 0.0};
};

/// Mass, energy and momentum of Eq. (1.1)-type dynamics:
///   mass     = int |u|^2
///   energy   = 1/2 int |grad u|^2 - mu/(2p) int (K_gamma * |u|^p) |u|^p
///   momentum = Im int conj(u) grad u
/// All integrals are dx^N-weighted lattice sums; gradients are spectral.
/// For complex mu only the real part enters the energy functional.
ConservedQuantities conserved_quantities(const Field& field,
                                         const ModelParameters& params,
                                         ZeroModePolicy policy = ZeroModePolicy::zero);

struct VirialQuantities {
  double V = 0.0;
  double V_t = 0.0;
  double V_tt = 0.0;            // energy/gradient form (second line of the identity)
  double V_tt_potential_form = 0.0;  // 16E - 8 s_c (p-1)/p mu int (K*|u|^p)|u|^p
};

/// Variance and its virial derivatives. Both algebraic forms of V_tt are
/// returned so callers can cross-check them.
VirialQuantities virial_quantities(const Field& field, const ModelParameters& params,
                                   ZeroModePolicy policy = ZeroModePolicy::zero);

struct XNormComponent {
  std::array<int, 3> alpha{0, 0, 0};
  int order = 0;
  // groups: 0 = weighted sup, 1 = weighted L2, 2 = plain L2
  int group = 0;
  double value = 0.0;
};

struct XNorm {
  double total = 0.0;
  std::vector<XNormComponent> components;
};

/// The weighted norm
///   sum_{|a| <= [N/2]} sup |<x>^m d^a f|
/// + sum_{[N/2] < |a| <= M} ||<x>^m d^a f||_L2
/// + sum_{M < |a| <= M+M0-N} ||d^a f||_L2,
/// derivatives spectral, sup taken over the lattice.
XNorm x_norm(const Field& field, const ModelParameters& params);

/// min over the lattice of <x>^m |u(x)|.
double min_weighted_modulus(const Field& field, double m);

/// Full diagnostic record of a field at its time tag.
ObservableRecord make_record(const Field& field, const ModelParameters& params,
                             ZeroModePolicy policy = ZeroModePolicy::zero);

}  // namespace ghartree
