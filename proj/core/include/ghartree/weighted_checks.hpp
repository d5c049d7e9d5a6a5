#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ghartree/grid.hpp"
#include "ghartree/spectral.hpp"

namespace ghartree {

struct RatioSample {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool valid = true;
  std::string note;
};

/// Empirical record of one "lhs <= C rhs" inequality over a finite family.
struct RatioReport {
  std::string test_id;
  std::string family;
  std::vector<RatioSample> samples;
  double max_ratio = 0.0;
  double ceiling = 0.0;        // frozen per-fixture bound
  bool ratio_bounded = false;  // max_ratio <= ceiling over valid samples

  void finalize(double ceiling_value);
  std::string csv() const;  // one row per sample plus a summary line
};

struct PowerWeightClass {
  bool in_Apq = false;
  bool in_Ap = false;
};

/// Muckenhoupt power-weight membership: |x|^l in A_p iff l in (-N, N(p-1));
/// |x|^l in A_{p,q} iff -(N - p gamma)/p < l < N(p-1)/p, where
/// 1/q = 1/p - gamma/N. Throws when q is inconsistent with (p, gamma, N).
PowerWeightClass power_weight_class(double l, double p, double q, int dim,
                                    double gamma);

/// The standard probe family: Gaussians exp(-(d|x|)^2) for d = 2^{-3}..2^3
/// followed by `n_random` seeded band-limited fields.
std::vector<Field> dilation_family(const Grid& grid, int n_random,
                                   std::uint64_t seed);

/// Weighted Riesz-potential bound:
///   ratio = || (K_gamma * f) <x>^l ||_Lq / || f <x>^l ||_Lp per sample.
RatioReport riesz_weighted_ratio(const std::vector<Field>& family, double gamma,
                                 double l, double p, int dim);

/// Stein-derivative equivalence at p = 2:
///   r = (||f|| + ||D^b f||) / ||J^b f||; both r and 1/r are reported.
RatioReport stein_equivalence_ratio(const Field& f, double b);

/// Weighted/derivative interpolation bounds: the two ratios of
///   ||<x>^{ta} J^{(1-t)b} f||  <=  ||J^b f||^{1-t} ||<x>^a f||^t
/// and the counterpart with the roles of weight and derivative swapped.
RatioReport interpolation_check(const Field& f, double a, double bb, double theta);

/// ||<x>^b D^s f|| against ||<x>^b f|| + ||J^{s-b} f|| + ||<x>^b J^s f||,
/// for 0 < b < s.
RatioReport homogeneous_weight_bound_check(const Field& f, double b, double s);

/// Weighted propagator growth: per time,
///   ratio = ||<x>^b e^{it Lap} f|| / ( <t>^b (||J^b f|| + ||<x>^b f||) ).
/// Samples whose evolution pushes more than 1e-6 of the mass into the outer
/// eighth of the box are invalidated.
RatioReport propagator_weight_growth(const Field& f, double b,
                                     const std::vector<double>& times);

/// Weighted L2 norm || <x>^w f ||.
double weighted_l2_norm(const Field& f, double w);
/// Weighted Lp norm || f <x>^w ||_Lp on the lattice.
double weighted_lp_norm(const Field& f, double w, double p);

}  // namespace ghartree
