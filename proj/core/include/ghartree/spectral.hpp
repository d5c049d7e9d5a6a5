#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ghartree/grid.hpp"

namespace ghartree {

/// Fourier transforms follow the convention  fhat(xi) = \int f(x) e^{-i x.xi} dx,
/// so every multiplier symbol below is stated in that convention.

/// Policy for the xi = 0 mode of negative-power symbols (|xi|^{-gamma} and
/// |xi|^{s} with s < 0), which the periodic box cannot represent.
enum class ZeroModePolicy {
  zero,     // drop the mean (symbol value 0 at xi = 0); the default
  cellavg,  // Riesz potential only: integral of |x|^{-(N-gamma)} over the box
  strict,   // error out if the field carries a nonzero mean
};

const char* to_string(ZeroModePolicy p);

/// Forward DFT of the field values, unnormalized (plain sum), FFT order.
std::vector<complexd> forward_fft(const Field& field);

/// Inverse of forward_fft including the 1/n^N normalization.
Field inverse_fft(const Grid& grid, std::vector<complexd> spectrum, double time);

/// Generic multiplier application: inverse-FFT(symbol . FFT(field)).
/// `symbol` receives the signed frequency vector (unused axes zero) and
/// must return finite values.
Field fourier_multiplier(const Field& field,
                         const std::function<complexd(const std::array<double, 3>&)>& symbol);

/// Precompute a symbol table in FFT storage order (for hot loops).
std::vector<complexd> make_symbol_table(
    const Grid& grid,
    const std::function<complexd(const std::array<double, 3>&)>& symbol);

Field apply_symbol_table(const Field& field, const std::vector<complexd>& table);

/// Free Schroedinger propagator e^{i t Laplacian}: symbol e^{-i t |xi|^2}.
Field free_propagate(const Field& field, double t);

/// Bessel potential J^s: symbol (1 + |xi|^2)^{s/2}.
Field bessel(const Field& field, double s);

/// Riesz derivative D^s: symbol |xi|^s. For s < 0 the zero mode follows
/// `policy` (only `zero` and `strict` are meaningful here).
Field riesz_derivative(const Field& field, double s,
                       ZeroModePolicy policy = ZeroModePolicy::zero);

/// Convolution with |x|^{-(N-gamma)}: symbol
///   sigma_gamma(xi) = 2^gamma pi^{N/2} Gamma(gamma/2)/Gamma((N-gamma)/2) |xi|^{-gamma}
/// for xi != 0; the zero mode follows `policy`.
Field riesz_potential(const Field& field, double gamma,
                      ZeroModePolicy policy = ZeroModePolicy::zero);

/// The constant in sigma_gamma above.
double riesz_symbol_constant(int dim, double gamma);

/// Symbol table for riesz_potential (real symbol), for reuse in stepping loops.
std::vector<double> riesz_symbol_table(const Grid& grid, double gamma,
                                       ZeroModePolicy policy = ZeroModePolicy::zero);

/// Real-symbol variant of apply_symbol_table.
Field apply_real_symbol_table(const Field& field, const std::vector<double>& table);

/// Spectral gradient: component j has symbol i xi_j.
std::vector<Field> gradient(const Field& field);

/// Stein fractional derivative by lattice quadrature with minimum-image
/// distances; the y = x term is excluded. O(dx^{1-2b})-biased, intended for
/// bounded-ratio checks only.
Field stein_derivative(const Field& field, double b);

/// L2 norm (dx^N-weighted lattice sum) and inner helpers.
double l2_norm(const Field& field);
double l2_norm_sq(const Field& field);
/// Lp norm on the lattice, p in [1, inf).
double lp_norm(const Field& field, double p);

/// Parseval check helper: (2pi)^{-N} sum |fhat|^2 dxi^N with fhat in the
/// integral convention.
double spectral_l2_norm_sq(const Field& field);

/// Fraction of spectral mass carried by modes with |xi_j| >= (2/3) xi_max,j
/// on at least one axis. Resolution monitor for the evolution loop.
double spectral_tail_fraction(const Field& field);

/// Zero-padded spectral resampling to n_new points per axis (n_new >= n).
Field resample_zero_pad(const Field& field, int n_new);

/// Physical zero-extension into a larger box with identical spacing:
/// L_new = factor * L, n_new = factor * n, original samples centered.
Field embed_in_larger_box(const Field& field, int factor);

/// Deterministic random band-limited field: unit-variance complex Gaussian
/// coefficients on modes with all |xi_j| <= band_fraction * xi_max,j, then
/// normalized to unit L2 norm.
Field random_band_limited(const Grid& grid, std::uint64_t seed,
                          double band_fraction = 1.0 / 3.0);

}  // namespace ghartree
