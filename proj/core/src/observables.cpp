#include "ghartree/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace ghartree {

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Everything the record needs from one pass over the field.
struct FieldAnalysis {
  double mass = 0.0;
  double grad_l2_sq = 0.0;
  std::array<double, 3> momentum{0.0, 0.0, 0.0};
  double potential = 0.0;  // int (K_gamma * |u|^p) |u|^p
  double energy = 0.0;
  double variance = 0.0;
  double variance_t = 0.0;
  double sup_norm = 0.0;
};

FieldAnalysis analyze(const Field& field, const ModelParameters& params,
                      ZeroModePolicy policy) {
  if (!field.finite()) throw std::invalid_argument("non-finite field");
  const Grid& g = field.grid;
  const double vol = g.cell_volume();
  const double p = params.p();
  FieldAnalysis a;

  for (const auto& v : field.values) {
    a.mass += std::norm(v);
    a.sup_norm = std::max(a.sup_norm, std::abs(v));
  }
  a.mass *= vol;

  const auto grads = gradient(field);
  for (int axis = 0; axis < g.dim; ++axis) {
    double gsq = 0.0, mom = 0.0;
    for (std::size_t i = 0; i < field.values.size(); ++i) {
      gsq += std::norm(grads[axis].values[i]);
      mom += std::imag(std::conj(field.values[i]) * grads[axis].values[i]);
    }
    a.grad_l2_sq += gsq * vol;
    a.momentum[axis] = mom * vol;
  }

  Field amp_p = zero_field(g);
  for (std::size_t i = 0; i < field.values.size(); ++i)
    amp_p.values[i] = std::pow(std::abs(field.values[i]), p);
  const Field W = riesz_potential(amp_p, params.gamma(), policy);
  for (std::size_t i = 0; i < field.values.size(); ++i)
    a.potential += W.values[i].real() * amp_p.values[i].real();
  a.potential *= vol;

  a.energy = 0.5 * a.grad_l2_sq -
             params.mu().real() / (2.0 * p) * a.potential;

  for_each_index(g, [&](std::size_t flat, int i, int j, int k) {
    const double r2 = radius_sq(g, i, j, k);
    a.variance += r2 * std::norm(field.values[flat]);
    double xdotgrad = g.coord(0, i) * std::imag(std::conj(field.values[flat]) *
                                                grads[0].values[flat]);
    if (g.dim > 1)
      xdotgrad += g.coord(1, j) *
                  std::imag(std::conj(field.values[flat]) * grads[1].values[flat]);
    if (g.dim > 2)
      xdotgrad += g.coord(2, k) *
                  std::imag(std::conj(field.values[flat]) * grads[2].values[flat]);
    a.variance_t += xdotgrad;
  });
  a.variance *= vol;
  a.variance_t *= 4.0 * vol;
  return a;
}

void enumerate_multi_indices(int dim, int max_order,
                             std::vector<std::array<int, 3>>& out) {
  for (int total = 0; total <= max_order; ++total) {
    for (int a0 = total; a0 >= 0; --a0) {
      if (dim == 1) {
        if (a0 == total) out.push_back({a0, 0, 0});
        continue;
      }
      for (int a1 = total - a0; a1 >= 0; --a1) {
        if (dim == 2) {
          if (a0 + a1 == total) out.push_back({a0, a1, 0});
          continue;
        }
        const int a2 = total - a0 - a1;
        out.push_back({a0, a1, a2});
      }
    }
  }
}

}  // namespace

std::string ObservableRecord::csv_header(int dim) {
  std::string h = "t,mass,energy";
  for (int a = 1; a <= dim; ++a) h += ",momentum_" + std::to_string(a);
  h += ",variance,variance_t,variance_tt,sup_norm,grad_l2_sq,x_norm,"
       "min_weighted_modulus,spectral_tail_fraction";
  return h;
}

std::string ObservableRecord::csv_row(int dim) const {
  std::string row = format_double(t) + "," + format_double(mass) + "," +
                    format_double(energy);
  for (int a = 0; a < dim; ++a) row += "," + format_double(momentum[a]);
  row += "," + format_double(variance) + "," + format_double(variance_t) + "," +
         format_double(variance_tt) + "," + format_double(sup_norm) + "," +
         format_double(grad_l2_sq) + "," + format_double(x_norm) + "," +
         format_double(min_weighted_modulus) + "," +
         format_double(spectral_tail_fraction);
  return row;
}

ConservedQuantities conserved_quantities(const Field& field,
                                         const ModelParameters& params,
                                         ZeroModePolicy policy) {
  const auto a = analyze(field, params, policy);
  return {a.mass, a.energy, a.momentum};
}

VirialQuantities virial_quantities(const Field& field,
                                   const ModelParameters& params,
                                   ZeroModePolicy policy) {
  const auto a = analyze(field, params, policy);
  const auto dc = params.constants();
  VirialQuantities v;
  v.V = a.variance;
  v.V_t = a.variance_t;
  v.V_tt = 16.0 * (dc.k_c + 1.0) * a.energy - 8.0 * dc.k_c * a.grad_l2_sq;
  v.V_tt_potential_form =
      16.0 * a.energy -
      8.0 * dc.k_c / params.p() * params.mu().real() * a.potential;
  return v;
}

XNorm x_norm(const Field& field, const ModelParameters& params) {
  const Grid& g = field.grid;
  const int half_N = g.dim / 2;
  const int M = params.M();
  const int K = params.sobolev_order();
  if (K < 0) throw std::invalid_argument("M + M0 - N must be nonnegative");

  std::vector<std::array<int, 3>> alphas;
  enumerate_multi_indices(g.dim, K, alphas);

  // <x>^m lattice weight, shared across components.
  std::vector<double> weight(g.size());
  for_each_index(g, [&](std::size_t flat, int i, int j, int k) {
    weight[flat] = std::pow(1.0 + radius_sq(g, i, j, k), 0.5 * params.m());
  });

  const auto spectrum = forward_fft(field);
  const double vol = g.cell_volume();
  // Parseval scale for || d^a f ||_L2 computed spectrally.
  double spec_scale = vol * vol;
  for (int a = 0; a < g.dim; ++a) spec_scale *= 1.0 / g.length[a];

  // Per-axis frequency powers xi^r, so each (i xi)^alpha is three table
  // lookups and a phase instead of |alpha| multiplies per point.
  std::array<std::vector<double>, 3> freq_pow;
  for (int axis = 0; axis < g.dim; ++axis) {
    const int n = g.npts[axis];
    freq_pow[axis].assign(static_cast<std::size_t>(n) * (K + 1), 1.0);
    for (int idx = 0; idx < n; ++idx)
      for (int r = 1; r <= K; ++r)
        freq_pow[axis][idx * (K + 1) + r] =
            freq_pow[axis][idx * (K + 1) + r - 1] * g.freq(axis, idx);
  }
  auto power = [&](int axis, int idx, int r) {
    return axis < g.dim ? freq_pow[axis][idx * (K + 1) + r] : 1.0;
  };

  XNorm out;
  for (const auto& alpha : alphas) {
    const int order = alpha[0] + alpha[1] + alpha[2];
    XNormComponent comp;
    comp.alpha = alpha;
    comp.order = order;
    // i^order rotates the real product xi^alpha into (i xi)^alpha
    const complexd i_pow =
        std::array<complexd, 4>{complexd(1, 0), complexd(0, 1), complexd(-1, 0),
                                complexd(0, -1)}[order % 4];
    if (order <= M) {
      // physical-space evaluation via one inverse transform
      auto deriv_spec = spectrum;
      for_each_index(g, [&](std::size_t flat, int i, int j, int k) {
        const double fac = power(0, i, alpha[0]) * power(1, j, alpha[1]) *
                           power(2, k, alpha[2]);
        deriv_spec[flat] *= i_pow * fac;
      });
      const Field deriv = inverse_fft(g, std::move(deriv_spec), field.time);
      if (order <= half_N) {
        comp.group = 0;
        double sup = 0.0;
        for (std::size_t i = 0; i < deriv.values.size(); ++i)
          sup = std::max(sup, weight[i] * std::abs(deriv.values[i]));
        comp.value = sup;
      } else {
        comp.group = 1;
        double s = 0.0;
        for (std::size_t i = 0; i < deriv.values.size(); ++i)
          s += weight[i] * weight[i] * std::norm(deriv.values[i]);
        comp.value = std::sqrt(s * vol);
      }
    } else {
      // plain L2 norm, evaluated spectrally
      comp.group = 2;
      double s = 0.0;
      for_each_index(g, [&](std::size_t flat, int i, int j, int k) {
        const double fac = power(0, i, alpha[0]) * power(1, j, alpha[1]) *
                           power(2, k, alpha[2]);
        s += fac * fac * std::norm(spectrum[flat]);
      });
      comp.value = std::sqrt(s * spec_scale);
    }
    out.total += comp.value;
    out.components.push_back(comp);
  }
  return out;
}

double min_weighted_modulus(const Field& field, double m) {
  if (!(m > 0.0)) throw std::invalid_argument("m must be positive");
  const Grid& g = field.grid;
  double best = std::numeric_limits<double>::infinity();
  for_each_index(g, [&](std::size_t flat, int i, int j, int k) {
    const double w = std::pow(1.0 + radius_sq(g, i, j, k), 0.5 * m);
    best = std::min(best, w * std::abs(field.values[flat]));
  });
  return best;
}

ObservableRecord make_record(const Field& field, const ModelParameters& params,
                             ZeroModePolicy policy) {
  const auto a = analyze(field, params, policy);
  const auto dc = params.constants();
  ObservableRecord r;
  r.t = field.time;
  r.mass = a.mass;
  r.energy = a.energy;
  r.momentum = a.momentum;
  r.variance = a.variance;
  r.variance_t = a.variance_t;
  r.variance_tt = 16.0 * (dc.k_c + 1.0) * a.energy - 8.0 * dc.k_c * a.grad_l2_sq;
  r.sup_norm = a.sup_norm;
  r.grad_l2_sq = a.grad_l2_sq;
  r.x_norm = x_norm(field, params).total;
  r.min_weighted_modulus = min_weighted_modulus(field, params.m());
  r.spectral_tail_fraction = spectral_tail_fraction(field);
  return r;
}

}  // namespace ghartree
