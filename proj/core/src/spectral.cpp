#include "ghartree/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace ghartree {

namespace {

// Shared FFTW plan cache. Plans are created once per (dims, direction) with
// FFTW_ESTIMATE | FFTW_UNALIGNED so execution is deterministic and valid for
// any buffer; creation is guarded, execution via the new-array interface is
// re-entrant.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  void execute(const Grid& g, const complexd* in, complexd* out, int sign) {
    fftw_plan plan = get_plan(g, sign);
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<complexd*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
  }

 private:
  using Key = std::tuple<int, int, int, int, int>;  // dim, n0, n1, n2, sign

  fftw_plan get_plan(const Grid& g, int sign) {
    Key key{g.dim, g.npts[0], g.npts[1], g.npts[2], sign};
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<complexd> scratch(g.size());
    int dims[3] = {g.npts[0], g.npts[1], g.npts[2]};
    fftw_plan plan = fftw_plan_dft(
        g.dim, dims, reinterpret_cast<fftw_complex*>(scratch.data()),
        reinterpret_cast<fftw_complex*>(scratch.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw_plan_dft failed");
    plans_.emplace(key, plan);
    return plan;
  }

  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

template <typename SymbolAt>
Field apply_multiplier_impl(const Field& field, SymbolAt&& symbol_at) {
  auto spectrum = forward_fft(field);
  const Grid& g = field.grid;
  for_each_index(g, [&](std::size_t flat, int i, int j, int k) {
    spectrum[flat] *= symbol_at(flat, i, j, k);
  });
  return inverse_fft(g, std::move(spectrum), field.time);
}

std::array<double, 3> freq_vector(const Grid& g, int i, int j, int k) {
  std::array<double, 3> xi{g.freq(0, i), 0.0, 0.0};
  if (g.dim > 1) xi[1] = g.freq(1, j);
  if (g.dim > 2) xi[2] = g.freq(2, k);
  return xi;
}

double freq_norm_sq(const Grid& g, int i, int j, int k) {
  double s = g.freq(0, i) * g.freq(0, i);
  if (g.dim > 1) s += g.freq(1, j) * g.freq(1, j);
  if (g.dim > 2) s += g.freq(2, k) * g.freq(2, k);
  return s;
}

}  // namespace

const char* to_string(ZeroModePolicy p) {
  switch (p) {
    case ZeroModePolicy::zero: return "zero";
    case ZeroModePolicy::cellavg: return "cellavg";
    case ZeroModePolicy::strict: return "strict";
  }
  return "?";
}

std::vector<complexd> forward_fft(const Field& field) {
  std::vector<complexd> out(field.values.size());
  PlanCache::instance().execute(field.grid, field.values.data(), out.data(),
                                FFTW_FORWARD);
  return out;
}

Field inverse_fft(const Grid& grid, std::vector<complexd> spectrum, double time) {
  Field out;
  out.grid = grid;
  out.time = time;
  out.values.resize(spectrum.size());
  PlanCache::instance().execute(grid, spectrum.data(), out.values.data(),
                                FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& v : out.values) v *= scale;
  return out;
}

Field fourier_multiplier(
    const Field& field,
    const std::function<complexd(const std::array<double, 3>&)>& symbol) {
  const Grid& g = field.grid;
  return apply_multiplier_impl(field, [&](std::size_t, int i, int j, int k) {
    const complexd s = symbol(freq_vector(g, i, j, k));
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw std::invalid_argument("non-finite multiplier symbol");
    return s;
  });
}

std::vector<complexd> make_symbol_table(
    const Grid& grid,
    const std::function<complexd(const std::array<double, 3>&)>& symbol) {
  std::vector<complexd> table(grid.size());
  for_each_index(grid, [&](std::size_t flat, int i, int j, int k) {
    table[flat] = symbol(freq_vector(grid, i, j, k));
  });
  return table;
}

Field apply_symbol_table(const Field& field, const std::vector<complexd>& table) {
  if (table.size() != field.values.size())
    throw std::invalid_argument("symbol table size mismatch");
  return apply_multiplier_impl(
      field, [&](std::size_t flat, int, int, int) { return table[flat]; });
}

Field apply_real_symbol_table(const Field& field, const std::vector<double>& table) {
  if (table.size() != field.values.size())
    throw std::invalid_argument("symbol table size mismatch");
  return apply_multiplier_impl(
      field, [&](std::size_t flat, int, int, int) { return table[flat]; });
}

Field free_propagate(const Field& field, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("non-finite time");
  const Grid& g = field.grid;
  Field out = apply_multiplier_impl(field, [&](std::size_t, int i, int j, int k) {
    const double phase = -t * freq_norm_sq(g, i, j, k);
    return complexd(std::cos(phase), std::sin(phase));
  });
  out.time = field.time + t;
  return out;
}

Field bessel(const Field& field, double s) {
  const Grid& g = field.grid;
  return apply_multiplier_impl(field, [&](std::size_t, int i, int j, int k) {
    return complexd(std::pow(1.0 + freq_norm_sq(g, i, j, k), 0.5 * s), 0.0);
  });
}

Field riesz_derivative(const Field& field, double s, ZeroModePolicy policy) {
  const Grid& g = field.grid;
  if (s < 0.0 && policy == ZeroModePolicy::strict) {
    complexd mean(0.0, 0.0);
    for (const auto& v : field.values) mean += v;
    double scale = 0.0;
    for (const auto& v : field.values) scale += std::abs(v);
    if (std::abs(mean) > 1e-12 * std::max(scale, 1.0))
      throw std::invalid_argument(
          "riesz_derivative with s < 0: field has nonzero mean (strict policy)");
  }
  return apply_multiplier_impl(field, [&](std::size_t, int i, int j, int k) {
    const double q = freq_norm_sq(g, i, j, k);
    if (q == 0.0) return complexd(s == 0.0 ? 1.0 : 0.0, 0.0);
    return complexd(std::pow(q, 0.5 * s), 0.0);
  });
}

double riesz_symbol_constant(int dim, double gamma) {
  return std::pow(2.0, gamma) * std::pow(M_PI, 0.5 * dim) *
         std::tgamma(0.5 * gamma) / std::tgamma(0.5 * (dim - gamma));
}

namespace {

// Zero-mode value for the cellavg policy: the integral of |x|^{-(N-gamma)}
// over the box, with the origin cell replaced by the exact integral over the
// equal-volume ball.
double riesz_cellavg_zero_mode(const Grid& g, double gamma) {
  const int N = g.dim;
  const double alpha = N - gamma;
  double sum = 0.0;
  const double vol = g.cell_volume();
  for_each_index(g, [&](std::size_t, int i, int j, int k) {
    const double r2 = radius_sq(g, i, j, k);
    if (r2 > 0.0) sum += std::pow(r2, -0.5 * alpha) * vol;
  });
  // surface area of the unit sphere in N dimensions
  const double surf = 2.0 * std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N);
  const double ball_volume_unit = surf / N;
  const double r0 = std::pow(vol / ball_volume_unit, 1.0 / N);
  sum += surf * std::pow(r0, gamma) / gamma;
  return sum;
}

}  // namespace

std::vector<double> riesz_symbol_table(const Grid& grid, double gamma,
                                       ZeroModePolicy policy) {
  if (!(gamma > 0.0 && gamma < grid.dim))
    throw std::invalid_argument("riesz_potential requires 0 < gamma < N");
  const double c = riesz_symbol_constant(grid.dim, gamma);
  std::vector<double> table(grid.size());
  double zero_mode = 0.0;
  if (policy == ZeroModePolicy::cellavg)
    zero_mode = riesz_cellavg_zero_mode(grid, gamma);
  for_each_index(grid, [&](std::size_t flat, int i, int j, int k) {
    const double q = freq_norm_sq(grid, i, j, k);
    table[flat] = (q == 0.0) ? zero_mode : c * std::pow(q, -0.5 * gamma);
  });
  return table;
}

Field riesz_potential(const Field& field, double gamma, ZeroModePolicy policy) {
  if (policy == ZeroModePolicy::strict) {
    complexd mean(0.0, 0.0);
    for (const auto& v : field.values) mean += v;
    double scale = 0.0;
    for (const auto& v : field.values) scale += std::abs(v);
    if (std::abs(mean) > 1e-12 * std::max(scale, 1.0))
      throw std::invalid_argument(
          "riesz_potential: field has nonzero mean (strict policy)");
    policy = ZeroModePolicy::zero;
  }
  return apply_real_symbol_table(field,
                                 riesz_symbol_table(field.grid, gamma, policy));
}

std::vector<Field> gradient(const Field& field) {
  const Grid& g = field.grid;
  auto spectrum = forward_fft(field);
  std::vector<Field> out;
  out.reserve(g.dim);
  for (int axis = 0; axis < g.dim; ++axis) {
    auto comp = spectrum;
    for_each_index(g, [&](std::size_t flat, int i, int j, int k) {
      const int idx = axis == 0 ? i : (axis == 1 ? j : k);
      comp[flat] *= complexd(0.0, g.freq(axis, idx));
    });
    out.push_back(inverse_fft(g, std::move(comp), field.time));
  }
  return out;
}

Field stein_derivative(const Field& field, double b) {
  if (!(b > 0.0 && b < 1.0))
    throw std::invalid_argument("stein_derivative requires 0 < b < 1");
  const Grid& g = field.grid;
  const int N = g.dim;
  const int nx = g.npts[0];
  const int ny = N > 1 ? g.npts[1] : 1;
  const int nz = N > 2 ? g.npts[2] : 1;

  // Minimum-image squared distance per axis offset, precomputed.
  auto axis_dist_sq = [&](int axis, int n) {
    std::vector<double> d(n);
    const double L = g.length[axis];
    const double h = g.dx(axis);
    for (int o = 0; o < n; ++o) {
      double z = o * h;
      if (z > 0.5 * L) z = L - z;
      d[o] = z * z;
    }
    return d;
  };
  const auto dx2 = axis_dist_sq(0, nx);
  const auto dy2 = N > 1 ? axis_dist_sq(1, ny) : std::vector<double>{0.0};
  const auto dz2 = N > 2 ? axis_dist_sq(2, nz) : std::vector<double>{0.0};

  // Kernel dx^N / |x - y|^{N + 2b} indexed by the offset triple.
  std::vector<double> kernel(static_cast<std::size_t>(nx) * ny * nz, 0.0);
  const double vol = g.cell_volume();
  const double expo = -0.5 * (N + 2.0 * b);
  {
    std::size_t flat = 0;
    for (int oi = 0; oi < nx; ++oi)
      for (int oj = 0; oj < ny; ++oj)
        for (int ok = 0; ok < nz; ++ok, ++flat) {
          const double r2 = dx2[oi] + dy2[oj] + dz2[ok];
          if (r2 > 0.0) kernel[flat] = vol * std::pow(r2, expo);
        }
  }

  Field out = zero_field(g);
  out.time = field.time;
  // Direct O(n^2) lattice sum over pairs; this operator only feeds
  // bounded-ratio checks on small grids.
  std::size_t xflat = 0;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k, ++xflat) {
        const complexd fx = field.values[xflat];
        double acc = 0.0;
        std::size_t yflat = 0;
        for (int yi = 0; yi < nx; ++yi) {
          const int oi = yi >= i ? yi - i : yi - i + nx;
          for (int yj = 0; yj < ny; ++yj) {
            const int oj = yj >= j ? yj - j : yj - j + ny;
            for (int yk = 0; yk < nz; ++yk, ++yflat) {
              const int ok = yk >= k ? yk - k : yk - k + nz;
              const double w = kernel[(static_cast<std::size_t>(oi) * ny + oj) * nz + ok];
              if (w == 0.0) continue;
              acc += w * std::norm(fx - field.values[yflat]);
            }
          }
        }
        out.values[xflat] = std::sqrt(acc);
      }
  return out;
}

double l2_norm_sq(const Field& field) {
  double s = 0.0;
  for (const auto& v : field.values) s += std::norm(v);
  return s * field.grid.cell_volume();
}

double l2_norm(const Field& field) { return std::sqrt(l2_norm_sq(field)); }

double lp_norm(const Field& field, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  double s = 0.0;
  for (const auto& v : field.values) s += std::pow(std::abs(v), p);
  return std::pow(s * field.grid.cell_volume(), 1.0 / p);
}

double spectral_l2_norm_sq(const Field& field) {
  const Grid& g = field.grid;
  auto spectrum = forward_fft(field);
  double s = 0.0;
  for (const auto& v : spectrum) s += std::norm(v);
  // fhat = dx^N * DFT up to a unimodular phase; dxi = 2pi/L per axis.
  double scale = std::pow(g.cell_volume(), 2);
  for (int a = 0; a < g.dim; ++a) scale *= 2.0 * M_PI / g.length[a];
  return s * scale / std::pow(2.0 * M_PI, g.dim);
}

double spectral_tail_fraction(const Field& field) {
  const Grid& g = field.grid;
  auto spectrum = forward_fft(field);
  double total = 0.0, tail = 0.0;
  for_each_index(g, [&](std::size_t flat, int i, int j, int k) {
    const double e = std::norm(spectrum[flat]);
    total += e;
    bool in_tail = std::abs(g.freq(0, i)) >= (2.0 / 3.0) * g.max_freq(0);
    if (g.dim > 1)
      in_tail = in_tail || std::abs(g.freq(1, j)) >= (2.0 / 3.0) * g.max_freq(1);
    if (g.dim > 2)
      in_tail = in_tail || std::abs(g.freq(2, k)) >= (2.0 / 3.0) * g.max_freq(2);
    if (in_tail) tail += e;
  });
  return total > 0.0 ? tail / total : 0.0;
}

Field resample_zero_pad(const Field& field, int n_new) {
  const Grid& g = field.grid;
  for (int a = 0; a < g.dim; ++a)
    if (n_new < g.npts[a])
      throw std::invalid_argument("resample_zero_pad cannot shrink the grid");
  if (n_new % 2 != 0) throw std::invalid_argument("n_new must be even");
  Grid fine = g;
  for (int a = 0; a < fine.dim; ++a) fine.npts[a] = n_new;

  auto spectrum = forward_fft(field);
  std::vector<complexd> padded(fine.size(), complexd(0.0, 0.0));
  const double scale = static_cast<double>(fine.size()) / g.size();
  for_each_index(g, [&](std::size_t flat, int i, int j, int k) {
    auto map_idx = [&](int axis, int idx) {
      const int n = g.npts[axis];
      const int signed_k = (idx < n / 2) ? idx : idx - n;
      return signed_k >= 0 ? signed_k : signed_k + n_new;
    };
    const int fi = map_idx(0, i);
    const int fj = g.dim > 1 ? map_idx(1, j) : 0;
    const int fk = g.dim > 2 ? map_idx(2, k) : 0;
    padded[flat_index(fine, fi, fj, fk)] = spectrum[flat] * scale;
  });
  return inverse_fft(fine, std::move(padded), field.time);
}

Field embed_in_larger_box(const Field& field, int factor) {
  if (factor < 1) throw std::invalid_argument("factor must be >= 1");
  if (factor == 1) return field;
  const Grid& g = field.grid;
  Grid big = g;
  for (int a = 0; a < big.dim; ++a) {
    big.length[a] = g.length[a] * factor;
    big.npts[a] = g.npts[a] * factor;
  }
  Field out = zero_field(big);
  out.time = field.time;
  auto offset = [&](int axis) { return (factor - 1) * g.npts[axis] / 2; };
  for_each_index(g, [&](std::size_t flat, int i, int j, int k) {
    const int bi = i + offset(0);
    const int bj = g.dim > 1 ? j + offset(1) : 0;
    const int bk = g.dim > 2 ? k + offset(2) : 0;
    out.values[flat_index(big, bi, bj, bk)] = field.values[flat];
  });
  return out;
}

Field random_band_limited(const Grid& grid, std::uint64_t seed,
                          double band_fraction) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<complexd> spectrum(grid.size(), complexd(0.0, 0.0));
  for_each_index(grid, [&](std::size_t flat, int i, int j, int k) {
    bool in_band = std::abs(grid.freq(0, i)) <= band_fraction * grid.max_freq(0);
    if (grid.dim > 1)
      in_band = in_band &&
                std::abs(grid.freq(1, j)) <= band_fraction * grid.max_freq(1);
    if (grid.dim > 2)
      in_band = in_band &&
                std::abs(grid.freq(2, k)) <= band_fraction * grid.max_freq(2);
    if (in_band) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      spectrum[flat] = complexd(re, im);
    }
  });
  Field f = inverse_fft(grid, std::move(spectrum), 0.0);
  const double norm = l2_norm(f);
  if (norm > 0.0)
    for (auto& v : f.values) v /= norm;
  return f;
}

}  // namespace ghartree
