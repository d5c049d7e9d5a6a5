#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace ghartree {

using complexd = std::complex<double>;

/// Periodic box descriptor. Samples along axis a sit at
///   x_i = -L_a/2 + i * (L_a / n_a),  i = 0 .. n_a - 1,
/// so the box is centered at the origin. The dual frequency lattice is
///   xi_k = (2 pi / L_a) * k,  k = -n_a/2 .. n_a/2 - 1,
/// stored in standard FFT order (0 .. n/2-1, -n/2 .. -1).
struct Grid {
  int dim = 1;
  std::array<double, 3> length{0.0, 0.0, 0.0};
  std::array<int, 3> npts{1, 1, 1};

  std::size_t size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(npts[a]);
    return s;
  }
  double dx(int axis) const { return length[axis] / npts[axis]; }
  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= dx(a);
    return v;
  }
  double coord(int axis, int i) const {
    return -0.5 * length[axis] + i * dx(axis);
  }
  /// Signed frequency for FFT-ordered index k on `axis`.
  double freq(int axis, int k) const {
    const int n = npts[axis];
    const int signed_k = (k < n / 2) ? k : k - n;
    return 2.0 * M_PI / length[axis] * signed_k;
  }
  double max_freq(int axis) const { return M_PI * npts[axis] / length[axis]; }

  bool operator==(const Grid& o) const {
    if (dim != o.dim) return false;
    for (int a = 0; a < dim; ++a)
      if (length[a] != o.length[a] || npts[a] != o.npts[a]) return false;
    return true;
  }
};

/// Uniform grid: same extent and point count on every axis.
/// Requires dim in {1,2,3}, L > 0, n even and >= 8.
Grid make_grid(int dim, double L, int n);

/// Complex field samples on a Grid, row-major with axis 0 slowest.
struct Field {
  Grid grid;
  std::vector<complexd> values;
  double time = 0.0;

  bool finite() const;
};

Field zero_field(const Grid& grid);

/// a * <x>^{-m} with <x> = sqrt(1 + |x|^2), x from the box center.
Field sample_power_weight(const Grid& grid, complexd a, double m);

/// a * exp(-sigma |x|^2).
Field sample_gaussian(const Grid& grid, complexd a, double sigma);

/// Pointwise closed-form sampling: fn receives the coordinates (unused
/// axes are zero).
Field sample_function(const Grid& grid,
                      const std::function<complexd(const std::array<double, 3>&)>& fn);

/// Multiply an existing field by the quadratic chirp exp(i b |x|^2 / 4).
Field chirp(const Field& field, double b);

// Flattened index helpers (row-major, axis 0 slowest).
inline std::size_t flat_index(const Grid& g, int i, int j, int k) {
  return (static_cast<std::size_t>(i) * g.npts[1] + j) * g.npts[2] + k;
}

/// Runs fn(flat, i, j, k) over the whole lattice; unused axes stay at 0.
template <typename F>
void for_each_index(const Grid& g, F&& fn) {
  const int nx = g.npts[0];
  const int ny = g.dim > 1 ? g.npts[1] : 1;
  const int nz = g.dim > 2 ? g.npts[2] : 1;
  std::size_t flat = 0;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k) fn(flat++, i, j, k);
}

/// |x|^2 with x measured from the box center.
inline double radius_sq(const Grid& g, int i, int j, int k) {
  double r2 = g.coord(0, i) * g.coord(0, i);
  if (g.dim > 1) r2 += g.coord(1, j) * g.coord(1, j);
  if (g.dim > 2) r2 += g.coord(2, k) * g.coord(2, k);
  return r2;
}

}  // namespace ghartree
