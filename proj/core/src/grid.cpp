#include "ghartree/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace ghartree {

Grid make_grid(int dim, double L, int n) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("grid dim must be 1, 2 or 3");
  if (!(L > 0.0) || !std::isfinite(L))
    throw std::invalid_argument("box length must be positive");
  if (n < 8 || n % 2 != 0)
    throw std::invalid_argument("points per axis must be even and >= 8");
  Grid g;
  g.dim = dim;
  for (int a = 0; a < dim; ++a) {
    g.length[a] = L;
    g.npts[a] = n;
  }
  for (int a = dim; a < 3; ++a) {
    g.length[a] = 0.0;
    g.npts[a] = 1;
  }
  return g;
}

bool Field::finite() const {
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

Field zero_field(const Grid& grid) {
  Field f;
  f.grid = grid;
  f.values.assign(grid.size(), complexd(0.0, 0.0));
  return f;
}

Field sample_power_weight(const Grid& grid, complexd a, double m) {
  Field f = zero_field(grid);
  for_each_index(grid, [&](std::size_t flat, int i, int j, int k) {
    const double w = std::sqrt(1.0 + radius_sq(grid, i, j, k));
    f.values[flat] = a * std::pow(w, -m);
  });
  return f;
}

Field sample_gaussian(const Grid& grid, complexd a, double sigma) {
  Field f = zero_field(grid);
  for_each_index(grid, [&](std::size_t flat, int i, int j, int k) {
    f.values[flat] = a * std::exp(-sigma * radius_sq(grid, i, j, k));
  });
  return f;
}

Field sample_function(const Grid& grid,
                      const std::function<complexd(const std::array<double, 3>&)>& fn) {
  Field f = zero_field(grid);
  for_each_index(grid, [&](std::size_t flat, int i, int j, int k) {
    std::array<double, 3> x{grid.coord(0, i), 0.0, 0.0};
    if (grid.dim > 1) x[1] = grid.coord(1, j);
    if (grid.dim > 2) x[2] = grid.coord(2, k);
    f.values[flat] = fn(x);
  });
  return f;
}

Field chirp(const Field& field, double b) {
  Field out = field;
  if (b == 0.0) return out;
  for_each_index(field.grid, [&](std::size_t flat, int i, int j, int k) {
    const double phase = 0.25 * b * radius_sq(field.grid, i, j, k);
    out.values[flat] *= complexd(std::cos(phase), std::sin(phase));
  });
  return out;
}

}  // namespace ghartree
