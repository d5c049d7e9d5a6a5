#include "ghartree/weighted_checks.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ghartree {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void add_sample(RatioReport& rep, std::string id, double lhs, double rhs,
                std::string note = {}) {
  RatioSample s;
  s.id = std::move(id);
  s.lhs = lhs;
  s.rhs = rhs;
  if (rhs > 0.0) {
    s.ratio = lhs / rhs;
  } else {
    s.valid = false;
    s.note = "zero denominator, sample skipped";
  }
  if (!note.empty()) s.note = std::move(note);
  rep.samples.push_back(std::move(s));
}

}  // namespace

void RatioReport::finalize(double ceiling_value) {
  ceiling = ceiling_value;
  max_ratio = 0.0;
  for (const auto& s : samples)
    if (s.valid) max_ratio = std::max(max_ratio, s.ratio);
  ratio_bounded = max_ratio <= ceiling;
}

std::string RatioReport::csv() const {
  std::ostringstream out;
  out << "sample,lhs,rhs,ratio,valid,note\n";
  for (const auto& s : samples)
    out << s.id << "," << fmt(s.lhs) << "," << fmt(s.rhs) << "," << fmt(s.ratio)
        << "," << (s.valid ? 1 : 0) << "," << s.note << "\n";
  out << "# test_id=" << test_id << " family=" << family
      << " max_ratio=" << fmt(max_ratio) << " ceiling=" << fmt(ceiling)
      << " ratio_bounded=" << (ratio_bounded ? 1 : 0) << "\n";
  return out.str();
}

PowerWeightClass power_weight_class(double l, double p, double q, int dim,
                                    double gamma) {
  const double N = dim;
  if (!(gamma > 0.0 && gamma < N))
    throw std::invalid_argument("gamma must lie in (0, N)");
  if (!(p > 1.0 && p < N / gamma))
    throw std::invalid_argument("need 1 < p < N/gamma");
  if (std::abs(1.0 / q - (1.0 / p - gamma / N)) > 1e-12)
    throw std::invalid_argument("q inconsistent with 1/q = 1/p - gamma/N");
  PowerWeightClass out;
  out.in_Ap = (l > -N) && (l < N * (p - 1.0));
  out.in_Apq = (l > -(N - p * gamma) / p) && (l < N * (p - 1.0) / p);
  return out;
}

std::vector<Field> dilation_family(const Grid& grid, int n_random,
                                   std::uint64_t seed) {
  std::vector<Field> family;
  for (int e = -3; e <= 3; ++e) {
    const double d = std::pow(2.0, e);
    family.push_back(sample_gaussian(grid, 1.0, d * d));
  }
  for (int i = 0; i < n_random; ++i)
    family.push_back(random_band_limited(grid, seed + static_cast<std::uint64_t>(i)));
  return family;
}

double weighted_l2_norm(const Field& f, double w) {
  return weighted_lp_norm(f, w, 2.0);
}

double weighted_lp_norm(const Field& f, double w, double p) {
  const Grid& g = f.grid;
  double s = 0.0;
  for_each_index(g, [&](std::size_t flat, int i, int j, int k) {
    const double wt = std::pow(1.0 + radius_sq(g, i, j, k), 0.5 * w);
    s += std::pow(wt * std::abs(f.values[flat]), p);
  });
  return std::pow(s * g.cell_volume(), 1.0 / p);
}

RatioReport riesz_weighted_ratio(const std::vector<Field>& family, double gamma,
                                 double l, double p, int dim) {
  const double N = dim;
  if (!(p > 1.0 && p < N / gamma))
    throw std::invalid_argument("need 1 < p < N/gamma");
  const double q = 1.0 / (1.0 / p - gamma / N);

  RatioReport rep;
  rep.test_id = "riesz_weighted";
  rep.family = "gaussian dilations + band-limited, l=" + fmt(l) + " p=" + fmt(p) +
               " gamma=" + fmt(gamma);
  int idx = 0;
  for (const auto& f : family) {
    const double rhs = weighted_lp_norm(f, l, p);
    if (rhs == 0.0) {
      add_sample(rep, "s" + std::to_string(idx++), 0.0, 0.0,
                 "zero-norm sample skipped");
      continue;
    }
    const Field conv = riesz_potential(f, gamma);
    const double lhs = weighted_lp_norm(conv, l, q);
    add_sample(rep, "s" + std::to_string(idx++), lhs, rhs);
  }
  return rep;
}

RatioReport stein_equivalence_ratio(const Field& f, double b) {
  if (!(b > 0.0 && b < 1.0))
    throw std::invalid_argument("stein_equivalence_ratio requires 0 < b < 1");
  RatioReport rep;
  rep.test_id = "stein_equivalence";
  rep.family = "single field, b=" + fmt(b);
  const double jb = l2_norm(bessel(f, b));
  if (jb == 0.0) {
    add_sample(rep, "forward", 0.0, 0.0, "||J^b f|| = 0, sample skipped");
    return rep;
  }
  const double sum = l2_norm(f) + l2_norm(stein_derivative(f, b));
  add_sample(rep, "forward", sum, jb);
  add_sample(rep, "inverse", jb, sum);
  return rep;
}

RatioReport interpolation_check(const Field& f, double a, double bb, double theta) {
  if (!(a > 0.0 && bb > 0.0)) throw std::invalid_argument("a, b must be positive");
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("theta must lie in (0, 1)");
  RatioReport rep;
  rep.test_id = "interpolation";
  rep.family = "single field, a=" + fmt(a) + " b=" + fmt(bb) + " theta=" + fmt(theta);

  const double lhs1 = weighted_l2_norm(bessel(f, (1.0 - theta) * bb), theta * a);
  const double rhs1 = std::pow(l2_norm(bessel(f, bb)), 1.0 - theta) *
                      std::pow(weighted_l2_norm(f, a), theta);
  add_sample(rep, "weight_of_smoothed", lhs1, rhs1);

  Field weighted = f;
  const Grid& g = f.grid;
  for_each_index(g, [&](std::size_t flat, int i, int j, int k) {
    weighted.values[flat] *=
        std::pow(1.0 + radius_sq(g, i, j, k), 0.5 * (1.0 - theta) * bb);
  });
  const double lhs2 = l2_norm(bessel(weighted, theta * a));
  const double rhs2 = std::pow(weighted_l2_norm(f, bb), 1.0 - theta) *
                      std::pow(l2_norm(bessel(f, a)), theta);
  add_sample(rep, "smoothing_of_weighted", lhs2, rhs2);
  return rep;
}

RatioReport homogeneous_weight_bound_check(const Field& f, double b, double s) {
  if (!(b > 0.0 && b < s))
    throw std::invalid_argument("need 0 < b < s");
  RatioReport rep;
  rep.test_id = "homogeneous_weight_bound";
  rep.family = "single field, b=" + fmt(b) + " s=" + fmt(s);
  const double lhs = weighted_l2_norm(riesz_derivative(f, s), b);
  const double rhs = weighted_l2_norm(f, b) + l2_norm(bessel(f, s - b)) +
                     weighted_l2_norm(bessel(f, s), b);
  add_sample(rep, "bound", lhs, rhs);
  return rep;
}

RatioReport propagator_weight_growth(const Field& f, double b,
                                     const std::vector<double>& times) {
  if (!(b > 0.0)) throw std::invalid_argument("b must be positive");
  RatioReport rep;
  rep.test_id = "propagator_weight_growth";
  rep.family = "single field, b=" + fmt(b);
  const double denom_base = l2_norm(bessel(f, b)) + weighted_l2_norm(f, b);
  const Grid& g = f.grid;
  const double total_mass = l2_norm_sq(f);
  for (double t : times) {
    const Field ut = free_propagate(f, t);
    // Mass in the outer eighth of the box flags support escaping the torus.
    double boundary_mass = 0.0;
    for_each_index(g, [&](std::size_t flat, int i, int j, int k) {
      bool outer = std::abs(g.coord(0, i)) >= 0.4375 * g.length[0];
      if (g.dim > 1) outer = outer || std::abs(g.coord(1, j)) >= 0.4375 * g.length[1];
      if (g.dim > 2) outer = outer || std::abs(g.coord(2, k)) >= 0.4375 * g.length[2];
      if (outer) boundary_mass += std::norm(ut.values[flat]);
    });
    boundary_mass *= g.cell_volume();
    const double lhs = weighted_l2_norm(ut, b);
    const double rhs = std::pow(std::sqrt(1.0 + t * t), b) * denom_base;
    add_sample(rep, "t=" + fmt(t), lhs, rhs);
    if (total_mass > 0.0 && boundary_mass > 1e-6 * total_mass) {
      rep.samples.back().valid = false;
      rep.samples.back().note = "support escaped the box, sample invalidated";
    }
  }
  return rep;
}

}  // namespace ghartree
