#include "ghartree/criteria.hpp"

#include <cmath>
#include <stdexcept>

#include "ghartree/spectral.hpp"

namespace ghartree {

namespace {

constexpr double kFourRootTwo = 5.656854249492380195;  // 4 sqrt(2)

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

double blowup_threshold_F(double x, double k_c) {
  require(x > 0.0, "F requires x > 0");
  require(k_c > 0.0, "F requires k_c > 0");
  if (x == 1.0) return 0.0;  // the radicand vanishes identically at x = 1
  const double radicand =
      1.0 / (k_c * std::pow(x, k_c)) + x - (1.0 + k_c) / k_c;
  if (radicand < -1e-14) throw std::domain_error("F radicand negative");
  const double root = std::sqrt(std::max(radicand, 0.0));
  return x < 1.0 ? root : -root;
}

BlowupVerdict blowup_criterion(double mass, double energy, double V0, double Vt0,
                               const ModelParameters& params) {
  const auto rep = validate_blowup_regime(params);
  require(rep.regime == Regime::blowup || rep.regime == Regime::both,
          "params fail the blow-up admissibility conditions");
  require(mass > 0.0, "mass must be positive");
  require(energy > 0.0, "the criterion assumes E[u0] > 0");
  require(V0 > 0.0, "V(0) must be positive");

  const auto dc = params.constants();
  require(dc.omega_c_valid && dc.omega_c_sq > 0.0, "omega_c^2 must be positive");
  require(dc.k_c > 0.0, "k_c must be positive");

  BlowupVerdict v;
  v.mass = mass;
  v.energy = energy;
  v.V0 = V0;
  v.Vt0 = Vt0;
  v.omega_c = std::sqrt(dc.omega_c_sq);
  v.k_c = dc.k_c;

  const double wm = v.omega_c * mass;
  v.x = energy * V0 / (wm * wm);
  v.lhs = Vt0 / wm;
  v.rhs = kFourRootTwo * blowup_threshold_F(v.x, dc.k_c);
  v.satisfied = v.lhs < v.rhs;

  // Equivalent polynomial forms of the inequality in the two sign cases.
  const double k = dc.k_c;
  const double EV = energy * V0;
  const double poly_lhs =
      (k * Vt0 * Vt0 - 32.0 * k * EV + 32.0 * (1.0 + k) * wm * wm) /
      (k * wm * wm);
  const double poly_rhs = 32.0 * std::pow(wm, 2.0 * k) / (k * std::pow(EV, k));
  if (Vt0 > 0.0 && v.x < 1.0) {
    v.polynomial_form_applicable = true;
    v.polynomial_form_satisfied = poly_lhs < poly_rhs;
  } else if (Vt0 < 0.0 && v.x >= 1.0) {
    v.polynomial_form_applicable = true;
    v.polynomial_form_satisfied = poly_lhs > poly_rhs;
  }
  v.forms_agree =
      !v.polynomial_form_applicable || (v.polynomial_form_satisfied == v.satisfied);
  return v;
}

ChirpedObservables chirped_observables(const Field& v0, double b,
                                       const ModelParameters& params) {
  require(v0.finite(), "v0 must be finite");
  ChirpedObservables out;

  const auto cons = conserved_quantities(v0, params);
  const auto vir = virial_quantities(v0, params);
  out.mass = cons.mass;
  out.E_v0 = cons.energy;
  out.V0 = vir.V;
  out.angular_term = 0.25 * vir.V_t;  // V_t of v0 is 4 Im int conj(v0) x.grad v0

  out.Vt0 = 4.0 * out.angular_term + 2.0 * b * out.V0;
  out.E_u0 = out.E_v0 + 0.5 * b * out.angular_term + b * b / 8.0 * out.V0;

  const Field u0 = chirp(v0, b);
  const auto cons_u = conserved_quantities(u0, params);
  const auto vir_u = virial_quantities(u0, params);
  out.V0_direct = vir_u.V;
  out.Vt0_direct = vir_u.V_t;
  out.E_u0_direct = cons_u.energy;

  auto rel = [](double a, double c) {
    const double scale = std::max({std::abs(a), std::abs(c), 1e-300});
    return std::abs(a - c) / scale;
  };
  out.max_rel_deviation = std::max(
      {rel(out.V0, out.V0_direct), rel(out.Vt0, out.Vt0_direct),
       rel(out.E_u0, out.E_u0_direct)});
  return out;
}

ChirpRanges chirp_b_ranges(const Field& v0, const ModelParameters& params) {
  const auto obs = chirped_observables(v0, 0.0, params);
  const double angular_scale =
      std::max(1.0, std::abs(obs.Vt0) + std::abs(obs.E_v0));
  if (std::abs(obs.angular_term) > 1e-8 * angular_scale)
    throw std::invalid_argument(
        "chirp_b_ranges requires real-valued v0 or Im int conj(v0)(x.grad v0) = 0");

  const auto dc = params.constants();
  require(dc.omega_c_valid && dc.omega_c_sq > 0.0, "omega_c^2 must be positive");
  require(dc.k_c > 0.0, "k_c must be positive (mass-supercritical regime)");

  const double E = obs.E_v0;
  const double X2 = obs.V0;  // ||x v0||^2
  const double wm = std::sqrt(dc.omega_c_sq) * obs.mass;
  const double k = dc.k_c;
  require(X2 > 0.0 && obs.mass > 0.0, "v0 must be nontrivial");

  ChirpRanges out;

  // Positive branch: hypotheses of the corollary's part (i).
  const bool hyp1 = E * X2 < wm * wm;
  bool hyp2 = false;
  double b_sq_cap2 = 0.0;
  if (hyp1) {
    const double denom = (1.0 + k) * wm * wm - k * E * X2;
    const double bracket = std::pow(std::pow(wm, 2.0 * k + 2.0) / denom, 1.0 / k);
    hyp2 = E * X2 < bracket;
    b_sq_cap2 = 8.0 / (X2 * X2) * bracket - 8.0 * E / X2;
  }
  if (hyp1 && hyp2) {
    const double b_sq_cap1 = 8.0 * (wm * wm - E * X2) / (X2 * X2);
    const double b1 = std::sqrt(std::min(b_sq_cap1, b_sq_cap2));
    const double b0 = E > 0.0 ? 0.0 : std::sqrt(-8.0 * E / X2);
    if (b1 > b0) out.positive_interval = std::make_pair(b0, b1);
  }

  // Negative branch: exists whenever E X2 / (omega_c M)^2 < (1+k)/k.
  if (E * X2 / (wm * wm) < (1.0 + k) / k) {
    auto satisfied = [&](double b) {
      const double E_u0 = E + b * b / 8.0 * X2;
      if (!(E_u0 > 0.0)) return false;
      const double Vt0 = 2.0 * b * X2;
      return blowup_criterion(obs.mass, E_u0, X2, Vt0, params).satisfied;
    };
    // Find a strictly negative b where the criterion holds, then bisect the
    // boundary of { b <= 0 : satisfied for all smaller b }.
    double lo = -1.0;
    int guard = 0;
    while (!satisfied(lo) && guard++ < 60) lo *= 2.0;
    if (guard <= 60) {
      double hi = 0.0;
      if (satisfied(hi - 1e-12)) {
        out.negative_threshold = 0.0;
      } else {
        for (int it = 0; it < 200 && hi - lo > 1e-10 * std::abs(lo); ++it) {
          const double mid = 0.5 * (lo + hi);
          (satisfied(mid) ? lo : hi) = mid;
        }
        out.negative_threshold = lo;
      }
    }
  }
  return out;
}

double pseudo_conformal_time(double tau, double b) {
  const double denom = 1.0 - b * tau;
  require(denom > 0.0, "pseudo-conformal time requires 1 - b tau > 0");
  return tau / denom;
}

Field pseudo_conformal_map(const Field& v, double tau, double b, int n_target) {
  const double t = pseudo_conformal_time(tau, b);
  const double s = 1.0 + b * t;  // dilation factor, equals 1/(1 - b tau)
  require(s > 0.0, "pseudo-conformal map requires 1 + b t > 0");

  const Field fine =
      (n_target > v.grid.npts[0]) ? resample_zero_pad(v, n_target) : v;

  Grid dilated = fine.grid;
  for (int a = 0; a < dilated.dim; ++a) dilated.length[a] *= s;

  Field u;
  u.grid = dilated;
  u.time = t;
  u.values.resize(fine.values.size());
  const double amp = std::pow(s, -0.5 * fine.grid.dim);
  for_each_index(dilated, [&](std::size_t flat, int i, int j, int k) {
    const double phase = 0.25 * b * radius_sq(dilated, i, j, k) / s;
    u.values[flat] =
        amp * complexd(std::cos(phase), std::sin(phase)) * fine.values[flat];
  });
  return u;
}

Field scattering_state(const Field& v_final, double b) {
  require(b > 0.0, "scattering_state requires b > 0");
  return chirp(free_propagate(v_final, -1.0 / b), b);
}

ScatteringResidual scattering_residual(const Field& u_t, double t,
                                       const Field& u_plus, double s) {
  require(s >= 0.0, "Sobolev index s must be >= 0");
  if (!(u_t.grid == u_plus.grid))
    throw std::invalid_argument("mismatched grids");
  Field diff = free_propagate(u_t, -t);
  for (std::size_t i = 0; i < diff.values.size(); ++i)
    diff.values[i] -= u_plus.values[i];
  ScatteringResidual out;
  out.residual_Hs = l2_norm(bessel(diff, s));
  double sup = 0.0;
  for (const auto& v : u_t.values) sup = std::max(sup, std::abs(v));
  out.decay_value = std::pow(1.0 + t, 0.5 * u_t.grid.dim) * sup;
  return out;
}

}  // namespace ghartree
