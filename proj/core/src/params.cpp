#include "ghartree/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ghartree {

namespace {

bool all_finite(std::initializer_list<double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

void push_check(AdmissibilityReport& rep, std::string id, std::string desc,
                double lhs, double rhs, bool ok) {
  if (!ok) {
    std::ostringstream msg;
    msg << id << ": " << desc << " violated (" << lhs << " vs " << rhs << ")";
    rep.violations.push_back(msg.str());
  }
  rep.checks.push_back({std::move(id), std::move(desc), lhs, rhs, ok});
}

// Strict "lhs < rhs" check.
void require_lt(AdmissibilityReport& rep, std::string id, std::string desc,
                double lhs, double rhs) {
  push_check(rep, std::move(id), std::move(desc), lhs, rhs, lhs < rhs);
}

bool wellposed_conditions(const ModelParameters& P, AdmissibilityReport& rep) {
  const double N = P.dim(), p = P.p(), g = P.gamma(), m = P.m();
  require_lt(rep, "p.lower", "4/3 < p", 4.0 / 3.0, p);
  require_lt(rep, "p.upper", "p < 2", p, 2.0);
  require_lt(rep, "gamma.upper", "gamma < N(3p-4)/(2p)", g,
             N * (3.0 * p - 4.0) / (2.0 * p));
  const double m_lo = std::max((2.0 * g + N) / (4.0 * (p - 1.0)), N / 2.0);
  const double m_hi = (N - 2.0 * g) / (2.0 * (2.0 - p));
  require_lt(rep, "m.lower", "max{(2g+N)/(4(p-1)), N/2} < m", m_lo, m);
  require_lt(rep, "m.upper", "m < (N-2g)/(2(2-p))", m, m_hi);
  const double M0_lo = std::max(
      (N - g) * (2.0 * m * p - N) / (4.0 * m * (p - 1.0) - N), N + m);
  require_lt(rep, "M0.min", "M0 > max{(N-g)(2mp-N)/(4m(p-1)-N), N+m}", M0_lo,
             static_cast<double>(P.M0()));
  const double half_N = std::floor(N / 2.0);
  const double M_lo = std::max(P.M0() - N + 2.0 * half_N + 2.0,
                               4.0 * half_N + 5.0 + m);
  require_lt(rep, "M.min", "M > max{M0-N+2[N/2]+2, 4[N/2]+5+m}", M_lo,
             static_cast<double>(P.M()));
  size_t first = rep.checks.size() - 7;
  return std::all_of(rep.checks.begin() + first, rep.checks.end(),
                     [](const ConditionCheck& c) { return c.satisfied; });
}

bool blowup_conditions(const ModelParameters& P, AdmissibilityReport& rep) {
  const double N = P.dim(), p = P.p(), g = P.gamma(), m = P.m();
  require_lt(rep, "blowup.p.lower", "max{(N+2)/N, 4/3} < p",
             std::max((N + 2.0) / N, 4.0 / 3.0), p);
  require_lt(rep, "blowup.p.upper", "p < 2", p, 2.0);
  const double g_hi = std::min({N * (p - 1.0) - 2.0,
                                ((N + 2.0) * (p - 1.0) - 2.0) / 2.0,
                                N * (3.0 * p - 4.0) / (2.0 * p)});
  require_lt(rep, "blowup.gamma.upper",
             "gamma < min{N(p-1)-2, ((N+2)(p-1)-2)/2, N(3p-4)/(2p)}", g, g_hi);
  const double m_lo = std::max((N + 2.0) / 2.0, (2.0 * g + N) / (4.0 * (p - 1.0)));
  const double m_hi = (N - 2.0 * g) / (2.0 * (2.0 - p));
  require_lt(rep, "blowup.m.lower", "max{(N+2)/2, (2g+N)/(4(p-1))} < m", m_lo, m);
  require_lt(rep, "blowup.m.upper", "m < (N-2g)/(2(2-p))", m, m_hi);
  push_check(rep, "blowup.mu", "mu real and positive", P.mu().real(), 0.0,
             P.mu().imag() == 0.0 && P.mu().real() > 0.0);
  const DerivedConstants dc = P.constants();
  require_lt(rep, "blowup.sc", "s_c > 0 (mass-supercritical)", 0.0, dc.s_c);
  size_t first = rep.checks.size() - 7;
  return std::all_of(rep.checks.begin() + first, rep.checks.end(),
                     [](const ConditionCheck& c) { return c.satisfied; });
}

Regime combine(bool wellposed, bool blowup) {
  if (wellposed && blowup) return Regime::both;
  if (wellposed) return Regime::wellposed;
  if (blowup) return Regime::blowup;
  return Regime::neither;
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::wellposed: return "wellposed";
    case Regime::blowup: return "blowup";
    case Regime::both: return "both";
    case Regime::neither: return "neither";
  }
  return "?";
}

bool AdmissibilityReport::all_satisfied() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ConditionCheck& c) { return c.satisfied; });
}

std::string AdmissibilityReport::to_text() const {
  std::ostringstream out;
  out << "regime = " << to_string(regime) << "\n";
  for (const auto& c : checks) {
    out << (c.satisfied ? "  ok   " : "  FAIL ") << c.id << "  " << c.description
        << "  [lhs=" << c.lhs << ", rhs=" << c.rhs << "]\n";
  }
  return out.str();
}

std::string AdmissibilityReport::to_key_value() const {
  std::ostringstream out;
  out << "regime = " << to_string(regime) << "\n";
  for (const auto& c : checks) {
    out << "check." << c.id << ".satisfied = " << (c.satisfied ? "true" : "false")
        << "\n";
    out << "check." << c.id << ".lhs = " << c.lhs << "\n";
    out << "check." << c.id << ".rhs = " << c.rhs << "\n";
  }
  return out.str();
}

ModelParameters::ModelParameters(int dim, double p, double gamma,
                                 std::complex<double> mu, double m, int M,
                                 int M0, double b, ChirpConvention chirp)
    : dim_(dim), p_(p), gamma_(gamma), mu_(mu), m_(m), M_(M), M0_(M0), b_(b),
      chirp_(chirp) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("N must be 1, 2 or 3");
  if (!all_finite({p, gamma, m, b, mu.real(), mu.imag()}))
    throw std::invalid_argument("non-finite model parameter");
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
  if (!(gamma > 0.0 && gamma < dim))
    throw std::invalid_argument("gamma must lie in (0, N)");
  if (!(m > 0.0)) throw std::invalid_argument("m must be positive");
  if (M < 1 || M0 < 1) throw std::invalid_argument("M and M0 must be >= 1");
}

DerivedConstants ModelParameters::constants() const {
  DerivedConstants dc;
  dc.s_c = dim_ / 2.0 - (gamma_ + 2.0) / (2.0 * (p_ - 1.0));
  dc.k_c = dc.s_c * (p_ - 1.0);
  const double N = dim_;
  const double denom = 8.0 * (N * (p_ - 2.0) + N - gamma_);
  if (denom == 0.0) {
    dc.omega_c_valid = false;
    dc.omega_c_sq = std::numeric_limits<double>::quiet_NaN();
  } else {
    dc.omega_c_sq = N * N * (N * (p_ - 2.0) + N - gamma_ - 2.0) / denom;
  }
  return dc;
}

Regime ModelParameters::regime() const {
  AdmissibilityReport scratch;
  const bool wp = wellposed_conditions(*this, scratch);
  const bool bu = blowup_conditions(*this, scratch);
  return combine(wp, bu);
}

ModelParameters ModelParameters::with_b(double b) const {
  ModelParameters copy = *this;
  copy.b_ = b;
  return copy;
}

AdmissibilityReport validate_wellposedness(const ModelParameters& params) {
  AdmissibilityReport rep;
  const bool wp = wellposed_conditions(params, rep);
  AdmissibilityReport scratch;
  const bool bu = blowup_conditions(params, scratch);
  rep.regime = combine(wp, bu);
  return rep;
}

AdmissibilityReport validate_blowup_regime(const ModelParameters& params) {
  AdmissibilityReport rep;
  const bool bu = blowup_conditions(params, rep);
  AdmissibilityReport scratch;
  const bool wp = wellposed_conditions(params, scratch);
  rep.regime = combine(wp, bu);
  return rep;
}

DerivedConstants derived_constants(const ModelParameters& params) {
  return params.constants();
}

SuggestedOrders suggest_orders(int dim, double p, double gamma, double m) {
  const double N = dim;
  const double m_lo = std::max((2.0 * gamma + N) / (4.0 * (p - 1.0)), N / 2.0);
  const double m_hi = (N - 2.0 * gamma) / (2.0 * (2.0 - p));
  if (!(m > m_lo && m < m_hi))
    throw std::invalid_argument("weight out of range: m must lie strictly in (" +
                                std::to_string(m_lo) + ", " +
                                std::to_string(m_hi) + ")");
  // Smallest integer strictly above a bound.
  auto next_int = [](double bound) {
    return static_cast<int>(std::floor(bound)) + 1;
  };
  SuggestedOrders s;
  const double M0_lo = std::max(
      (N - gamma) * (2.0 * m * p - N) / (4.0 * m * (p - 1.0) - N), N + m);
  s.M0_min = std::max(1, next_int(M0_lo));
  const double half_N = std::floor(N / 2.0);
  const double M_lo = std::max(s.M0_min - N + 2.0 * half_N + 2.0,
                               4.0 * half_N + 5.0 + m);
  s.M_min = std::max(1, next_int(M_lo));
  return s;
}

ContractionPolynomials contraction_polynomials(double lambda, double R,
                                               const ModelParameters& params) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(R >= 0.0)) throw std::invalid_argument("R must be nonnegative");
  const int K = params.sobolev_order();
  if (K < 1) throw std::invalid_argument("M + M0 - N must be at least 1");
  const double p = params.p();

  ContractionPolynomials out;
  out.G1 = std::pow(R, p);
  for (int k = 1; k <= K; ++k)
    out.G1 += std::pow(lambda, -(2.0 * k - p)) * std::pow(R, 2.0 * k);
  out.G2 = 0.0;
  for (int k = 0; k <= K; ++k)
    out.G2 += std::pow(lambda, -(2.0 * (k + 1) - p)) * std::pow(R, 2.0 * k + 1);
  out.J1 = std::pow(R, p - 1.0) +
           std::pow(lambda, -(6.0 - 2.0 * p)) * std::pow(R, 5.0 - p);
  for (int k = 1; k <= K; ++k) {
    out.J1 += std::pow(lambda, -2.0 * (2.0 * k - p)) * std::pow(R, 4.0 * k - p - 1.0);
    out.J1 += std::pow(lambda, -(2.0 * k - p)) * std::pow(R, 2.0 * k - 1.0);
  }
  out.J2 = std::pow(lambda, -(6.0 - 2.0 * p)) * std::pow(R, 4.0 - p);
  for (int k = 1; k <= K; ++k) {
    out.J2 += std::pow(lambda, -2.0 * (2.0 * (k + 1) - p)) *
              std::pow(R, 4.0 * k - p + 2.0);
    out.J2 += std::pow(lambda, -(2.0 * (k + 1) - p)) * std::pow(R, 2.0 * k);
  }
  if (!all_finite({out.G1, out.G2, out.J1, out.J2})) {
    out.saturated = true;
    const double sat = std::numeric_limits<double>::max();
    if (!std::isfinite(out.G1)) out.G1 = sat;
    if (!std::isfinite(out.G2)) out.G2 = sat;
    if (!std::isfinite(out.J1)) out.J1 = sat;
    if (!std::isfinite(out.J2)) out.J2 = sat;
  }
  return out;
}

ExistenceTime existence_time_estimate(double eta, double lambda,
                                      const ModelParameters& params,
                                      const ExistenceConstants& constants) {
  if (!(eta > 0.0) || !(lambda > 0.0))
    throw std::invalid_argument("eta and lambda must be positive");
  if (!(constants.c > 0.0 && constants.c1 > 0.0 && constants.c3 > 0.0))
    throw std::invalid_argument("existence constants must be positive");

  ExistenceTime result;
  result.R = 2.0 * constants.c * eta;
  const auto poly = contraction_polynomials(lambda, result.R, params);
  const double G1G2 = poly.G1 * poly.G2;
  const double JG = poly.J1 * poly.G2 + poly.G1 * poly.J2;
  const double expo = std::floor(params.dim() / 2.0) + 1.0 + params.m();

  auto ok = [&](double T) {
    const double w = std::pow(std::sqrt(1.0 + T * T), expo);
    const bool c1ok =
        0.5 * w + constants.c * T * w * G1G2 / result.R <= 1.0;
    const bool c2ok = constants.c1 * T * w * (eta + G1G2) <= lambda / 2.0;
    const bool c3ok = constants.c3 * T * w * JG < 1.0;
    return c1ok && c2ok && c3ok;
  };

  if (ok(1.0)) {
    result.T = 1.0;
    result.found = true;
    return result;
  }
  double lo = std::numeric_limits<double>::min();
  if (!ok(lo)) {
    result.T = 0.0;
    result.found = false;
    return result;
  }
  double hi = 1.0;
  while ((hi - lo) > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  result.T = lo;
  result.found = true;
  return result;
}

}  // namespace ghartree
