#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace ghartree {

/// Which chirp phase convention a run uses: exp(i b |x|^2 / 4) (quarter)
/// or exp(i b |x|^2 / 2) (half). All internal identities assume `quarter`;
/// `half` is handled by the substitution b -> 2b at the call site.
enum class ChirpConvention { quarter, half };

inline const char* to_string(ChirpConvention c) {
  return c == ChirpConvention::quarter ? "exp(i*b*|x|^2/4)" : "exp(i*b*|x|^2/2)";
}

/// Scaling-critical constants derived from the model parameters.
struct DerivedConstants {
  double s_c = 0.0;         // N/2 - (gamma+2)/(2(p-1))
  double k_c = 0.0;         // s_c * (p-1)
  double omega_c_sq = 0.0;  // N^2 (N(p-2)+N-gamma-2) / (8 (N(p-2)+N-gamma))
  bool omega_c_valid = true;  // false when the denominator above vanishes
};

enum class Regime { wellposed, blowup, both, neither };

const char* to_string(Regime r);

struct ConditionCheck {
  std::string id;           // stable identifier, e.g. "m.upper"
  std::string description;  // human-readable inequality
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

struct AdmissibilityReport {
  Regime regime = Regime::neither;
  std::vector<ConditionCheck> checks;
  std::vector<std::string> violations;  // messages for unsatisfied checks

  bool all_satisfied() const;
  std::string to_text() const;       // line-oriented table
  std::string to_key_value() const;  // structured key/value lines
};

/// Model parameters of the generalized Hartree equation
///   i u_t + Laplacian u + mu (|x|^{-(N-gamma)} * |u|^p) |u|^{p-2} u = 0
/// together with the weighted-space orders (m, M, M0) and the chirp b.
///
/// Structural invariants (checked at construction): N in {1,2,3}, p > 1,
/// 0 < gamma < N, m > 0, M >= 1, M0 >= 1, all entries finite. Regime
/// admissibility is recomputed on demand, never cached, so it cannot go
/// stale.
class ModelParameters {
 public:
  ModelParameters(int dim, double p, double gamma, std::complex<double> mu,
                  double m, int M, int M0, double b = 0.0,
                  ChirpConvention chirp = ChirpConvention::quarter);

  int dim() const { return dim_; }
  double p() const { return p_; }
  double gamma() const { return gamma_; }
  std::complex<double> mu() const { return mu_; }
  double m() const { return m_; }
  int M() const { return M_; }
  int M0() const { return M0_; }
  double b() const { return b_; }
  ChirpConvention chirp_convention() const { return chirp_; }

  /// Highest Sobolev order tracked by the weighted norm, M + M0 - N.
  int sobolev_order() const { return M_ + M0_ - dim_; }

  DerivedConstants constants() const;
  Regime regime() const;

  /// Copy with a different chirp parameter (everything else unchanged).
  ModelParameters with_b(double b) const;

 private:
  int dim_;
  double p_;
  double gamma_;
  std::complex<double> mu_;
  double m_;
  int M_;
  int M0_;
  double b_;
  ChirpConvention chirp_;
};

/// Local well-posedness admissibility: p-range, gamma-range, the weight
/// window for m and the minimal orders for M0 and M. Violations are
/// reported, never thrown.
AdmissibilityReport validate_wellposedness(const ModelParameters& params);

/// Blow-up admissibility: the stronger p/gamma ranges, the shifted weight
/// window, mu > 0 and s_c > 0.
AdmissibilityReport validate_blowup_regime(const ModelParameters& params);

DerivedConstants derived_constants(const ModelParameters& params);

struct SuggestedOrders {
  int M0_min = 0;
  int M_min = 0;
};

/// Smallest integer orders (M0, M) compatible with (N, p, gamma, m).
/// Throws std::invalid_argument when m falls outside its admissible window.
SuggestedOrders suggest_orders(int dim, double p, double gamma, double m);

struct ContractionPolynomials {
  double G1 = 0.0;
  double G2 = 0.0;
  double J1 = 0.0;
  double J2 = 0.0;
  bool saturated = false;  // true when a term overflowed
};

/// The fixed-point polynomials G1, G2 and the contraction polynomials
/// J1, J2 evaluated termwise at (lambda, R).
ContractionPolynomials contraction_polynomials(double lambda, double R,
                                               const ModelParameters& params);

struct ExistenceConstants {
  double c = 1.0;
  double c1 = 1.0;
  double c3 = 1.0;
};

struct ExistenceTime {
  double T = 0.0;
  double R = 0.0;   // the fixed-point radius 2*c*eta
  bool found = false;
};

/// Largest T in (0, 1] satisfying the three smallness conditions of the
/// contraction argument, located by bisection to relative tolerance 1e-10.
/// The constants (c, c1, c3) are not quantified by the theory; they default
/// to 1, making T a relative rather than absolute prediction.
ExistenceTime existence_time_estimate(double eta, double lambda,
                                      const ModelParameters& params,
                                      const ExistenceConstants& constants = {});

}  // namespace ghartree
