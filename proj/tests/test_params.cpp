#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ghartree/params.hpp"

using namespace ghartree;

namespace {

ModelParameters example_1d() {
  // the 1D low-power example: p = 1.8, gamma = 0.05, m = 0.55, M = 6, M0 = 4
  return ModelParameters(1, 1.8, 0.05, 1.0, 0.55, 6, 4);
}

ModelParameters example_3d() {
  return ModelParameters(3, 1.9, 0.5, 1.0, 3.0, 13, 7);
}

bool check_satisfied(const AdmissibilityReport& rep, const std::string& id) {
  for (const auto& c : rep.checks)
    if (c.id == id) return c.satisfied;
  FAIL("no check with id ", id);
  return false;
}

}  // namespace

TEST_CASE("structural invariants are enforced at construction") {
  CHECK_THROWS_AS(ModelParameters(0, 1.8, 0.05, 1.0, 0.5, 6, 4), std::invalid_argument);
  CHECK_THROWS_AS(ModelParameters(4, 1.8, 0.05, 1.0, 0.5, 6, 4), std::invalid_argument);
  CHECK_THROWS_AS(ModelParameters(1, 0.9, 0.05, 1.0, 0.5, 6, 4), std::invalid_argument);
  CHECK_THROWS_AS(ModelParameters(1, 1.8, 1.5, 1.0, 0.5, 6, 4), std::invalid_argument);
  CHECK_THROWS_AS(ModelParameters(1, 1.8, 0.05, 1.0, -0.5, 6, 4), std::invalid_argument);
  CHECK_THROWS_AS(ModelParameters(1, 1.8, 0.05, 1.0, 0.5, 0, 4), std::invalid_argument);
  const double nan = std::nan("");
  CHECK_THROWS_AS(ModelParameters(1, nan, 0.05, 1.0, 0.5, 6, 4), std::invalid_argument);
}

TEST_CASE("1D example is well-posed") {
  const auto rep = validate_wellposedness(example_1d());
  CHECK(rep.all_satisfied());
  CHECK(rep.regime == Regime::wellposed);
  CHECK(rep.violations.empty());
}

TEST_CASE("p below 4/3 is rejected with the right condition id") {
  const ModelParameters P(1, 1.3, 0.05, 1.0, 0.55, 6, 4);
  const auto rep = validate_wellposedness(P);
  CHECK_FALSE(rep.all_satisfied());
  CHECK_FALSE(check_satisfied(rep, "p.lower"));
}

TEST_CASE("m above the weight window is rejected, endpoint 2.25") {
  const ModelParameters P(1, 1.8, 0.05, 1.0, 3.0, 6, 4);
  const auto rep = validate_wellposedness(P);
  CHECK_FALSE(rep.all_satisfied());
  for (const auto& c : rep.checks)
    if (c.id == "m.upper") {
      CHECK_FALSE(c.satisfied);
      CHECK(c.rhs == doctest::Approx(2.25).epsilon(1e-14));
    }
}

TEST_CASE("3D blow-up example is admissible") {
  const auto rep = validate_blowup_regime(example_3d());
  CHECK(rep.all_satisfied());
  CHECK((rep.regime == Regime::blowup || rep.regime == Regime::both));
}

TEST_CASE("1D example fails the blow-up gamma window") {
  // N(p-1)-2 = -1.2 < 0, so no positive gamma qualifies
  const auto rep = validate_blowup_regime(example_1d());
  CHECK_FALSE(rep.all_satisfied());
  CHECK_FALSE(check_satisfied(rep, "blowup.gamma.upper"));
}

TEST_CASE("L2-critical boundary: s_c = 0 rejected for the supercritical regime") {
  const ModelParameters P(3, 1.9, 0.7, 1.0, 3.0, 13, 7);
  CHECK(P.constants().s_c == doctest::Approx(0.0).epsilon(1e-14));
  const auto rep = validate_blowup_regime(P);
  CHECK_FALSE(check_satisfied(rep, "blowup.sc"));
}

TEST_CASE("derived constants match the closed forms") {
  const auto dc = example_3d().constants();
  CHECK(dc.s_c == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  CHECK(dc.k_c == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(dc.omega_c_sq == doctest::Approx(9.0 * 0.2 / (8.0 * 2.2)).epsilon(1e-12));
  CHECK(dc.omega_c_valid);

  const auto dc1 = example_1d().constants();
  CHECK(dc1.s_c == doctest::Approx(-0.78125).epsilon(1e-12));
}

TEST_CASE("omega_c^2 flags a vanishing denominator") {
  // N(p-2)+N-gamma = 0 at N=1, p=1.5, gamma=0.5
  const ModelParameters P(1, 1.5, 0.5, 1.0, 1.0, 6, 4);
  const auto dc = P.constants();
  CHECK_FALSE(dc.omega_c_valid);
}

TEST_CASE("suggest_orders reproduces the frozen examples") {
  const auto s1 = suggest_orders(1, 1.8, 0.05, 0.55);
  CHECK(s1.M0_min == 2);
  CHECK(s1.M_min == 6);
  const auto s3 = suggest_orders(3, 1.9, 0.5, 3.0);
  CHECK(s3.M0_min == 7);
  CHECK(s3.M_min == 13);
}

TEST_CASE("suggest_orders rejects the boundary weight") {
  // the exact floating-point endpoint of the window (~2.25)
  const double m_hi = (1.0 - 2.0 * 0.05) / (2.0 * (2.0 - 1.8));
  CHECK_THROWS_AS(suggest_orders(1, 1.8, 0.05, m_hi), std::invalid_argument);
  CHECK_NOTHROW(suggest_orders(1, 1.8, 0.05, m_hi - 1e-9));
}

TEST_CASE("suggest_orders output validates as well-posed; s_c sign iff gamma window") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> up(4.0 / 3.0 + 1e-3, 2.0 - 1e-3);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> ud(1, 3);
  int accepted = 0;
  while (accepted < 1000) {
    const int N = ud(rng);
    const double p = up(rng);
    const double g = u01(rng) * N * (3.0 * p - 4.0) / (2.0 * p);
    if (!(g > 1e-6)) continue;
    const double m_lo = std::max((2.0 * g + N) / (4.0 * (p - 1.0)), N / 2.0);
    const double m_hi = (N - 2.0 * g) / (2.0 * (2.0 - p));
    if (!(m_lo < m_hi)) continue;
    const double m = m_lo + (0.1 + 0.8 * u01(rng)) * (m_hi - m_lo);
    ++accepted;

    const auto orders = suggest_orders(N, p, g, m);
    const ModelParameters P(N, p, g, 1.0, m, orders.M_min, orders.M0_min);
    const auto rep = validate_wellposedness(P);
    REQUIRE(rep.all_satisfied());

    const bool sc_pos = P.constants().s_c > 0.0;
    CHECK(sc_pos == (g < N * (p - 1.0) - 2.0));
  }
}

TEST_CASE("well-posed params always have a nonempty m-window") {
  const auto P = example_1d();
  REQUIRE(validate_wellposedness(P).all_satisfied());
  const double m_lo =
      std::max((2.0 * P.gamma() + P.dim()) / (4.0 * (P.p() - 1.0)), P.dim() / 2.0);
  const double m_hi = (P.dim() - 2.0 * P.gamma()) / (2.0 * (2.0 - P.p()));
  CHECK(m_lo < m_hi);
}

TEST_CASE("contraction polynomials: frozen values") {
  SUBCASE("R = 0 gives all zeros") {
    const auto c = contraction_polynomials(1.0, 0.0, example_1d());
    CHECK(c.G1 == 0.0);
    CHECK(c.G2 == 0.0);
    CHECK(c.J1 == 0.0);
    CHECK(c.J2 == 0.0);
    CHECK_FALSE(c.saturated);
  }
  SUBCASE("lambda = 1, R = 1, K = 3") {
    // any (M, M0, N) with M + M0 - N = 3
    const ModelParameters P(1, 1.8, 0.05, 1.0, 0.55, 2, 2);
    const auto c = contraction_polynomials(1.0, 1.0, P);
    CHECK(c.G1 == doctest::Approx(4.0).epsilon(1e-14));
  }
  SUBCASE("lambda = 2, R = 1, K = 1") {
    const ModelParameters P(1, 1.8, 0.05, 1.0, 0.55, 1, 1);
    const auto c = contraction_polynomials(2.0, 1.0, P);
    CHECK(c.G1 == doctest::Approx(1.0 + std::pow(2.0, -0.2)).epsilon(1e-14));
  }
}

TEST_CASE("contraction polynomials increase in R and decrease in lambda") {
  const auto P = example_1d();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> upos(0.1, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double lam = upos(rng), R = upos(rng);
    const auto base = contraction_polynomials(lam, R, P);
    const auto moreR = contraction_polynomials(lam, R * 1.1, P);
    const auto moreL = contraction_polynomials(lam * 1.1, R, P);
    CHECK(moreR.G1 > base.G1);
    CHECK(moreR.G2 > base.G2);
    CHECK(moreR.J1 > base.J1);
    CHECK(moreR.J2 > base.J2);
    CHECK(moreL.G1 < base.G1);
    CHECK(moreL.G2 < base.G2);
    CHECK(moreL.J1 < base.J1);
    CHECK(moreL.J2 < base.J2);
  }
}

TEST_CASE("contraction polynomials saturate on overflow") {
  const auto c = contraction_polynomials(1e-300, 10.0, example_1d());
  CHECK(c.saturated);
  CHECK(std::isfinite(c.G1));
}

TEST_CASE("existence time: vanishing data caps at T = 1") {
  const auto P = example_1d();
  const auto et = existence_time_estimate(1e-9, 1.0, P);
  CHECK(et.found);
  CHECK(et.T == 1.0);
}

TEST_CASE("existence time is monotone in lambda") {
  const auto P = example_1d();
  double prev = 0.0;
  for (double lam : {0.5, 1.0, 2.0, 4.0}) {
    const auto et = existence_time_estimate(1.0, lam, P);
    REQUIRE(et.found);
    CHECK(et.T >= prev);
    prev = et.T;
  }
}

TEST_CASE("existence time agrees with a direct scan of the inequalities") {
  const auto P = example_1d();
  const double eta = 1.0, lambda = 1.0;
  const auto et = existence_time_estimate(eta, lambda, P);
  REQUIRE(et.found);
  REQUIRE(et.T < 1.0);

  const double R = 2.0 * eta;
  const auto poly = contraction_polynomials(lambda, R, P);
  const double expo = std::floor(P.dim() / 2.0) + 1.0 + P.m();
  auto ok = [&](double T) {
    const double w = std::pow(std::sqrt(1.0 + T * T), expo);
    return 0.5 * w + T * w * poly.G1 * poly.G2 / R <= 1.0 &&
           T * w * (eta + poly.G1 * poly.G2) <= lambda / 2.0 &&
           T * w * (poly.J1 * poly.G2 + poly.G1 * poly.J2) < 1.0;
  };
  CHECK(ok(et.T * (1.0 - 1e-6)));
  CHECK_FALSE(ok(et.T * (1.0 + 1e-6)));
}

TEST_CASE("regime label covers both admissibility families") {
  CHECK(example_1d().regime() == Regime::wellposed);
  const auto r3 = example_3d().regime();
  CHECK((r3 == Regime::blowup || r3 == Regime::both));
}
