#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ghartree/evolution.hpp"

using namespace ghartree;
using std::complex;

namespace {

ModelParameters example_1d(double mu = 1.0) {
  return ModelParameters(1, 1.8, 0.05, mu, 0.55, 6, 4);
}

double rel_l2_diff(const Field& a, const Field& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("hartree nonlinearity: zero field, gauge equivariance, plane wave") {
  const auto P = example_1d();
  const Grid g = make_grid(1, 40.0, 256);

  CHECK(l2_norm(hartree_nonlinearity(zero_field(g), P)) == 0.0);

  const Field f = sample_gaussian(g, 1.0, 1.0);
  const Field nf = hartree_nonlinearity(f, P);
  const complexd phase = std::polar(1.0, 0.8);
  Field rotated = f;
  for (auto& v : rotated.values) v *= phase;
  const Field n_rotated = hartree_nonlinearity(rotated, P);
  double max_dev = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    max_dev = std::max(max_dev, std::abs(n_rotated.values[i] - phase * nf.values[i]));
  CHECK(max_dev < 1e-12);

  // constant-modulus input: the default zero-mode policy kills the Hartree
  // potential, the cellavg policy keeps a positive constant
  const double k = 2.0 * M_PI / 40.0 * 3;
  const Field pw = sample_function(g, [&](const std::array<double, 3>& x) {
    return 0.7 * complexd(std::cos(k * x[0]), std::sin(k * x[0]));
  });
  CHECK(l2_norm(hartree_nonlinearity(pw, P)) < 1e-10 * l2_norm(pw));
  const Field npw = hartree_nonlinearity(pw, P, 0.0, ZeroModePolicy::cellavg);
  CHECK(l2_norm(npw) > 1e-3 * l2_norm(pw));
}

TEST_CASE("modulus floor regularizes |u|^{p-2} near zeros") {
  const auto P = example_1d();
  const Grid g = make_grid(1, 40.0, 256);
  // a field with an exact zero at the box center
  Field f = sample_function(g, [&](const std::array<double, 3>& x) {
    return complexd(std::sin(2.0 * M_PI / 40.0 * x[0]), 0.0);
  });
  const Field plain = hartree_nonlinearity(f, P);
  const Field floored = hartree_nonlinearity(f, P, 1e-6);
  CHECK(plain.finite());
  CHECK(floored.finite());
  CHECK(rel_l2_diff(floored, plain) < 1e-2);
}

TEST_CASE("nonlinear phase substep preserves the modulus pointwise") {
  const auto P = example_1d();
  const Grid g = make_grid(1, 40.0, 512);
  IntegratorConfig cfg;
  const Field f = chirp(sample_gaussian(g, 1.0, 1.0), 1.5);
  const Field stepped = nonlinear_phase_step(f, P, cfg, 0.0, 0.05);
  double max_dev = 0.0, mass_before = 0.0, mass_after = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    max_dev = std::max(max_dev,
                       std::abs(std::abs(stepped.values[i]) - std::abs(f.values[i])));
    mass_before += std::norm(f.values[i]);
    mass_after += std::norm(stepped.values[i]);
  }
  CHECK(max_dev < 1e-13);
  CHECK(std::abs(mass_after - mass_before) / mass_before < 1e-13);
}

TEST_CASE("strang_step with mu = 0 is exactly the free propagator") {
  const auto P = example_1d(0.0);
  const Grid g = make_grid(1, 40.0, 256);
  const Field f = sample_gaussian(g, 1.0, 1.0);
  IntegratorConfig cfg;
  const Field stepped = strang_step(f, 0.0, 1e-2, P, cfg);
  const Field alias = free_propagate(f, 1e-2);
  CHECK(rel_l2_diff(stepped, alias) == 0.0);
}

TEST_CASE("full strang step conserves mass to roundoff") {
  const auto P = example_1d();
  const Grid g = make_grid(1, 40.0, 512);
  Field f = sample_gaussian(g, 1.0, 1.0);
  IntegratorConfig cfg;
  const double m0 = l2_norm_sq(f);
  for (int k = 0; k < 20; ++k) f = strang_step(f, k * 1e-3, 1e-3, P, cfg);
  CHECK(std::abs(l2_norm_sq(f) - m0) / m0 < 20 * 1e-10);
}

TEST_CASE("time reversal returns the state") {
  const auto P = example_1d();
  const Grid g = make_grid(1, 40.0, 512);
  const Field f = sample_gaussian(g, 1.0, 1.0);
  IntegratorConfig cfg;
  const Field fwd = strang_step(f, 0.0, 5e-3, P, cfg);
  const Field back = strang_step(fwd, 5e-3, -5e-3, P, cfg);
  CHECK(rel_l2_diff(back, f) < 1e-8);
}

TEST_CASE("strang_step rejects a zero step") {
  const auto P = example_1d();
  const Grid g = make_grid(1, 40.0, 256);
  IntegratorConfig cfg;
  CHECK_THROWS_AS(strang_step(sample_gaussian(g, 1.0, 1.0), 0.0, 0.0, P, cfg),
                  std::invalid_argument);
}

TEST_CASE("evolve: linear gaussian matches the closed form") {
  const auto P = example_1d(0.0);
  const Grid g = make_grid(1, 40.0, 1024);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.5;
  cfg.record_every = 100;
  const auto traj = evolve(sample_gaussian(g, 1.0, 1.0), P, cfg);
  CHECK(traj.halt == HaltReason::completed);

  const complex<double> denom(1.0, 4.0 * 0.5);
  const Field exact = sample_function(g, [&](const std::array<double, 3>& x) {
    return std::exp(-x[0] * x[0] / denom) / std::sqrt(denom);
  });
  CHECK(rel_l2_diff(traj.final_field, exact) < 1e-9);
}

TEST_CASE("evolve: short focusing run conserves mass and momentum") {
  const auto P = example_1d();
  const Grid g = make_grid(1, 40.0, 512);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.1;
  cfg.record_every = 10;
  // wide gaussian: boundary decay ~2e-9 keeps |u|^{p-2} bounded on the box
  const auto traj = evolve(sample_gaussian(g, 1.0, 0.05), P, cfg);
  REQUIRE(traj.halt == HaltReason::completed);
  const auto& first = traj.records.front();
  for (const auto& r : traj.records) {
    CHECK(std::abs(r.mass - first.mass) / first.mass < 1e-8);
    CHECK(std::abs(r.momentum[0]) < 1e-8);
  }
}

TEST_CASE("fast-decaying tails destabilize the low-power phase potential") {
  // |u|^{p-2} with p < 2 grows without bound as |u| -> 0; a width-1 gaussian
  // reaches e^{-400} at the box edge and its tail phases alias, which shows
  // up as spectral-tail growth. The admissible data class bounds <x>^m |u|
  // from below precisely to rule this out.
  const auto P = example_1d();
  const Grid g = make_grid(1, 40.0, 512);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.1;
  cfg.record_every = 100;
  const auto narrow = evolve(sample_gaussian(g, 1.0, 1.0), P, cfg);
  const auto wide = evolve(sample_gaussian(g, 1.0, 0.05), P, cfg);
  CHECK(narrow.records.back().spectral_tail_fraction > 1e3 * wide.records.back().spectral_tail_fraction);
}

TEST_CASE("evolve: t_end = 0 gives a single record and completes") {
  const auto P = example_1d();
  const Grid g = make_grid(1, 40.0, 256);
  IntegratorConfig cfg;
  cfg.t_end = 0.0;
  const auto traj = evolve(sample_gaussian(g, 1.0, 1.0), P, cfg);
  CHECK(traj.records.size() == 1);
  CHECK(traj.halt == HaltReason::completed);
}

TEST_CASE("evolve records snapshots at requested times") {
  const auto P = example_1d();
  const Grid g = make_grid(1, 40.0, 256);
  IntegratorConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 0.1;
  cfg.snapshot_times = {0.0, 0.05, 0.1};
  const auto traj = evolve(sample_gaussian(g, 1.0, 1.0), P, cfg);
  REQUIRE(traj.snapshots.size() == 3);
  CHECK(traj.snapshots[0].time == doctest::Approx(0.0));
  CHECK(traj.snapshots[1].time == doctest::Approx(0.05));
  CHECK(traj.snapshots[2].time == doctest::Approx(0.1));
}

TEST_CASE("second-order global convergence against a refined reference") {
  const auto P = example_1d();
  const Grid g = make_grid(1, 40.0, 256);
  const Field u0 = sample_gaussian(g, 1.0, 1.0);
  const double t_end = 0.25;
  const double dt0 = 2e-3;

  auto final_state = [&](double dt) {
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.record_every = 1 << 20;  // records off the hot path
    return evolve(u0, P, cfg).final_field;
  };
  const Field ref = final_state(dt0 / 64.0);
  const double e0 = rel_l2_diff(final_state(dt0), ref);
  const double e1 = rel_l2_diff(final_state(dt0 / 2.0), ref);
  const double e2 = rel_l2_diff(final_state(dt0 / 4.0), ref);
  CHECK(e0 / e1 > 3.0);
  CHECK(e0 / e1 < 5.0);
  CHECK(e1 / e2 > 3.0);
  CHECK(e1 / e2 < 5.0);
}

TEST_CASE("blowup monitor decisions") {
  IntegratorConfig cfg;  // factor 1e3, tail threshold 0.1
  ObservableRecord initial;
  initial.grad_l2_sq = 1.0;
  initial.mass = 1.0;

  ObservableRecord same = initial;
  CHECK(!blowup_monitor(same, initial, cfg).has_value());

  ObservableRecord grown = initial;
  grown.grad_l2_sq = 1.5e3;
  CHECK(blowup_monitor(grown, initial, cfg) == HaltReason::blowup_indicated);

  ObservableRecord rough = initial;
  rough.spectral_tail_fraction = 0.2;
  CHECK(blowup_monitor(rough, initial, cfg) == HaltReason::resolution_lost);

  ObservableRecord broken = initial;
  broken.grad_l2_sq = std::nan("");
  CHECK(blowup_monitor(broken, initial, cfg) == HaltReason::non_finite);
}

TEST_CASE("nonautonomous runs stop at the internal horizon 1/b") {
  // N = 2 keeps the coefficient exponent N(p-1)-2-gamma = -0.9 integrable,
  // so midpoint sampling steps across the tau = 1/b endpoint cleanly
  const ModelParameters P(2, 1.8, 0.5, 1.0, 2.0, 12, 5, 4.0);
  const Grid g = make_grid(2, 30.0, 64);
  IntegratorConfig cfg;
  cfg.nonautonomous = true;
  cfg.dt = 1e-3;
  cfg.t_end = 0.5;  // beyond 1/b = 0.25
  CHECK_THROWS_AS(evolve(sample_gaussian(g, 0.25, 0.1), P, cfg),
                  std::invalid_argument);

  cfg.t_end = 0.25;
  cfg.record_every = 50;
  const auto traj = evolve(sample_gaussian(g, 0.25, 0.1), P, cfg);
  CHECK(traj.halt == HaltReason::completed);
  CHECK(traj.final_field.time == doctest::Approx(0.25));
}

TEST_CASE("exit code contract") {
  CHECK(exit_code(HaltReason::completed) == 0);
  CHECK(exit_code(HaltReason::blowup_indicated) == 2);
  CHECK(exit_code(HaltReason::resolution_lost) == 3);
  CHECK(exit_code(HaltReason::non_finite) == 4);
}
