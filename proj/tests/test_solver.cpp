#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "parahyp/norms.hpp"
#include "parahyp/random_fields.hpp"
#include "parahyp/solver.hpp"

using namespace parahyp;

namespace {

Field sin_datum(const GridSpec& g) {
  return Field::from_function(g, 1, [](double x, int) { return std::sin(x); });
}

CharacteristicsOracle sin_oracle() {
  return {[](double x) { return std::sin(x); },
          [](double x) { return std::cos(x); }};
}

HyperbolicSystem zero_system() {
  HyperbolicSystem sys;
  sys.name = "zero-local";
  sys.dim = 1;
  sys.components = 1;
  sys.coeff = [](const double*, double* out) { out[0] = 0.0; };
  sys.coeff_jacobian = [](const double*, const double*, double* out) {
    out[0] = 0.0;
  };
  return sys;
}

double l2_diff(const Field& a, const Field& b) { return l2_norm(a - b); }

}  // namespace

TEST_CASE("scheme names round trip") {
  for (const Scheme s : {Scheme::euler_reg, Scheme::iteration,
                         Scheme::parabolic, Scheme::galerkin})
    CHECK(scheme_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(scheme_from_string("rk9"), InvalidArgument);
}

TEST_CASE("characteristics oracle") {
  const CharacteristicsOracle oracle = sin_oracle();
  CHECK(oracle.shock_time() == doctest::Approx(1.0).epsilon(1e-9));

  // u solves u = u0(x + t u) implicitly.
  for (double t : {0.1, 0.5, 0.9}) {
    for (double x : {0.3, 1.7, 3.9, 5.5}) {
      const double u = oracle.eval_point(x, t);
      CHECK(std::fabs(u - std::sin(x + t * u)) < 1e-10);
    }
  }

  const GridSpec g(1, 128);
  const Field at0 = oracle.evaluate(g, 0.0);
  CHECK(l2_diff(at0, sin_datum(g)) < 1e-10);
}

TEST_CASE("regularized Euler step audits") {
  const GridSpec g(1, 256);
  const HyperbolicSystem& burgers = system_registry("burgers");
  SolveConfig cfg;

  // Band-limited data passes through the regularization untouched, so the
  // step defect against u + eps N(u) is round-off only.
  const auto [u1, rep] = euler_reg_step(burgers, sin_datum(g), 1e-3, cfg);
  CHECK(rep.defect_l2 < 1e-12);
  CHECK(rep.reg_l2_dist < 1e-13);
  CHECK(rep.energy_ratio > 0.9);
  CHECK(rep.energy_ratio < 1.1);

  // Rough data is genuinely truncated at eps^{-1/2}.
  const Field rough = random_field(g, 1, derive_seed(17, "solver-rough"),
                                   {.decay = 1.5});
  const auto [u1r, repr] = euler_reg_step(burgers, rough, 1e-3, cfg);
  CHECK(repr.reg_l2_dist > 1e-8);
  // ||u_reg||_{H^{s+1}} <= eps^{-1/2} ||u||_{H^s} with constant one.
  CHECK(repr.reg_hs1_over_scale <= 1.0 + 1e-12);
}

TEST_CASE("regularized Euler converges to the oracle") {
  const GridSpec g(1, 256);
  const HyperbolicSystem& burgers = system_registry("burgers");
  const Field ref = sin_oracle().evaluate(g, 0.25);
  SolveConfig cfg;
  cfg.T = 0.25;
  double prev = 1e9;
  for (double eps : {1.0 / 128, 1.0 / 256, 1.0 / 512}) {
    cfg.epsilon = eps;
    const Trajectory traj = solve(burgers, sin_datum(g), cfg);
    CHECK_FALSE(traj.blown_up);
    const double err = l2_diff(traj.final_state(), ref);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 5e-3);
}

TEST_CASE("solve is deterministic") {
  const GridSpec g(1, 64);
  const HyperbolicSystem& burgers = system_registry("burgers");
  SolveConfig cfg;
  cfg.T = 0.1;
  const Trajectory a = solve(burgers, sin_datum(g), cfg);
  const Trajectory b = solve(burgers, sin_datum(g), cfg);
  REQUIRE(a.diag.size() == b.diag.size());
  for (std::size_t i = 0; i < a.diag.size(); ++i) {
    CHECK(a.diag[i].t == b.diag[i].t);
    CHECK(a.diag[i].hs == b.diag[i].hs);
    CHECK(a.diag[i].intB == b.diag[i].intB);
  }
  CHECK(a.final_state().values == b.final_state().values);
}

TEST_CASE("diagnostics cadence and monotone time integrals") {
  const GridSpec g(1, 64);
  SolveConfig cfg;
  cfg.scheme = Scheme::galerkin;
  cfg.h_cut = g.shell_top() + 1;  // full band: plain RK4 reference
  cfg.T = 0.25;
  const Trajectory traj = solve(system_registry("burgers"), sin_datum(g), cfg);
  // auto dt = cfl/(bandwidth max|u|) = 0.25/64, so 64 steps + the start.
  CHECK(traj.diag.size() == 65);
  for (std::size_t i = 1; i < traj.diag.size(); ++i) {
    CHECK(traj.diag[i].t > traj.diag[i - 1].t);
    CHECK(traj.diag[i].intB >= traj.diag[i - 1].intB);
  }
  CHECK(traj.diag.front().intB == 0.0);
  CHECK(traj.state_times.back() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("full-band Galerkin RK4 has fourth-order steps") {
  const GridSpec g(1, 64);
  const HyperbolicSystem& burgers = system_registry("burgers");
  const Field ref = sin_oracle().evaluate(g, 0.25);
  SolveConfig cfg;
  cfg.scheme = Scheme::galerkin;
  cfg.h_cut = g.shell_top() + 1;
  cfg.T = 0.25;
  cfg.inner_dt = 4e-3;
  const double e1 = l2_diff(solve(burgers, sin_datum(g), cfg).final_state(), ref);
  cfg.inner_dt = 2e-3;
  const double e2 = l2_diff(solve(burgers, sin_datum(g), cfg).final_state(), ref);
  CHECK(e2 < e1);
  const double order = std::log2(e1 / e2);
  CHECK(order > 3.5);
  CHECK(order < 4.5);
  CHECK(e2 < 1e-8);
}

TEST_CASE("Galerkin cutoff freezes the high modes") {
  const GridSpec g(1, 128);
  Field u0 = sin_datum(g);
  const Field spike = Field::from_function(
      g, 1, [](double x, int) { return 0.2 * std::sin(20.0 * x); });
  u0 += spike;
  SolveConfig cfg;
  cfg.scheme = Scheme::galerkin;
  cfg.h_cut = 4;  // evolves |xi| <= 8 only
  cfg.T = 0.1;
  const Trajectory traj = solve(system_registry("burgers"), u0, cfg);
  const SpectralField F0 = transform(u0);
  const SpectralField FT = transform(traj.final_state());
  double moved_high = 0.0;
  for (std::size_t i = 0; i < g.total(); ++i) {
    const int xi = std::abs(g.wavenumber(static_cast<int>(i)));
    if (xi > 8)
      moved_high = std::max(moved_high, std::abs(FT.coeff[0][i] - F0.coeff[0][i]));
  }
  CHECK(moved_high < 1e-13);
  // The low band did evolve.
  CHECK(l2_diff(traj.final_state(), u0) > 1e-3);
}

TEST_CASE("CFL guard rejects oversized user steps") {
  const GridSpec g(1, 64);
  SolveConfig cfg;
  cfg.scheme = Scheme::galerkin;
  cfg.h_cut = g.shell_top() + 1;
  cfg.T = 0.1;
  cfg.inner_dt = 1.0;  // rate = 64 * 1, dt * rate = 64 >> 1/2
  CHECK_THROWS_AS(solve(system_registry("burgers"), sin_datum(g), cfg),
                  CflViolation);
}

TEST_CASE("iteration contracts and converges to the nonlinear flow") {
  const GridSpec g(1, 256);
  const HyperbolicSystem& burgers = system_registry("burgers");
  SolveConfig cfg;
  cfg.scheme = Scheme::iteration;
  cfg.T = 0.05;
  const auto [traj, rep] = iteration_solve(burgers, sin_datum(g), cfg);
  CHECK(rep.converged);
  CHECK(rep.kappa < 0.5);
  CHECK(rep.d.size() >= 2);
  for (std::size_t i = 1; i < rep.d.size(); ++i) CHECK(rep.d[i] < rep.d[i - 1]);

  // The converged iterate solves the full equation: compare against the
  // plain RK4 reference on the same horizon.
  SolveConfig ref_cfg;
  ref_cfg.scheme = Scheme::galerkin;
  ref_cfg.h_cut = g.shell_top() + 1;
  ref_cfg.T = cfg.T;
  const Trajectory ref = solve(burgers, sin_datum(g), ref_cfg);
  CHECK(l2_diff(traj.final_state(), ref.final_state()) < 1e-4);
}

TEST_CASE("iteration budget exhaustion is reported, not thrown") {
  const GridSpec g(1, 64);
  SolveConfig cfg;
  cfg.scheme = Scheme::iteration;
  cfg.T = 0.05;
  cfg.max_iterations = 2;
  const auto [traj, rep] =
      iteration_solve(system_registry("burgers"), sin_datum(g), cfg);
  CHECK_FALSE(rep.converged);
  CHECK(rep.iterations == 2);
  CHECK(traj.diag.size() > 1);
}

TEST_CASE("parabolic scheme with zero advection is the exact heat flow") {
  const GridSpec g(1, 64);
  const HyperbolicSystem zero = zero_system();
  SolveConfig cfg;
  cfg.scheme = Scheme::parabolic;
  cfg.nu = 0.01;
  cfg.diss_order = 1;
  cfg.T = 0.5;
  cfg.inner_dt = 1e-2;  // zero advection: any step is stable and exact
  const Field u0 = Field::from_function(g, 1, [](double x, int) {
    return std::sin(x) + 0.3 * std::sin(4.0 * x);
  });
  const Trajectory traj = parabolic_solve(zero, u0, cfg);
  const Field want = Field::from_function(g, 1, [&](double x, int) {
    return std::exp(-cfg.nu * cfg.T) * std::sin(x) +
           0.3 * std::exp(-cfg.nu * 16.0 * cfg.T) * std::sin(4.0 * x);
  });
  CHECK(l2_diff(traj.final_state(), want) < 1e-12);
  CHECK(gronwall_constant(traj) == 0.0);  // pure decay
}

TEST_CASE("parabolic burgers dissipates L2") {
  const GridSpec g(1, 128);
  SolveConfig cfg;
  cfg.scheme = Scheme::parabolic;
  cfg.nu = 1e-3;
  cfg.T = 0.1;
  const Trajectory traj =
      solve(system_registry("burgers"), sin_datum(g), cfg);
  CHECK_FALSE(traj.blown_up);
  CHECK(traj.diag.back().l2 < traj.diag.front().l2);
}

TEST_CASE("energy growth audit produces a positive finite constant") {
  const GridSpec g(1, 128);
  SolveConfig cfg;
  cfg.T = 0.2;
  const Trajectory traj = solve(system_registry("burgers"), sin_datum(g), cfg);
  const double c = gronwall_constant(traj);
  CHECK(std::isfinite(c));
  CHECK(c > 0.0);
  CHECK(c < 20.0);
}

TEST_CASE("blowup detection truncates the trajectory") {
  const GridSpec g(1, 64);
  SolveConfig cfg;
  cfg.T = 0.5;
  cfg.blowup_factor = 1.05;
  const Trajectory traj = solve(system_registry("burgers"), sin_datum(g), cfg);
  CHECK(traj.blown_up);
  CHECK(traj.blowup_time > 0.0);
  CHECK(traj.blowup_time < 0.2);
  CHECK(traj.diag.back().t <= cfg.T);
  CHECK(traj.diag.back().hs > 1.05 * traj.diag.front().hs);
}

TEST_CASE("L2 conservation of the full-band conservative flow") {
  const GridSpec g(1, 64);
  SolveConfig cfg;
  cfg.scheme = Scheme::galerkin;
  cfg.h_cut = g.shell_top() + 1;
  cfg.T = 0.2;
  const Trajectory traj = solve(system_registry("burgers"), sin_datum(g), cfg);
  const double drift = std::fabs(traj.diag.back().l2 - traj.diag.front().l2) /
                       traj.diag.front().l2;
  CHECK(drift < 1e-6);
}
