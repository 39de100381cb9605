#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mlsw/harness.hpp"

using namespace mlsw;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("rate fit recovers exact power laws") {
  const std::vector<double> rhos = {0.2, 0.1, 0.05, 0.025};
  SUBCASE("linear") {
    std::vector<double> errs;
    for (double r : rhos) errs.push_back(3.7 * r);
    const RateFit f = fit_rate(rhos, errs);
    CHECK(f.slope == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(f.width < 1e-8);
    CHECK(f.n_used == 4);
    CHECK(std::exp(f.intercept) == doctest::Approx(3.7).epsilon(1e-8));
  }
  SUBCASE("quadratic") {
    std::vector<double> errs;
    for (double r : rhos) errs.push_back(0.5 * r * r);
    CHECK(fit_rate(rhos, errs).slope == doctest::Approx(2.0).epsilon(1e-10));
  }
  SUBCASE("zero errors are excluded as exact") {
    const RateFit f = fit_rate(rhos, {0.2, 0.0, 0.05, 0.025});
    CHECK(f.n_used == 3);
    CHECK(f.slope == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("too few usable pairs is an error") {
    CHECK_THROWS(fit_rate({0.1, 0.05}, {1.0, 0.5}));
    CHECK_THROWS(fit_rate(rhos, {0.0, 0.0, 0.0, 0.1}));
  }
  SUBCASE("negative errors are rejected") {
    CHECK_THROWS(fit_rate(rhos, {0.1, -0.1, 0.05, 0.02}));
  }
}

TEST_CASE("advance_fs_to hits the target time exactly") {
  const Params p = derive_params(1, 1, {1.0}, {}, 0.1);
  const Grid g = make_grid_1d(2.0 * kPi, 32);
  Spectral sp(g);
  Recipe rc;
  rc.modes.push_back({"zeta", 1, 1, 0, 0.05, 0.0});
  StateU u = build_initial_data(p, g, rc);
  SolverConfig cfg;
  double t = 0.0;
  advance_fs_to(p, g, sp, cfg, u, t, 0.0731);
  CHECK(t == doctest::Approx(0.0731).epsilon(1e-14));
}

TEST_CASE("rest recipe sweeps produce zero errors") {
  SweepConfig cfg;
  cfg.N = 2;
  cfg.d = 1;
  cfg.delta = {1.0, 1.0};
  cfg.r = {1.0};
  cfg.rhos = {0.2, 0.1, 0.05};
  cfg.nx = 16;
  cfg.solver.t_end = 0.1;
  cfg.n_samples = 2;
  const ConvergenceReport rep = run_wellprepared_sweep(cfg);
  REQUIRE(rep.members.size() == 3);
  for (const auto& m : rep.members) {
    CHECK_FALSE(m.aborted);
    CHECK(m.error == 0.0);
  }
  CHECK_FALSE(rep.fit.has_value());  // all-exact errors leave nothing to fit
}

TEST_CASE("well-prepared sweep converges roughly linearly in rho") {
  SweepConfig cfg;
  cfg.N = 2;
  cfg.d = 1;
  cfg.delta = {1.0, 1.0};
  cfg.r = {1.0};
  cfg.rhos = {0.2, 0.1, 0.05};
  cfg.nx = 32;
  cfg.solver.t_end = 0.25;
  cfg.n_samples = 4;
  cfg.recipe.modes.push_back({"zeta", 2, 1, 0, 0.1, 0.0});
  cfg.recipe.modes.push_back({"ux", 1, 1, 0, 0.05, 0.3});
  const ConvergenceReport rep = run_wellprepared_sweep(cfg);
  REQUIRE(rep.members.size() == 3);
  for (const auto& m : rep.members) {
    CHECK_FALSE(m.aborted);
    CHECK(m.error > 0.0);
    // Preparedness: the monitored ratios stay of order one.
    CHECK(m.prep_ratio_zeta < 10.0);
    CHECK(m.prep_ratio_flux < 10.0);
  }
  CHECK(rep.errors_decreasing);
  REQUIRE(rep.fit.has_value());
  CHECK(rep.fit->slope == doctest::Approx(1.0).epsilon(0.35));
}

TEST_CASE("sweeps are deterministic") {
  SweepConfig cfg;
  cfg.N = 2;
  cfg.d = 1;
  cfg.delta = {1.0, 1.0};
  cfg.r = {1.0};
  cfg.rhos = {0.2, 0.1, 0.05};
  cfg.nx = 16;
  cfg.solver.t_end = 0.1;
  cfg.n_samples = 2;
  cfg.recipe.modes.push_back({"zeta", 2, 1, 0, 0.05, 0.0});
  const ConvergenceReport a = run_wellprepared_sweep(cfg);
  const ConvergenceReport b = run_wellprepared_sweep(cfg);
  REQUIRE(a.members.size() == b.members.size());
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    CHECK(a.members[i].error == b.members[i].error);
    CHECK(a.members[i].prep_ratio_zeta == b.members[i].prep_ratio_zeta);
  }
  CHECK(a.config_digest == b.config_digest);
}

TEST_CASE("ill-prepared decomposition error decreases along the rho list") {
  SweepConfig cfg;
  cfg.N = 2;
  cfg.d = 1;
  cfg.delta = {1.0, 1.0};
  cfg.r = {1.0};
  cfg.rhos = {0.2, 0.1, 0.05};
  cfg.nx = 32;
  cfg.solver.t_end = 0.1;
  cfg.n_samples = 4;
  cfg.recipe.modes.push_back({"zeta", 1, 1, 0, 0.05, 0.0});
  cfg.recipe.modes.push_back({"zeta", 2, 1, 0, 0.05, 0.0});
  const ConvergenceReport rep = run_illprepared_decomposition(cfg);
  REQUIRE(rep.members.size() == 3);
  for (const auto& m : rep.members) {
    CHECK_FALSE(m.aborted);
    CHECK(m.error > 0.0);
  }
  CHECK(rep.errors_decreasing);
}

TEST_CASE("members abort cleanly instead of crashing the sweep") {
  SweepConfig cfg;
  cfg.N = 2;
  cfg.d = 1;
  cfg.delta = {1.0, 1.0};
  cfg.r = {1.0};
  cfg.rhos = {0.3, 0.2, 0.1};
  cfg.nx = 16;
  cfg.solver.t_end = 0.5;
  cfg.n_samples = 2;
  // Shear placed inside the two-layer instability window; the depth margin
  // and shear gate are disabled so the run itself must detect the loss.
  cfg.recipe.shear_nu = 0.01;
  cfg.recipe.modes.push_back({"ux", 1, 1, 0, 1.2, 0.0});
  cfg.recipe.modes.push_back({"ux", 2, 1, 0, -1.2, 0.0});
  const ConvergenceReport rep = run_wellprepared_sweep(cfg);
  REQUIRE(rep.members.size() == 3);
  bool any_aborted = false;
  for (const auto& m : rep.members) {
    if (m.aborted) {
      any_aborted = true;
      CHECK_FALSE(m.abort_reason.empty());
    }
  }
  CHECK(any_aborted);
}
