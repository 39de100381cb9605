#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "mlsw/io.hpp"
#include "mlsw/state.hpp"

using namespace mlsw;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  return std::string(std::istreambuf_iterator<char>(f),
                     std::istreambuf_iterator<char>());
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

const char* kMinimal =
    "experiment.kind = simulate\n"
    "params.N = 1\n"
    "params.d = 1\n"
    "params.delta = 1\n"
    "params.rho = 0.1\n"
    "grid.nx = 16\n";

}  // namespace

TEST_CASE("minimal config parses and round-trips through serialize") {
  const RunConfig c = parse_config(kMinimal);
  CHECK(c.kind == "simulate");
  CHECK(c.N == 1);
  CHECK(c.d == 1);
  CHECK(c.rho() == 0.1);
  CHECK(c.nx == 16);

  const std::string text = serialize_config(c);
  const RunConfig c2 = parse_config(text);
  CHECK(c2.kind == c.kind);
  CHECK(c2.N == c.N);
  CHECK(c2.d == c.d);
  CHECK(c2.delta == c.delta);
  CHECK(c2.r == c.r);
  CHECK(c2.rhos == c.rhos);
  CHECK(c2.Lx == c.Lx);
  CHECK(c2.nx == c.nx);
  CHECK(c2.solver.cfl == c.solver.cfl);
  CHECK(c2.solver.t_end == c.solver.t_end);
  CHECK(c2.solver.dealias == c.solver.dealias);
  CHECK(c2.solver.stride == c.solver.stride);
  CHECK(c2.n_samples == c.n_samples);
  CHECK(c2.out_dir == c.out_dir);
  // Serialization is canonical, so a second pass is byte-identical.
  CHECK(serialize_config(c2) == text);
}

TEST_CASE("comments, blank lines and whitespace are tolerated") {
  const RunConfig c = parse_config(
      "# a comment\n"
      "\n"
      "  experiment.kind   =   simulate  # trailing comment\n"
      "params.N=2\n"
      "params.d = 1\n"
      "params.delta = 1, 1\n"
      "params.r = 1\n"
      "params.rho = 0.2\n");
  CHECK(c.N == 2);
  CHECK(c.r == std::vector<double>{1.0});
}

TEST_CASE("unknown key is rejected with its line number") {
  try {
    parse_config(
        "experiment.kind = simulate\n"
        "params.N = 1\n"
        "params.bogus = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line_number == 3);
    CHECK(std::string(e.what()).find("params.bogus") != std::string::npos);
  }
}

TEST_CASE("malformed lines and values carry line numbers") {
  CHECK_THROWS_AS(parse_config("experiment.kind = simulate\nno equals sign\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("params.N = not_a_number\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("params.N = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("solver.dealias = maybe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("experiment.kind =\n"), ConfigError);
}

TEST_CASE("density jumps that do not telescope are rejected") {
  try {
    parse_config(
        "experiment.kind = simulate\n"
        "params.N = 2\n"
        "params.d = 1\n"
        "params.delta = 1,1\n"
        "params.r = 0.9\n"
        "params.rho = 0.1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("telescop") != std::string::npos);
  }
}

TEST_CASE("rho lists are only legal for convergence sweeps") {
  const std::string base =
      "params.N = 2\n"
      "params.d = 1\n"
      "params.delta = 1,1\n"
      "params.r = 1\n";

  const RunConfig sweep = parse_config(
      "experiment.kind = converge-wp\n" + base +
      "params.rho_list = 0.2,0.1,0.05\n");
  CHECK(sweep.rhos == std::vector<double>{0.2, 0.1, 0.05});

  CHECK_THROWS_AS(parse_config("experiment.kind = simulate\n" + base +
                               "params.rho_list = 0.2,0.1\n"),
                  ConfigError);
  // Sweeps need at least three members for a rate fit.
  CHECK_THROWS_AS(parse_config("experiment.kind = converge-wp\n" + base +
                               "params.rho_list = 0.2,0.1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(std::string(kMinimal) +
                               "experiment.kind = bogus-kind\n"),
                  ConfigError);
}

TEST_CASE("recipe modes parse and are validated against the dimension") {
  const RunConfig c = parse_config(
      std::string(kMinimal) +
      "recipe.mode1 = zeta,1,2,0,0.1,0.5\n"
      "recipe.mode2 = ux,1,1,0,0.05,0\n");
  REQUIRE(c.recipe.modes.size() == 2);
  CHECK(c.recipe.modes[0].field == "zeta");
  CHECK(c.recipe.modes[0].mx == 2);
  CHECK(c.recipe.modes[1].amplitude == 0.05);

  CHECK_THROWS_AS(
      parse_config(std::string(kMinimal) + "recipe.mode1 = uy,1,1,0,0.1,0\n"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config(std::string(kMinimal) + "recipe.mode1 = zeta,1,1,2,0.1,0\n"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config(std::string(kMinimal) + "recipe.mode1 = zeta,1,1,0,0.1\n"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config(std::string(kMinimal) + "recipe.mode1 = vorticity,1,1,0,0.1,0\n"),
      ConfigError);
}

TEST_CASE("solver sanity limits are enforced at parse time") {
  CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "solver.cfl = 1.5\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "solver.t_end = -1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "solver.stride = 0\n"),
                  ConfigError);
}

TEST_CASE("timeseries csv has the fixed header and one line per record") {
  const std::string path = tmp_path("mlsw_series_test.csv");
  const std::string header =
      "time,energy,hs_norm_u,hs_norm_v,min_depth,max_shear,rl_residual,"
      "symm_energy,min_gap,flags\n";

  write_timeseries(path, {});
  CHECK(slurp(path) == header);

  DiagnosticsRecord r{};
  r.time = 0.5;
  r.energy = 0.1;
  r.hs_norm_u = 1.25;
  r.hs_norm_v = 1.25;
  r.min_depth = 1.0;
  r.max_shear = 0.0;
  r.rl_residual = 1e-15;
  r.symm_energy = 0.2;
  r.min_gap = 0.7;
  r.flags = "ok";
  write_timeseries(path, {r});
  const std::string once = slurp(path);
  CHECK(once ==
        header + "0.5,0.1,1.25,1.25,1,0,1e-15,0.2,0.7,ok\n");

  // Determinism: writing the same records again is byte-identical.
  write_timeseries(path, {r});
  CHECK(slurp(path) == once);
  std::remove(path.c_str());
}

TEST_CASE("snapshot file size matches the declared layout") {
  const Params p = derive_params(1, 1, {1.0}, {}, 0.1);
  const Grid g = make_grid_1d(1.0, 8);
  const StateU u = make_rest_state_u(p, g);
  const std::string path = tmp_path("mlsw_snap_size.bin");
  write_snapshot(path, p, g, u, 0.0);
  // magic + four u32 header ints + four f64 header reals + two 8-point fields
  CHECK(std::filesystem::file_size(path) == 5 + 4 * 4 + 4 * 8 + 2 * 8 * 8);
  std::remove(path.c_str());
}

TEST_CASE("snapshot write-read roundtrip is bit-exact") {
  const Params p = derive_params(2, 2, {1.0, 2.0}, {1.0}, 0.05);
  const Grid g = make_grid_2d(3.0, 5.0, 8, 8);
  StateU u = make_rest_state_u(p, g);
  double v = 0.0;
  for (Field* f : {&u.scaled_zeta1, &u.zeta[0], &u.ux[0], &u.ux[1], &u.uy[0],
                   &u.uy[1]})
    for (double& x : *f) x = (v += 0.0625) * 1e-3 - 0.01;

  const std::string path = tmp_path("mlsw_snap_rt.bin");
  write_snapshot(path, p, g, u, 1.375);
  const Snapshot s = read_snapshot(path);
  CHECK(s.N == 2);
  CHECK(s.d == 2);
  CHECK(s.nx == 8);
  CHECK(s.ny == 8);
  CHECK(s.Lx == 3.0);
  CHECK(s.Ly == 5.0);
  CHECK(s.rho == 0.05);
  CHECK(s.t == 1.375);
  CHECK(s.state.scaled_zeta1 == u.scaled_zeta1);
  CHECK(s.state.zeta == u.zeta);
  CHECK(s.state.ux == u.ux);
  CHECK(s.state.uy == u.uy);
  std::remove(path.c_str());
}

TEST_CASE("snapshot reader rejects wrong magic and truncation") {
  const std::string path = tmp_path("mlsw_snap_bad.bin");
  {
    std::ofstream f(path, std::ios::binary);
    f << "NOTIT" << std::string(48, '\0');
  }
  CHECK_THROWS_WITH_AS(read_snapshot(path),
                       doctest::Contains("magic"), std::runtime_error);
  {
    std::ofstream f(path, std::ios::binary);
    f << "MLSV1";  // header cut off
  }
  CHECK_THROWS_AS(read_snapshot(path), std::runtime_error);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_snapshot(path), std::runtime_error);
}
