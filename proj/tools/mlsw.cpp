#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mlsw/io.hpp"

namespace fs = std::filesystem;
using namespace mlsw;

namespace {

RunConfig load_config(const std::string& path, const std::string& out_dir,
                      const std::string& expected_kind) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::ostringstream text;
  text << f.rdbuf();
  RunConfig cfg = parse_config(text.str());
  if (cfg.kind != expected_kind)
    throw ConfigError("config kind '" + cfg.kind + "' does not match the '" +
                      expected_kind + "' subcommand");
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  fs::create_directories(cfg.out_dir);
  return cfg;
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

int cmd_simulate(const RunConfig& cfg) {
  const Params p = derive_params(cfg.N, cfg.d, cfg.delta, cfg.r, cfg.rho());
  const Grid g = cfg.d == 2 ? make_grid_2d(cfg.Lx, cfg.Ly, cfg.nx, cfg.ny)
                            : make_grid_1d(cfg.Lx, cfg.nx);
  const Spectral sp(g);
  StateU u = build_initial_data(p, g, cfg.recipe);

  std::vector<DiagnosticsRecord> records;
  records.push_back(record(p, g, sp, u, 0.0, cfg.diag_s));
  const auto rhs = [&](const StateU& s) {
    return fs_rhs_u(p, g, sp, s, cfg.solver.dealias);
  };
  double t = 0.0;
  int step = 0;
  while (t < cfg.solver.t_end - 1e-13) {
    const double dt =
        std::min(cfl_dt(p, g, u, cfg.solver.cfl), cfg.solver.t_end - t);
    u = rk4_step(rhs, u, dt);
    t += dt;
    if (++step % cfg.solver.stride == 0 || t >= cfg.solver.t_end - 1e-13)
      records.push_back(record(p, g, sp, u, t, cfg.diag_s));
  }
  write_timeseries(join(cfg.out_dir, "timeseries.csv"), records);
  if (cfg.write_snapshots)
    write_snapshot(join(cfg.out_dir, "final.snap"), p, g, u, t);
  std::cout << "simulate: " << step << " steps to t=" << t << ", records "
            << records.size() << "\n";
  return 0;
}

int cmd_rigidlid(const RunConfig& cfg) {
  const Params p = derive_params(cfg.N, cfg.d, cfg.delta, cfg.r, cfg.rho());
  const Grid g = cfg.d == 2 ? make_grid_2d(cfg.Lx, cfg.Ly, cfg.nx, cfg.ny)
                            : make_grid_1d(cfg.Lx, cfg.nx);
  const Spectral sp(g);
  RigidLidState s = rl_from_u(p, g, sp, build_initial_data(p, g, cfg.recipe));

  // Records go through a zero-surface U view of the rigid-lid state.
  const auto as_u = [&](const RigidLidState& x) {
    StateU u = make_rest_state_u(p, g);
    u.zeta = x.zeta;
    u.ux = x.ux;
    u.uy = x.uy;
    return u;
  };
  std::vector<DiagnosticsRecord> records;
  records.push_back(record(p, g, sp, as_u(s), 0.0, cfg.diag_s));
  const auto rhs = [&](const RigidLidState& x) {
    return rl_rhs(p, g, sp, x, cfg.solver.dealias);
  };
  double t = 0.0;
  int step = 0;
  while (t < cfg.solver.t_end - 1e-13) {
    const double dt =
        std::min(rl_cfl_dt(p, g, s, cfg.solver.cfl), cfg.solver.t_end - t);
    s = rk4_step(rhs, s, dt);
    rl_project(p, g, sp, s);
    t += dt;
    if (++step % cfg.solver.stride == 0 || t >= cfg.solver.t_end - 1e-13)
      records.push_back(record(p, g, sp, as_u(s), t, cfg.diag_s));
  }
  write_timeseries(join(cfg.out_dir, "timeseries.csv"), records);
  if (cfg.write_snapshots)
    write_snapshot(join(cfg.out_dir, "final.snap"), p, g, as_u(s), t);
  std::cout << "rigidlid: " << step << " steps to t=" << t
            << ", final constraint residual "
            << rl_constraint_residual(p, g, sp, s) << "\n";
  return 0;
}

int cmd_acoustic(const RunConfig& cfg) {
  const Params p = derive_params(cfg.N, cfg.d, cfg.delta, cfg.r, cfg.rho());
  const Grid g = cfg.d == 2 ? make_grid_2d(cfg.Lx, cfg.Ly, cfg.nx, cfg.ny)
                            : make_grid_1d(cfg.Lx, cfg.nx);
  const Spectral sp(g);
  const AcousticState a0 =
      acoustic_from_u(p, g, sp, build_initial_data(p, g, cfg.recipe));

  std::vector<DiagnosticsRecord> records;
  for (int k = 0; k <= cfg.n_samples; ++k) {
    const double t = cfg.solver.t_end * k / cfg.n_samples;
    const AcousticState a = acoustic_propagate(p, g, sp, a0, t);
    DiagnosticsRecord rec;
    rec.time = t;
    rec.energy = acoustic_invariant(p, g, a);
    records.push_back(rec);
  }
  write_timeseries(join(cfg.out_dir, "timeseries.csv"), records);
  std::cout << "acoustic: invariant " << records.front().energy << " -> "
            << records.back().energy << "\n";
  return 0;
}

int cmd_eigen(const RunConfig& cfg) {
  const Params p = derive_params(cfg.N, cfg.d, cfg.delta, cfg.r, cfg.rho());
  const Vec rest = Vec::Zero(p.state_size());
  const Vec speeds = rest_wave_speeds(p, rest);
  const EigenDecomp dec = eigendecompose_Bx(p, rest);

  std::ofstream f(join(cfg.out_dir, "eigen.csv"), std::ios::binary);
  f << "n,mu_minus,mu_plus\n";
  for (int n = 1; n <= p.N; ++n) {
    f << n << ',' << dec.mu_minus[n - 1] << ',' << dec.mu_plus[n - 1] << '\n';
    std::cout << "mu_-" << n << " = " << dec.mu_minus[n - 1] << "   mu_+" << n
              << " = " << dec.mu_plus[n - 1] << "\n";
  }
  std::cout << "tridiagonal speeds agree to "
            << std::abs(speeds[0] - dec.mu_minus[0]) << ", min gap "
            << dec.min_gap << "\n";
  return 0;
}

int cmd_hyperbolicity(const RunConfig& cfg) {
  const Params p = derive_params(cfg.N, cfg.d, cfg.delta, cfg.r, cfg.rho());
  const Grid g = cfg.d == 2 ? make_grid_2d(cfg.Lx, cfg.Ly, cfg.nx, cfg.ny)
                            : make_grid_1d(cfg.Lx, cfg.nx);
  const StateU u = build_initial_data(p, g, cfg.recipe);
  const HyperbolicityReport rep =
      check_hyperbolicity(p, g, u, cfg.hyp_h0, cfg.hyp_nu);
  std::cout << "hyperbolicity: " << (rep.pass ? "pass" : "FAIL")
            << "  min_depth=" << rep.min_depth
            << " max_shear=" << rep.max_shear << " min_gap=" << rep.min_gap
            << " all_real=" << (rep.all_real ? "yes" : "no");
  if (rep.worst_depth_layer > 0)
    std::cout << " worst_depth_layer=" << rep.worst_depth_layer;
  if (rep.first_bad_index >= 0)
    std::cout << " first_complex_at=" << rep.first_bad_index;
  std::cout << "\n";
  return rep.pass ? 0 : 3;
}

SweepConfig to_sweep(const RunConfig& cfg) {
  SweepConfig sc;
  sc.N = cfg.N;
  sc.d = cfg.d;
  sc.delta = cfg.delta;
  sc.r = cfg.r;
  sc.rhos = cfg.rhos;
  sc.Lx = cfg.Lx;
  sc.Ly = cfg.Ly;
  sc.nx = cfg.nx;
  sc.ny = cfg.ny;
  sc.recipe = cfg.recipe;
  sc.solver = cfg.solver;
  sc.n_samples = cfg.n_samples;
  return sc;
}

int report_out(const RunConfig& cfg, const ConvergenceReport& rep) {
  write_report(join(cfg.out_dir, "report.csv"), rep);
  int aborted = 0;
  for (const SweepMember& m : rep.members) {
    std::cout << "rho=" << m.rho;
    if (m.aborted) {
      std::cout << "  ABORTED: " << m.abort_reason << "\n";
      ++aborted;
    } else {
      std::cout << "  error=" << m.error << "\n";
    }
  }
  if (rep.fit)
    std::cout << "slope = " << rep.fit->slope << " +- " << rep.fit->width
              << "\n";
  std::cout << "errors decreasing: "
            << (rep.errors_decreasing ? "yes" : "no") << "\n";
  return aborted == static_cast<int>(rep.members.size()) ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multilayer shallow-water solver and limit experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  const std::vector<std::string> kinds = {
      "simulate",      "rigidlid",    "acoustic",   "eigen",
      "hyperbolicity", "converge-wp", "converge-ip"};
  for (const std::string& k : kinds) {
    CLI::App* sub = app.add_subcommand(k);
    sub->add_option("--config", config_path, "config file")->required();
    sub->add_option("--out", out_dir, "output directory override");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string kind = app.get_subcommands().front()->get_name();

  try {
    const RunConfig cfg = load_config(config_path, out_dir, kind);
    if (kind == "simulate") return cmd_simulate(cfg);
    if (kind == "rigidlid") return cmd_rigidlid(cfg);
    if (kind == "acoustic") return cmd_acoustic(cfg);
    if (kind == "eigen") return cmd_eigen(cfg);
    if (kind == "hyperbolicity") return cmd_hyperbolicity(cfg);
    if (kind == "converge-wp")
      return report_out(cfg, run_wellprepared_sweep(to_sweep(cfg)));
    if (kind == "converge-ip")
      return report_out(cfg, run_illprepared_decomposition(to_sweep(cfg)));
    std::cerr << "unhandled subcommand " << kind << "\n";
    return 4;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParamError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ComplexPairDetected& e) {
    std::cerr << "hyperbolicity loss: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateGap& e) {
    std::cerr << "hyperbolicity loss: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  }
}
