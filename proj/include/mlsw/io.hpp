#pragma once

#include <string>
#include <vector>

#include "mlsw/diagnostics.hpp"
#include "mlsw/harness.hpp"

namespace mlsw {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                    : msg),
        line_number(line) {}
  int line_number;
};

/// Fully validated run description parsed from flat "section.key = value"
/// text. Lists are comma-separated; recipe modes are keys recipe.mode<k>
/// with value "<field>,<layer>,<mx>,<my>,<amplitude>,<phase>".
struct RunConfig {
  std::string kind;  // simulate|rigidlid|acoustic|eigen|hyperbolicity|
                     // converge-wp|converge-ip
  int N = 1;
  int d = 1;
  std::vector<double> delta{1.0};
  std::vector<double> r;
  std::vector<double> rhos{0.1};  // several entries only for converge-*

  double Lx = 6.283185307179586;
  double Ly = 6.283185307179586;
  int nx = 64, ny = 64;

  SolverConfig solver;
  Recipe recipe;
  int n_samples = 16;
  double diag_s = 2.0;     // Sobolev index for the monitors
  double hyp_h0 = 1e-3;    // hyperbolicity survey depth margin
  double hyp_nu = 0.1;     // hyperbolicity survey shear bound 1/nu

  std::string out_dir = ".";
  bool write_snapshots = false;

  double rho() const { return rhos.front(); }
};

RunConfig parse_config(const std::string& text);

/// Inverse of parse_config up to formatting; parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& c);

/// CSV with the fixed header time,energy,hs_norm_u,hs_norm_v,min_depth,
/// max_shear,rl_residual,symm_energy,min_gap,flags; shortest round-trip
/// decimals, UNIX newlines.
void write_timeseries(const std::string& path,
                      const std::vector<DiagnosticsRecord>& records);

/// Binary field snapshot: magic "MLSV1", u32 N,d,nx,ny, f64 Lx,Ly,rho,t,
/// then scaled_zeta1, zeta[2..N], ux[1..N], uy[1..N] row-major f64,
/// little-endian throughout.
void write_snapshot(const std::string& path, const Params& p, const Grid& g,
                    const StateU& u, double t);

struct Snapshot {
  int N = 0, d = 0, nx = 0, ny = 0;
  double Lx = 0.0, Ly = 0.0, rho = 0.0, t = 0.0;
  StateU state;
};

Snapshot read_snapshot(const std::string& path);

/// Convergence report as CSV (one row per rho member) plus a summary line.
void write_report(const std::string& path, const ConvergenceReport& rep);

}  // namespace mlsw
