#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlsw/diagnostics.hpp"

namespace mlsw {

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double width = 0.0;  // 2x standard error of the slope
  int n_used = 0;      // pairs entering the fit (exact zeros excluded)
};

/// Least squares of log(error) against log(rho). Requires >= 3 positive
/// pairs; zero errors are excluded as "exact", negative errors rejected.
RateFit fit_rate(const std::vector<double>& rhos,
                 const std::vector<double>& errors);

struct SweepMember {
  double rho = 0.0;
  bool aborted = false;        // hyperbolicity or depth loss mid-run
  std::string abort_reason;
  double error = 0.0;          // sup-in-time L2 distance
  double error_zeta = 0.0;     // interface contribution
  double error_vel = 0.0;      // velocity contribution
  double prep_ratio_zeta = 0.0;  // max_t of rho^{-1}||grad zeta_1|| / initial
  double prep_ratio_flux = 0.0;  // max_t of rho^{-1}||div w|| / initial
};

struct ConvergenceReport {
  std::vector<double> rhos;
  std::vector<SweepMember> members;
  std::optional<RateFit> fit;  // present when >= 3 usable members
  bool errors_decreasing = false;
  std::string config_digest;
};

struct SweepConfig {
  // Shared physical parameters; rho varies per member.
  int N = 2;
  int d = 1;
  std::vector<double> delta;
  std::vector<double> r;
  std::vector<double> rhos;
  // Grid.
  double Lx = 2.0 * 3.14159265358979323846;
  double Ly = 2.0 * 3.14159265358979323846;
  int nx = 64, ny = 64;
  Recipe recipe;
  SolverConfig solver;
  int n_samples = 16;  // comparison instants, evenly spaced over (0, t_end]
};

/// Well-prepared limit experiment: free-surface runs (after wellprepare)
/// against rigid-lid runs started from the slow projection of the same
/// data; error is the sup over sample times of the L2 distance between
/// (zeta_2..zeta_N, u - delta^{-1} Pi w) and the rigid-lid solution.
ConvergenceReport run_wellprepared_sweep(const SweepConfig& cfg);

/// Ill-prepared decomposition experiment: the free-surface solution against
/// the superposition of the rigid-lid slow part and the exact acoustic fast
/// part; sup-in-time L2 error per rho, no rate asserted.
ConvergenceReport run_illprepared_decomposition(const SweepConfig& cfg);

// Plumbing shared with the CLI: advance states to an exact target time with
// CFL-limited steps (the last step is clipped).
void advance_fs_to(const Params& p, const Grid& g, const Spectral& sp,
                   const SolverConfig& cfg, StateU& u, double& t,
                   double t_target);
void advance_rl_to(const Params& p, const Grid& g, const Spectral& sp,
                   const SolverConfig& cfg, RigidLidState& s, double& t,
                   double t_target);

}  // namespace mlsw
