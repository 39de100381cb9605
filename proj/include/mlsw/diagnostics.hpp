#pragma once

#include <string>

#include "mlsw/eigenstructure.hpp"
#include "mlsw/solvers.hpp"

namespace mlsw {

struct DiagnosticsRecord {
  double time = 0.0;
  double energy = 0.0;
  double hs_norm_u = 0.0;
  double hs_norm_v = 0.0;
  double min_depth = 0.0;
  double max_shear = 0.0;
  double rl_residual = 0.0;   // || div sum h_n u_n ||_L2
  double symm_energy = 0.0;   // T-weighted L2 of the V state against itself
  double min_gap = 0.0;       // eigen gap at the worst (max-shear) point
  std::string flags = "ok";   // "ok" or semicolon-joined failure markers
};

/// Conserved energy E = 1/2 int (gamma_1/rho^2)|zeta_1|^2
/// + sum_{n>=2} r_n |zeta_n|^2 + sum_n gamma_n h_n |u_n|^2.
double energy(const Params& p, const Grid& g, const StateU& u);

/// Composite H^s norm with the rho^{-2} weight on zeta_1 (the stored
/// rho^{-1} zeta_1 enters unweighted).
double sobolev_norm(const Params& p, const Grid& g, const Spectral& sp,
                    const StateU& u, double s);
double sobolev_norm(const Params& p, const Grid& g, const Spectral& sp,
                    const StateV& v, double s);

/// int (T^x[base(x)] W(x), W(x)) dx with the pointwise symmetrizer from the
/// eigenstructure of the base state.
double symmetrizer_energy(const Params& p, const Grid& g, const StateV& base,
                          const StateV& W);

/// All monitors at time t; failed sub-diagnostics are flagged, not thrown.
DiagnosticsRecord record(const Params& p, const Grid& g, const Spectral& sp,
                         const StateU& u, double t, double s = 2.0);

}  // namespace mlsw
