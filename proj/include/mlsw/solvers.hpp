#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mlsw/spectral.hpp"
#include "mlsw/state.hpp"

namespace mlsw {

struct SolverConfig {
  double cfl = 0.5;      // in (0, 1]
  double t_end = 1.0;    // > 0
  bool dealias = true;   // 2/3 rule on quadratic products
  int stride = 10;       // steps between diagnostic outputs
};

class DepthLoss : public std::runtime_error {
 public:
  explicit DepthLoss(const std::string& msg) : std::runtime_error(msg) {}
};

/// Fast linear mode: surface deformation (stored scaled, rho^{-1} zeta_1)
/// and the irrotational total momentum.
struct AcousticState {
  Field scaled_zeta1;
  Field wx;
  Field wy;  // empty for d=1
};

/// Rigid-lid unknowns: zeta[i] holds zeta_{i+2} as in StateU (zeta_1 == 0),
/// velocities per layer, and the diagnosed lid pressure.
struct RigidLidState {
  std::vector<Field> zeta;
  std::vector<Field> ux;
  std::vector<Field> uy;  // empty for d=1
  Field p;
};

// Semi-discrete right-hand sides (spectral derivatives, dealiased products).
// Throw DepthLoss when any layer depth drops below 1e-8 during evaluation.
StateU fs_rhs_u(const Params& p, const Grid& g, const Spectral& sp,
                const StateU& u, bool dealias = true);
StateV fs_rhs_v(const Params& p, const Grid& g, const Spectral& sp,
                const StateV& v, bool dealias = true);

/// CFL time step from the certified speed bound
/// s_max = max_x ( max_n |u_n| + rho^{-1} sqrt(gamma_1 sum_j gamma_j^{-1} h_j) ).
double cfl_dt(const Params& p, const Grid& g, const StateU& u, double cfl);

// Classical 4-stage Runge-Kutta over any state with stage/accumulate
// overloads (StateU, StateV, RigidLidState below).
template <class S, class Rhs>
S rk4_step(const Rhs& rhs, const S& y, double dt) {
  const S k1 = rhs(y);
  const S k2 = rhs(state_stage(y, 0.5 * dt, k1));
  const S k3 = rhs(state_stage(y, 0.5 * dt, k2));
  const S k4 = rhs(state_stage(y, dt, k3));
  S out = state_stage(y, dt / 6.0, k1);
  state_add_scaled(out, dt / 3.0, k2);
  state_add_scaled(out, dt / 3.0, k3);
  state_add_scaled(out, dt / 6.0, k4);
  return out;
}

StateU state_stage(const StateU& y, double a, const StateU& k);
StateV state_stage(const StateV& y, double a, const StateV& k);
RigidLidState state_stage(const RigidLidState& y, double a,
                          const RigidLidState& k);
void state_add_scaled(StateU& y, double a, const StateU& k);
void state_add_scaled(StateV& y, double a, const StateV& k);
void state_add_scaled(RigidLidState& y, double a, const RigidLidState& k);

/// Exact modewise solution of the linear acoustic system over time t.
/// Rejects non-irrotational input (Leray residual above 1e-10).
AcousticState acoustic_propagate(const Params& p, const Grid& g,
                                 const Spectral& sp, const AcousticState& a,
                                 double t);

/// Quadratic acoustic invariant ||rho^{-1}zeta_1||^2 + (1/delta)||w||^2.
double acoustic_invariant(const Params& p, const Grid& g,
                          const AcousticState& a);

/// Lid pressure from the Poisson equation, mean-zero gauge.
Field rl_pressure(const Params& p, const Grid& g, const Spectral& sp,
                  const RigidLidState& s, bool dealias = true);

RigidLidState rl_rhs(const Params& p, const Grid& g, const Spectral& sp,
                     const RigidLidState& s, bool dealias = true);

/// Remove the residual irrotational part of the total flux after a step:
/// u_n <- u_n - (Pi sum h_i u_i)/delta, the unique distribution leaving the
/// shear variables unchanged at leading order.
void rl_project(const Params& p, const Grid& g, const Spectral& sp,
                RigidLidState& s);

/// Divergence residual of the total-flux constraint, L2 norm.
double rl_constraint_residual(const Params& p, const Grid& g,
                              const Spectral& sp, const RigidLidState& s);

double rl_cfl_dt(const Params& p, const Grid& g, const RigidLidState& s,
                 double cfl);

/// One Fourier mode of initial data: field is "zeta", "ux" or "uy"; layer is
/// 1-based; the contribution is amplitude * cos(k.x + phase) with
/// k = 2*pi*(mx/Lx, my/Ly). For zeta layer 1 the amplitude applies to the
/// stored scaled variable rho^{-1} zeta_1 (the physical zeta_1 is O(rho)).
struct ModeSpec {
  std::string field;
  int layer = 1;
  int mx = 0, my = 0;
  double amplitude = 0.0;
  double phase = 0.0;
};

struct Recipe {
  std::vector<ModeSpec> modes;
  double depth_margin = 1e-6;  // required min layer depth
  double shear_nu = 0.1;       // shear bound 1/nu
};

/// Initial data from a mode recipe; rejects recipes violating the depth or
/// shear conditions.
StateU build_initial_data(const Params& p, const Grid& g, const Recipe& r);

/// Total momentum w = sum_n h_n u_n of a U state.
std::vector<Field> total_flux(const Params& p, const Grid& g, const StateU& u);

/// Rescale zeta_1 by an extra rho and remove the irrotational total flux
/// (one extra corrector iteration), producing well-prepared data.
StateU wellprepare(const Params& p, const Grid& g, const Spectral& sp,
                   const StateU& u);

/// Superposition U^app = (rho^{-1}zeta_1^ac + rho p^RL, zeta^RL,
/// u^RL + delta^{-1} w^ac).
StateU compose_Uapp(const Params& p, const Grid& g, const RigidLidState& rl,
                    const AcousticState& ac);

/// Rigid-lid initialization from free-surface data: zeta copied,
/// u_n - delta^{-1} Pi w.
RigidLidState rl_from_u(const Params& p, const Grid& g, const Spectral& sp,
                        const StateU& u);

/// Acoustic initialization from free-surface data: scaled zeta_1 and Pi w.
AcousticState acoustic_from_u(const Params& p, const Grid& g,
                              const Spectral& sp, const StateU& u);

}  // namespace mlsw
