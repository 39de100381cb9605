#pragma once

#include <vector>

#include "mlsw/grid.hpp"
#include "mlsw/params.hpp"

namespace mlsw {

/// Physical unknowns on the grid. The surface deformation is stored in
/// scaled form, scaled_zeta1 = zeta_1 / rho, so that all components are
/// O(1) in the small-contrast limit.
struct StateU {
  Field scaled_zeta1;
  std::vector<Field> zeta;  ///< zeta_2..zeta_N (zeta[i] holds zeta_{i+2})
  std::vector<Field> ux;    ///< u^x_1..u^x_N
  std::vector<Field> uy;    ///< u^y_1..u^y_N (empty for d=1)
};

/// Normal-form unknowns: shear velocities v_i = gamma_i u_i - gamma_{i-1}
/// u_{i-1} and total horizontal momentum w = sum h_n u_n.
struct StateV {
  Field scaled_zeta1;
  std::vector<Field> zeta;  ///< zeta_2..zeta_N
  std::vector<Field> vx;    ///< v^x_2..v^x_N
  std::vector<Field> vy;    ///< v^y_2..v^y_N (empty for d=1)
  Field wx;
  Field wy;                 ///< empty for d=1
};

StateU make_rest_state_u(const Params& p, const Grid& g);
StateV make_rest_state_v(const Params& p, const Grid& g);

/// h_n = delta_n + zeta_n - zeta_{n+1}, with zeta_1 = rho * scaled_zeta1 and
/// zeta_{N+1} = 0.
std::vector<Field> layer_depths(const Params& p, const Grid& g,
                                const StateU& u);

struct DepthCheck {
  bool ok = true;
  std::vector<double> min_depth;  ///< per-layer grid minimum
  int worst_layer = 0;            ///< 1-based index attaining the minimum
};

/// True iff min_x h_n(x) >= h0 for every layer (inclusive).
DepthCheck check_depth_condition(const Params& p, const Grid& g,
                                 const StateU& u, double h0);

struct ShearCheck {
  bool ok = true;
  double max_shear = 0.0;  ///< sup over grid and n of |u_n - u_{n-1}|
};

/// True iff sup |u_n - u_{n-1}| < 1/nu (Euclidean norm over components).
ShearCheck check_shear_condition(const Params& p, const Grid& g,
                                 const StateU& u, double nu);

// L2 distance helpers over packed state components.
double field_l2_norm(const Grid& g, const Field& f);
double field_l2_dist(const Grid& g, const Field& a, const Field& b);

}  // namespace mlsw
