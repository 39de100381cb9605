#pragma once

#include <Eigen/Dense>

#include "mlsw/state.hpp"

namespace mlsw {

// Pointwise change of variables F between normal-form variables V and
// physical variables U, with its Jacobians. Point states are real vectors of
// length N(1+d):
//   U = (rho^{-1} zeta_1, zeta_2..zeta_N, u^x_1..u^x_N [, u^y_1..u^y_N])
//   V = (rho^{-1} zeta_1, zeta_2..zeta_N, v^x_2..v^x_N, w^x [, v^y.., w^y])

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class DepthError : public std::runtime_error {
 public:
  explicit DepthError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Layer depths h_1..h_N from the zeta block (shared by U and V layouts).
/// Throws DepthError unless every h_n > 1e-10.
Vec point_depths(const Params& p, const Vec& point);

Vec u_to_v_point(const Params& p, const Vec& u);
Vec v_to_u_point(const Params& p, const Vec& v);

/// Jacobian of F^{-1} (U -> V): blocks I, C(u), Delta_h(zeta).
Mat jacobian_Finv(const Params& p, const Vec& u_point);

/// Jacobian of F (V -> U), assembled from the closed-form inverse of
/// Delta_h(zeta) rather than a numerical solve.
Mat jacobian_F(const Params& p, const Vec& v_point);

// Field-level transforms (pointwise loops over the grid).
StateV u_to_v(const Params& p, const Grid& g, const StateU& u);
StateU v_to_u(const Params& p, const Grid& g, const StateV& v);

// Packing between grid states and point vectors at a grid index.
Vec pack_u_point(const Params& p, const StateU& s, int i);
Vec pack_v_point(const Params& p, const StateV& s, int i);
void unpack_u_point(const Params& p, const Vec& point, StateU& s, int i);
void unpack_v_point(const Params& p, const Vec& point, StateV& s, int i);

}  // namespace mlsw
