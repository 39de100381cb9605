#pragma once

#include "mlsw/changevar.hpp"

namespace mlsw {

// Quasilinear symbols of the system and the Friedrichs symmetrizer.
//
// Convention: every assembled matrix already carries the 1/rho factor, i.e.
// assemble_Ax returns (1/rho) A^x and eigenvalues are wave speeds.

/// (1/rho) A^x at a U point. Size N(1+d); d=1 drops the y block.
Mat assemble_Ax(const Params& p, const Vec& u_point);

/// (1/rho) A^y at a U point. d=2 only.
Mat assemble_Ay(const Params& p, const Vec& u_point);

/// Rotation Q(xi): orthogonal, homogeneous of degree 0. Identity for d=1.
Mat rotation_Q(const Params& p, double xix, double xiy);

/// Full symbol xi^x (1/rho)A^x + xi^y (1/rho)A^y.
Mat symbol_A(const Params& p, const Vec& u_point, double xix, double xiy);

/// (1/rho) B^x at a V point, via the similarity transform with the
/// change-of-variables Jacobians.
Mat assemble_Bx(const Params& p, const Vec& v_point);

/// (1/rho) B^y at a V point (d=2 only).
Mat assemble_By(const Params& p, const Vec& v_point);

/// Friedrichs symmetrizer S^x at a U point. Kx defaults to -u^x_1, the
/// choice for which positive definiteness is known under small shear; pass
/// an explicit value to override.
Mat symmetrizer_Sx(const Params& p, const Vec& u_point);
Mat symmetrizer_Sx(const Params& p, const Vec& u_point, double Kx);

// Building blocks shared with the eigenstructure module.

/// Upper bidiagonal difference matrix (-1 on the diagonal, +1 above).
Mat diff_matrix(int N);
/// diag(rho, 1, ..., 1)
Mat d_erho(const Params& p);
/// diag(gamma_1, r_2, ..., r_N)
Mat d_rtilde(const Params& p);

/// Orthogonal projection onto the fast variables (rho^{-1}zeta_1 and the w
/// entries of every velocity block).
Mat proj_fast(const Params& p);
/// As proj_fast but excluding w^y: only rho^{-1}zeta_1 and w^x.
Mat proj_fast_x(const Params& p);

}  // namespace mlsw
