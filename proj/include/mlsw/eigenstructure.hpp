#pragma once

#include <vector>

#include "mlsw/matrices.hpp"

namespace mlsw {

// Pointwise eigenstructure of (1/rho) B^x: advective (trivial) eigenpairs,
// the symmetric tridiagonal rest-state reduction, the general dense
// eigendecomposition with spectral projections, and the symmetrizer
// T^x = sum_j P_j^T P_j.

class ComplexPairDetected : public std::runtime_error {
 public:
  ComplexPairDetected(const std::string& msg, double shear)
      : std::runtime_error(msg), shear_magnitude(shear) {}
  double shear_magnitude;
};

class DegenerateGap : public std::runtime_error {
 public:
  explicit DegenerateGap(const std::string& msg) : std::runtime_error(msg) {}
};

/// Symmetric tridiagonal matrix T^rho governing the rest-state wave speeds:
/// eigenvalues lambda_n give speeds mu_{+-n} = +-lambda_n^{-1/2}.
struct TridiagSymbol {
  Vec diagonal;      // N entries
  Vec offdiagonal;   // N-1 entries, strictly positive
  Mat dense() const; // assembled for oracles and similarity checks
};

struct EigenDecomp {
  // Wave speeds, indexed n = 1..N at [n-1]. mu_plus[0] is the fast
  // (barotropic) speed; ordering mu_minus[0] < ... < mu_minus[N-1]
  //   < mu_plus[N-1] < ... < mu_plus[0].
  std::vector<double> mu_plus;
  std::vector<double> mu_minus;
  std::vector<double> mu_trivial;  // u_n^x, d=2 only (empty for d=1)
  std::vector<Mat> P_plus;
  std::vector<Mat> P_minus;
  std::vector<Mat> P_trivial;
  bool is_real = false;
  double min_gap = 0.0;  // smallest spacing between wave eigenvalues
};

/// Advective eigenpairs (u_n^x, P0_n) of (1/rho) B^x for d=2, with the
/// projections in closed form P0_n = (J^F)^{-1} Pi_{2N+n} J^F. Valid even
/// when the advective eigenvalues coincide. Throws for d=1.
std::vector<std::pair<double, Mat>> trivial_eigenpairs(const Params& p,
                                                       const Vec& v_point);

/// T^rho at a rest-type point (all velocity entries zero). Assembled from
/// the factor matrices D(e_rho) D(r~)^{-1/2} Delta^T D(h^{-1}) D(gamma)
/// Delta D(r~)^{-1/2} D(e_rho), never by a numerical inverse.
TridiagSymbol tridiag_symbol(const Params& p, const Vec& z_point);

/// The 2N wave speeds at a rest-type point, sorted ascending, computed with
/// a dedicated symmetric-tridiagonal eigensolver.
Vec rest_wave_speeds(const Params& p, const Vec& z_point);

/// Full eigendecomposition of (1/rho) B^x at an admissible V point.
/// Trivial projections use the closed form; wave projections are built from
/// right/left eigenvector pairs, P = v l^T / (l^T v), with right
/// eigenvectors normalized to unit norm and first nonzero component
/// positive. Throws ComplexPairDetected or DegenerateGap.
EigenDecomp eigendecompose_Bx(const Params& p, const Vec& v_point);

/// Symmetrizer T^x = sum over all spectral projections of P^T P.
Mat symmetrizer_T(const Params& p, const Vec& v_point);

struct HyperbolicityReport {
  bool pass = false;
  bool depth_ok = false;
  bool shear_ok = false;
  bool all_real = false;
  double min_depth = 0.0;
  int worst_depth_layer = 0;   // 1-based; 0 if depths fine everywhere
  double max_shear = 0.0;
  double min_gap = 0.0;        // over all points that decomposed
  int first_bad_index = -1;    // grid index of first complex pair, -1 if none
};

/// Pointwise worst-case hyperbolicity survey of a V-field (depth margin h0,
/// shear bound 1/nu). Diagnostic: never throws on bad points, records them.
HyperbolicityReport check_hyperbolicity(const Params& p, const Grid& g,
                                        const StateV& v, double h0, double nu);
HyperbolicityReport check_hyperbolicity(const Params& p, const Grid& g,
                                        const StateU& u, double h0, double nu);

}  // namespace mlsw
