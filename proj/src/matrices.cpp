#include "mlsw/matrices.hpp"

#include <cmath>
#include <stdexcept>

namespace mlsw {

namespace {

// M(u), H(zeta), R blocks of (1/rho) A^x; the 1/rho factors of the first
// row/column are already included.
Mat block_M(const Params& p, const Vec& u) {
  const int N = p.N;
  Mat m = Mat::Zero(N, N);
  for (int n = 1; n <= N; ++n) {
    m(n - 1, n - 1) = u[n - 1];
    for (int i = n + 1; i <= N; ++i) {
      const double diff = u[i - 1] - u[i - 2];
      m(n - 1, i - 1) = (n == 1) ? diff / p.rho : diff;
    }
  }
  return m;
}

Mat block_H(const Params& p, const Vec& h) {
  const int N = p.N;
  Mat m = Mat::Zero(N, N);
  for (int i = 1; i <= N; ++i) m(0, i - 1) = h[i - 1] / p.rho;
  for (int n = 2; n <= N; ++n)
    for (int i = n; i <= N; ++i) m(n - 1, i - 1) = h[i - 1];
  return m;
}

Mat block_R(const Params& p) {
  const int N = p.N;
  Mat m = Mat::Zero(N, N);
  for (int n = 1; n <= N; ++n) {
    m(n - 1, 0) = p.gamma_of(1) / (p.rho * p.gamma_of(n));
    for (int i = 2; i <= n; ++i) m(n - 1, i - 1) = p.r_of(i) / p.gamma_of(n);
  }
  return m;
}

Mat block_D(const Vec& u) { return u.asDiagonal(); }

}  // namespace

Mat assemble_Ax(const Params& p, const Vec& u_point) {
  const int N = p.N, d = p.d, sz = N * (1 + d);
  const Vec h = point_depths(p, u_point);
  const Vec ux = u_point.segment(N, N);
  Mat A = Mat::Zero(sz, sz);
  A.topLeftCorner(N, N) = block_M(p, ux);
  A.block(0, N, N, N) = block_H(p, h);
  A.block(N, 0, N, N) = block_R(p);
  A.block(N, N, N, N) = block_D(ux);
  if (d == 2) A.block(2 * N, 2 * N, N, N) = block_D(ux);
  return A;
}

Mat assemble_Ay(const Params& p, const Vec& u_point) {
  if (p.d != 2)
    throw std::invalid_argument("A^y exists only in dimension d=2");
  const int N = p.N, sz = 3 * N;
  const Vec h = point_depths(p, u_point);
  const Vec uy = u_point.segment(2 * N, N);
  Mat A = Mat::Zero(sz, sz);
  A.topLeftCorner(N, N) = block_M(p, uy);
  A.block(0, 2 * N, N, N) = block_H(p, h);
  A.block(2 * N, 0, N, N) = block_R(p);
  A.block(N, N, N, N) = block_D(uy);
  A.block(2 * N, 2 * N, N, N) = block_D(uy);
  return A;
}

Mat rotation_Q(const Params& p, double xix, double xiy) {
  const int N = p.N;
  const double norm = std::hypot(xix, xiy);
  if (!(norm > 0.0)) throw std::invalid_argument("Q(xi) requires xi != 0");
  if (p.d == 1) return Mat::Identity(2 * N, 2 * N);
  const double cx = xix / norm, cy = xiy / norm;
  Mat Q = Mat::Zero(3 * N, 3 * N);
  Q.topLeftCorner(N, N).setIdentity();
  Q.block(N, N, N, N) = cx * Mat::Identity(N, N);
  Q.block(N, 2 * N, N, N) = cy * Mat::Identity(N, N);
  Q.block(2 * N, N, N, N) = -cy * Mat::Identity(N, N);
  Q.block(2 * N, 2 * N, N, N) = cx * Mat::Identity(N, N);
  return Q;
}

Mat symbol_A(const Params& p, const Vec& u_point, double xix, double xiy) {
  if (!(std::hypot(xix, xiy) > 0.0))
    throw std::invalid_argument("symbol requires xi != 0");
  if (p.d == 1) return xix * assemble_Ax(p, u_point);
  Mat A = xix * assemble_Ax(p, u_point);
  if (xiy != 0.0) A += xiy * assemble_Ay(p, u_point);
  return A;
}

Mat assemble_Bx(const Params& p, const Vec& v_point) {
  const Mat J = jacobian_F(p, v_point);
  const Vec u_point = v_to_u_point(p, v_point);
  const Mat Jinv = jacobian_Finv(p, u_point);
  return Jinv * assemble_Ax(p, u_point) * J;
}

Mat assemble_By(const Params& p, const Vec& v_point) {
  const Mat J = jacobian_F(p, v_point);
  const Vec u_point = v_to_u_point(p, v_point);
  const Mat Jinv = jacobian_Finv(p, u_point);
  return Jinv * assemble_Ay(p, u_point) * J;
}

Mat symmetrizer_Sx(const Params& p, const Vec& u_point) {
  return symmetrizer_Sx(p, u_point, -u_point[p.N]);
}

Mat symmetrizer_Sx(const Params& p, const Vec& u_point, double Kx) {
  const int N = p.N, d = p.d, sz = N * (1 + d);
  const Vec h = point_depths(p, u_point);
  const Vec ux = u_point.segment(N, N);
  Vec gk(N);
  for (int n = 1; n <= N; ++n) gk[n - 1] = p.gamma_of(n) * (ux[n - 1] + Kx);
  const Mat L = -(gk.asDiagonal() * diff_matrix(N) * d_erho(p)).eval();
  Vec gh(N);
  for (int n = 1; n <= N; ++n) gh[n - 1] = p.gamma_of(n) * h[n - 1];
  Mat S = Mat::Zero(sz, sz);
  S.topLeftCorner(N, N) = d_rtilde(p);
  S.block(0, N, N, N) = L.transpose();
  S.block(N, 0, N, N) = L;
  S.block(N, N, N, N) = gh.asDiagonal();
  if (d == 2) S.block(2 * N, 2 * N, N, N) = gh.asDiagonal();
  return S;
}

Mat diff_matrix(int N) {
  Mat m = Mat::Zero(N, N);
  for (int n = 0; n < N; ++n) {
    m(n, n) = -1.0;
    if (n + 1 < N) m(n, n + 1) = 1.0;
  }
  return m;
}

Mat d_erho(const Params& p) {
  Vec e = Vec::Ones(p.N);
  e[0] = p.rho;
  return e.asDiagonal();
}

Mat d_rtilde(const Params& p) {
  Vec rt(p.N);
  rt[0] = p.gamma_of(1);
  for (int i = 2; i <= p.N; ++i) rt[i - 1] = p.r_of(i);
  return rt.asDiagonal();
}

Mat proj_fast(const Params& p) {
  const int N = p.N, sz = p.state_size();
  Mat m = Mat::Zero(sz, sz);
  m(0, 0) = 1.0;
  for (int dir = 1; dir <= p.d; ++dir) {
    const int w = N * (1 + dir) - 1;
    m(w, w) = 1.0;
  }
  return m;
}

Mat proj_fast_x(const Params& p) {
  const int N = p.N, sz = p.state_size();
  Mat m = Mat::Zero(sz, sz);
  m(0, 0) = 1.0;
  m(2 * N - 1, 2 * N - 1) = 1.0;
  return m;
}

}  // namespace mlsw
