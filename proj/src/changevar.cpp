#include "mlsw/changevar.hpp"

#include <cmath>

namespace mlsw {

namespace {

constexpr double kDepthFloor = 1e-10;

// alpha_{n,j} of (VtoU), given the gamma^{-1}-weighted depths gh_i.
double alpha(const Vec& gh, int n, int j, int N) {
  double s = 0.0;
  if (j <= n) {
    for (int i = 1; i <= j - 1; ++i) s += gh[i - 1];
  } else {
    for (int i = j; i <= N; ++i) s -= gh[i - 1];
  }
  return s;
}

// Velocity block of U for one direction: u_n from (w, v_2..v_N) and depths.
Vec velocities_from_shear(const Params& p, const Vec& h, const Vec& vshear,
                          double w) {
  const int N = p.N;
  Vec gh(N);
  double ghsum = 0.0;
  for (int i = 1; i <= N; ++i) {
    gh[i - 1] = h[i - 1] / p.gamma_of(i);
    ghsum += gh[i - 1];
  }
  Vec u(N);
  for (int n = 1; n <= N; ++n) {
    double acc = w;
    for (int j = 2; j <= N; ++j) acc += alpha(gh, n, j, N) * vshear[j - 2];
    u[n - 1] = acc / (p.gamma_of(n) * ghsum);
  }
  return u;
}

}  // namespace

Vec point_depths(const Params& p, const Vec& point) {
  const int N = p.N;
  Vec h(N);
  for (int n = 1; n <= N; ++n) {
    const double upper = (n == 1) ? p.rho * point[0] : point[n - 1];
    const double lower = (n < N) ? point[n] : 0.0;
    h[n - 1] = p.delta_of(n) + upper - lower;
    if (!(h[n - 1] > kDepthFloor))
      throw DepthError("non-positive depth in layer " + std::to_string(n));
  }
  return h;
}

Vec u_to_v_point(const Params& p, const Vec& u) {
  const int N = p.N, d = p.d;
  const Vec h = point_depths(p, u);
  Vec v(N * (1 + d));
  v.head(N) = u.head(N);
  for (int dir = 0; dir < d; ++dir) {
    const int ub = N + dir * N;        // u velocity block offset
    const int vb = N + dir * N;        // v velocity block offset
    double w = 0.0;
    for (int n = 1; n <= N; ++n) w += h[n - 1] * u[ub + n - 1];
    for (int i = 2; i <= N; ++i)
      v[vb + i - 2] =
          p.gamma_of(i) * u[ub + i - 1] - p.gamma_of(i - 1) * u[ub + i - 2];
    v[vb + N - 1] = w;
  }
  return v;
}

Vec v_to_u_point(const Params& p, const Vec& v) {
  const int N = p.N, d = p.d;
  const Vec h = point_depths(p, v);
  Vec u(N * (1 + d));
  u.head(N) = v.head(N);
  for (int dir = 0; dir < d; ++dir) {
    const int b = N + dir * N;
    const Vec vshear = v.segment(b, N - 1);
    u.segment(b, N) = velocities_from_shear(p, h, vshear, v[b + N - 1]);
  }
  return u;
}

namespace {

// Delta_h(zeta): first N-1 rows bidiagonal (-gamma_n, gamma_{n+1}), last row
// the depths.
Mat delta_h(const Params& p, const Vec& h) {
  const int N = p.N;
  Mat m = Mat::Zero(N, N);
  for (int n = 1; n <= N - 1; ++n) {
    m(n - 1, n - 1) = -p.gamma_of(n);
    m(n - 1, n) = p.gamma_of(n + 1);
  }
  for (int j = 0; j < N; ++j) m(N - 1, j) = h[j];
  return m;
}

// Closed-form (Delta_h)^{-1}_{n,j} = gamma_n^{-1}/(sum gamma_i^{-1} h_i) *
// alpha_{n,j+1}, with the convention alpha_{n,N+1} = 1.
Mat delta_h_inverse(const Params& p, const Vec& h) {
  const int N = p.N;
  Vec gh(N);
  double ghsum = 0.0;
  for (int i = 1; i <= N; ++i) {
    gh[i - 1] = h[i - 1] / p.gamma_of(i);
    ghsum += gh[i - 1];
  }
  Mat m(N, N);
  for (int n = 1; n <= N; ++n) {
    for (int j = 1; j <= N; ++j) {
      const double a = (j == N) ? 1.0 : alpha(gh, n, j + 1, N);
      m(n - 1, j - 1) = a / (p.gamma_of(n) * ghsum);
    }
  }
  return m;
}

// C(u): zero except the last row (rho*u_1, u_2-u_1, ..., u_N-u_{N-1}).
Mat c_of(const Params& p, const Vec& ublock) {
  const int N = p.N;
  Mat m = Mat::Zero(N, N);
  m(N - 1, 0) = p.rho * ublock[0];
  for (int j = 2; j <= N; ++j)
    m(N - 1, j - 1) = ublock[j - 1] - ublock[j - 2];
  return m;
}

}  // namespace

Mat jacobian_Finv(const Params& p, const Vec& u_point) {
  const int N = p.N, d = p.d, sz = N * (1 + d);
  const Vec h = point_depths(p, u_point);
  const Mat dh = delta_h(p, h);
  Mat J = Mat::Zero(sz, sz);
  J.topLeftCorner(N, N).setIdentity();
  for (int dir = 0; dir < d; ++dir) {
    const int b = N * (1 + dir);
    J.block(b, b, N, N) = dh;
    J.block(b, 0, N, N) = c_of(p, u_point.segment(b, N));
  }
  return J;
}

Mat jacobian_F(const Params& p, const Vec& v_point) {
  const int N = p.N, d = p.d, sz = N * (1 + d);
  const Vec u_point = v_to_u_point(p, v_point);
  const Vec h = point_depths(p, v_point);
  const Mat dhi = delta_h_inverse(p, h);
  Mat J = Mat::Zero(sz, sz);
  J.topLeftCorner(N, N).setIdentity();
  for (int dir = 0; dir < d; ++dir) {
    const int b = N * (1 + dir);
    J.block(b, b, N, N) = dhi;
    J.block(b, 0, N, N) = -dhi * c_of(p, u_point.segment(b, N));
  }
  return J;
}

Vec pack_u_point(const Params& p, const StateU& s, int i) {
  const int N = p.N;
  Vec u(p.state_size());
  u[0] = s.scaled_zeta1[i];
  for (int n = 2; n <= N; ++n) u[n - 1] = s.zeta[n - 2][i];
  for (int n = 1; n <= N; ++n) u[N + n - 1] = s.ux[n - 1][i];
  if (p.d == 2)
    for (int n = 1; n <= N; ++n) u[2 * N + n - 1] = s.uy[n - 1][i];
  return u;
}

Vec pack_v_point(const Params& p, const StateV& s, int i) {
  const int N = p.N;
  Vec v(p.state_size());
  v[0] = s.scaled_zeta1[i];
  for (int n = 2; n <= N; ++n) v[n - 1] = s.zeta[n - 2][i];
  for (int n = 2; n <= N; ++n) v[N + n - 2] = s.vx[n - 2][i];
  v[2 * N - 1] = s.wx[i];
  if (p.d == 2) {
    for (int n = 2; n <= N; ++n) v[2 * N + n - 2] = s.vy[n - 2][i];
    v[3 * N - 1] = s.wy[i];
  }
  return v;
}

void unpack_u_point(const Params& p, const Vec& point, StateU& s, int i) {
  const int N = p.N;
  s.scaled_zeta1[i] = point[0];
  for (int n = 2; n <= N; ++n) s.zeta[n - 2][i] = point[n - 1];
  for (int n = 1; n <= N; ++n) s.ux[n - 1][i] = point[N + n - 1];
  if (p.d == 2)
    for (int n = 1; n <= N; ++n) s.uy[n - 1][i] = point[2 * N + n - 1];
}

void unpack_v_point(const Params& p, const Vec& point, StateV& s, int i) {
  const int N = p.N;
  s.scaled_zeta1[i] = point[0];
  for (int n = 2; n <= N; ++n) s.zeta[n - 2][i] = point[n - 1];
  for (int n = 2; n <= N; ++n) s.vx[n - 2][i] = point[N + n - 2];
  s.wx[i] = point[2 * N - 1];
  if (p.d == 2) {
    for (int n = 2; n <= N; ++n) s.vy[n - 2][i] = point[2 * N + n - 2];
    s.wy[i] = point[3 * N - 1];
  }
}

StateV u_to_v(const Params& p, const Grid& g, const StateU& u) {
  StateV out = make_rest_state_v(p, g);
  for (int i = 0; i < g.size(); ++i)
    unpack_v_point(p, u_to_v_point(p, pack_u_point(p, u, i)), out, i);
  return out;
}

StateU v_to_u(const Params& p, const Grid& g, const StateV& v) {
  StateU out = make_rest_state_u(p, g);
  for (int i = 0; i < g.size(); ++i)
    unpack_u_point(p, v_to_u_point(p, pack_v_point(p, v, i)), out, i);
  return out;
}

}  // namespace mlsw
