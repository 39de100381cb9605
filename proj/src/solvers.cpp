#include "mlsw/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "mlsw/changevar.hpp"

#include "mlsw/simd/kernels.hpp"

namespace mlsw {

namespace {

constexpr double kDepthFloor = 1e-8;

void check_floor(const std::vector<Field>& h) {
  for (std::size_t n = 0; n < h.size(); ++n) {
    const double hmin = kernels::min(h[n].data(), h[n].size());
    if (hmin < kDepthFloor)
      throw DepthLoss("layer " + std::to_string(n + 1) +
                      " depth fell to " + std::to_string(hmin));
  }
}

Field pmul(const Spectral& sp, const Field& a, const Field& b, bool dealias) {
  Field c(a.size());
  kernels::mul(a.data(), b.data(), c.data(), a.size());
  if (dealias) sp.dealias(c);
  return c;
}

void f_axpy(double alpha, const Field& x, Field& y) {
  kernels::axpy(alpha, x.data(), y.data(), y.size());
}

// Advection (u . grad) u of one layer, per direction.
void advection(const Grid& g, const Spectral& sp, const Field& ux,
               const Field& uy, bool dealias, Field& adv_x, Field& adv_y) {
  adv_x = pmul(sp, ux, sp.deriv_x(ux), dealias);
  if (g.d == 2) {
    Field t = pmul(sp, uy, sp.deriv_y(ux), dealias);
    f_axpy(1.0, t, adv_x);
    adv_y = pmul(sp, ux, sp.deriv_x(uy), dealias);
    t = pmul(sp, uy, sp.deriv_y(uy), dealias);
    f_axpy(1.0, t, adv_y);
  }
}

// Divergences of the layer fluxes h_n u_n and their suffix sums
// S[n] = sum_{i >= n} div(h_i u_i), 0-based S[n-1].
std::vector<Field> flux_divergence_suffix(const Params& p, const Grid& g,
                                          const Spectral& sp,
                                          const std::vector<Field>& h,
                                          const std::vector<Field>& ux,
                                          const std::vector<Field>& uy,
                                          bool dealias) {
  const int N = p.N;
  std::vector<Field> suffix(N);
  Field acc = g.zero_field();
  for (int n = N; n >= 1; --n) {
    Field div = sp.deriv_x(pmul(sp, h[n - 1], ux[n - 1], dealias));
    if (g.d == 2) {
      Field dy = sp.deriv_y(pmul(sp, h[n - 1], uy[n - 1], dealias));
      f_axpy(1.0, dy, div);
    }
    f_axpy(1.0, div, acc);
    suffix[n - 1] = acc;
  }
  return suffix;
}

}  // namespace

StateU fs_rhs_u(const Params& p, const Grid& g, const Spectral& sp,
                const StateU& u, bool dealias) {
  const int N = p.N;
  const auto h = layer_depths(p, g, u);
  check_floor(h);

  StateU t = make_rest_state_u(p, g);
  const auto suffix =
      flux_divergence_suffix(p, g, sp, h, u.ux, u.uy, dealias);
  t.scaled_zeta1 = suffix[0];
  for (double& v : t.scaled_zeta1) v *= -1.0 / p.rho;
  for (int n = 2; n <= N; ++n) {
    t.zeta[n - 2] = suffix[n - 1];
    for (double& v : t.zeta[n - 2]) v *= -1.0;
  }

  const Field gz1x = sp.deriv_x(u.scaled_zeta1);
  const Field gz1y = g.d == 2 ? sp.deriv_y(u.scaled_zeta1) : Field();
  std::vector<Field> gzx(N + 1), gzy(N + 1);
  for (int n = 2; n <= N; ++n) {
    gzx[n] = sp.deriv_x(u.zeta[n - 2]);
    if (g.d == 2) gzy[n] = sp.deriv_y(u.zeta[n - 2]);
  }

  for (int n = 1; n <= N; ++n) {
    Field adv_x, adv_y;
    advection(g, sp, u.ux[n - 1], g.d == 2 ? u.uy[n - 1] : Field(), dealias,
              adv_x, adv_y);
    const double cz1 = p.gamma_of(1) / (p.rho * p.gamma_of(n));
    Field& tx = t.ux[n - 1];
    f_axpy(-cz1, gz1x, tx);
    for (int i = 2; i <= n; ++i)
      f_axpy(-p.r_of(i) / p.gamma_of(n), gzx[i], tx);
    f_axpy(-1.0, adv_x, tx);
    if (g.d == 2) {
      Field& ty = t.uy[n - 1];
      f_axpy(-cz1, gz1y, ty);
      for (int i = 2; i <= n; ++i)
        f_axpy(-p.r_of(i) / p.gamma_of(n), gzy[i], ty);
      f_axpy(-1.0, adv_y, ty);
    }
  }
  return t;
}

StateV fs_rhs_v(const Params& p, const Grid& g, const Spectral& sp,
                const StateV& v, bool dealias) {
  const int N = p.N;
  const StateU u = v_to_u(p, g, v);
  const auto h = layer_depths(p, g, u);
  check_floor(h);

  StateV t = make_rest_state_v(p, g);

  // Surface equation directly from w.
  t.scaled_zeta1 = sp.deriv_x(v.wx);
  if (g.d == 2) f_axpy(1.0, sp.deriv_y(v.wy), t.scaled_zeta1);
  for (double& x : t.scaled_zeta1) x *= -1.0 / p.rho;

  const auto suffix =
      flux_divergence_suffix(p, g, sp, h, u.ux, u.uy, dealias);
  for (int n = 2; n <= N; ++n) {
    t.zeta[n - 2] = suffix[n - 1];
    for (double& x : t.zeta[n - 2]) x *= -1.0;
  }

  std::vector<Field> gzx(N + 1), gzy(N + 1);
  gzx[1] = sp.deriv_x(v.scaled_zeta1);
  if (g.d == 2) gzy[1] = sp.deriv_y(v.scaled_zeta1);
  for (int n = 2; n <= N; ++n) {
    gzx[n] = sp.deriv_x(v.zeta[n - 2]);
    if (g.d == 2) gzy[n] = sp.deriv_y(v.zeta[n - 2]);
  }

  std::vector<Field> adv_x(N), adv_y(N);
  for (int n = 1; n <= N; ++n)
    advection(g, sp, u.ux[n - 1], g.d == 2 ? u.uy[n - 1] : Field(), dealias,
              adv_x[n - 1], adv_y[n - 1]);

  // Shear equations.
  for (int n = 2; n <= N; ++n) {
    Field& tx = t.vx[n - 2];
    f_axpy(-p.r_of(n), gzx[n], tx);
    f_axpy(-p.gamma_of(n), adv_x[n - 1], tx);
    f_axpy(p.gamma_of(n - 1), adv_x[n - 2], tx);
    if (g.d == 2) {
      Field& ty = t.vy[n - 2];
      f_axpy(-p.r_of(n), gzy[n], ty);
      f_axpy(-p.gamma_of(n), adv_y[n - 1], ty);
      f_axpy(p.gamma_of(n - 1), adv_y[n - 2], ty);
    }
  }

  // Momentum equation: pressure terms with the space-varying coefficients
  // G_i = sum_{j >= i} gamma_j^{-1} h_j, then the flux-form nonlinearity.
  std::vector<Field> G(N + 1);
  G[N] = h[N - 1];
  for (double& x : G[N]) x /= p.gamma_of(N);
  for (int i = N - 1; i >= 1; --i) {
    G[i] = G[i + 1];
    f_axpy(1.0 / p.gamma_of(i), h[i - 1], G[i]);
  }

  f_axpy(-p.gamma_of(1) / p.rho,
         pmul(sp, G[1], gzx[1], dealias), t.wx);
  for (int i = 2; i <= N; ++i)
    f_axpy(-p.r_of(i), pmul(sp, G[i], gzx[i], dealias), t.wx);
  if (g.d == 2) {
    f_axpy(-p.gamma_of(1) / p.rho,
           pmul(sp, G[1], gzy[1], dealias), t.wy);
    for (int i = 2; i <= N; ++i)
      f_axpy(-p.r_of(i), pmul(sp, G[i], gzy[i], dealias), t.wy);
  }
  for (int i = 1; i <= N; ++i) {
    const Field fx = pmul(sp, h[i - 1], u.ux[i - 1], dealias);
    f_axpy(-1.0, sp.deriv_x(pmul(sp, fx, u.ux[i - 1], dealias)), t.wx);
    if (g.d == 2) {
      const Field fy = pmul(sp, h[i - 1], u.uy[i - 1], dealias);
      f_axpy(-1.0, sp.deriv_y(pmul(sp, fy, u.ux[i - 1], dealias)), t.wx);
      f_axpy(-1.0, sp.deriv_x(pmul(sp, fx, u.uy[i - 1], dealias)), t.wy);
      f_axpy(-1.0, sp.deriv_y(pmul(sp, fy, u.uy[i - 1], dealias)), t.wy);
    }
  }
  return t;
}

double cfl_dt(const Params& p, const Grid& g, const StateU& u, double cfl) {
  const int N = p.N;
  const auto h = layer_depths(p, g, u);
  const int npts = g.size();
  double s_max = 0.0;
  for (int i = 0; i < npts; ++i) {
    double gsum = 0.0, umax = 0.0;
    for (int n = 1; n <= N; ++n) {
      gsum += h[n - 1][i] / p.gamma_of(n);
      double s2 = u.ux[n - 1][i] * u.ux[n - 1][i];
      if (g.d == 2) s2 += u.uy[n - 1][i] * u.uy[n - 1][i];
      umax = std::max(umax, std::sqrt(s2));
    }
    s_max = std::max(
        s_max, umax + std::sqrt(p.gamma_of(1) * gsum) / p.rho);
  }
  const double dx = g.d == 2 ? std::min(g.dx(), g.dy()) : g.dx();
  return cfl * dx / s_max;
}

namespace {

Field field_stage(const Field& y, double a, const Field& k) {
  Field out(y.size());
  kernels::stage(y.data(), a, k.data(), out.data(), y.size());
  return out;
}

}  // namespace

StateU state_stage(const StateU& y, double a, const StateU& k) {
  StateU out;
  out.scaled_zeta1 = field_stage(y.scaled_zeta1, a, k.scaled_zeta1);
  out.zeta.resize(y.zeta.size());
  out.ux.resize(y.ux.size());
  out.uy.resize(y.uy.size());
  for (std::size_t i = 0; i < y.zeta.size(); ++i)
    out.zeta[i] = field_stage(y.zeta[i], a, k.zeta[i]);
  for (std::size_t i = 0; i < y.ux.size(); ++i)
    out.ux[i] = field_stage(y.ux[i], a, k.ux[i]);
  for (std::size_t i = 0; i < y.uy.size(); ++i)
    out.uy[i] = field_stage(y.uy[i], a, k.uy[i]);
  return out;
}

StateV state_stage(const StateV& y, double a, const StateV& k) {
  StateV out;
  out.scaled_zeta1 = field_stage(y.scaled_zeta1, a, k.scaled_zeta1);
  out.zeta.resize(y.zeta.size());
  out.vx.resize(y.vx.size());
  out.vy.resize(y.vy.size());
  for (std::size_t i = 0; i < y.zeta.size(); ++i)
    out.zeta[i] = field_stage(y.zeta[i], a, k.zeta[i]);
  for (std::size_t i = 0; i < y.vx.size(); ++i)
    out.vx[i] = field_stage(y.vx[i], a, k.vx[i]);
  for (std::size_t i = 0; i < y.vy.size(); ++i)
    out.vy[i] = field_stage(y.vy[i], a, k.vy[i]);
  out.wx = field_stage(y.wx, a, k.wx);
  if (!y.wy.empty()) out.wy = field_stage(y.wy, a, k.wy);
  return out;
}

RigidLidState state_stage(const RigidLidState& y, double a,
                          const RigidLidState& k) {
  RigidLidState out;
  out.zeta.resize(y.zeta.size());
  out.ux.resize(y.ux.size());
  out.uy.resize(y.uy.size());
  for (std::size_t i = 0; i < y.zeta.size(); ++i)
    out.zeta[i] = field_stage(y.zeta[i], a, k.zeta[i]);
  for (std::size_t i = 0; i < y.ux.size(); ++i)
    out.ux[i] = field_stage(y.ux[i], a, k.ux[i]);
  for (std::size_t i = 0; i < y.uy.size(); ++i)
    out.uy[i] = field_stage(y.uy[i], a, k.uy[i]);
  return out;
}

void state_add_scaled(StateU& y, double a, const StateU& k) {
  f_axpy(a, k.scaled_zeta1, y.scaled_zeta1);
  for (std::size_t i = 0; i < y.zeta.size(); ++i) f_axpy(a, k.zeta[i], y.zeta[i]);
  for (std::size_t i = 0; i < y.ux.size(); ++i) f_axpy(a, k.ux[i], y.ux[i]);
  for (std::size_t i = 0; i < y.uy.size(); ++i) f_axpy(a, k.uy[i], y.uy[i]);
}

void state_add_scaled(StateV& y, double a, const StateV& k) {
  f_axpy(a, k.scaled_zeta1, y.scaled_zeta1);
  for (std::size_t i = 0; i < y.zeta.size(); ++i) f_axpy(a, k.zeta[i], y.zeta[i]);
  for (std::size_t i = 0; i < y.vx.size(); ++i) f_axpy(a, k.vx[i], y.vx[i]);
  for (std::size_t i = 0; i < y.vy.size(); ++i) f_axpy(a, k.vy[i], y.vy[i]);
  f_axpy(a, k.wx, y.wx);
  if (!y.wy.empty()) f_axpy(a, k.wy, y.wy);
}

void state_add_scaled(RigidLidState& y, double a, const RigidLidState& k) {
  for (std::size_t i = 0; i < y.zeta.size(); ++i) f_axpy(a, k.zeta[i], y.zeta[i]);
  for (std::size_t i = 0; i < y.ux.size(); ++i) f_axpy(a, k.ux[i], y.ux[i]);
  for (std::size_t i = 0; i < y.uy.size(); ++i) f_axpy(a, k.uy[i], y.uy[i]);
}

AcousticState acoustic_propagate(const Params& p, const Grid& g,
                                 const Spectral& sp, const AcousticState& a,
                                 double t) {
  // Irrotationality gate: the propagator only rotates the longitudinal part.
  {
    Field px = a.wx, py = a.wy;
    sp.leray_project(px, py);
    double res = field_l2_dist(g, px, a.wx);
    if (g.d == 2) res = std::hypot(res, field_l2_dist(g, py, a.wy));
    if (res > 1e-10)
      throw std::invalid_argument(
          "acoustic input has a rotational component (residual " +
          std::to_string(res) + ")");
  }

  const double delta = p.total_depth;
  const double sqrt_delta = std::sqrt(delta);
  Spectrum sz, sx, sy;
  sp.forward(a.scaled_zeta1, sz);
  sp.forward(a.wx, sx);
  if (g.d == 2) sp.forward(a.wy, sy);

  for (int j = 0; j < (g.d == 2 ? g.ny : 1); ++j) {
    for (int i = 0; i < g.nx / 2 + 1; ++i) {
      const double kx = sp.kx_of(i), ky = g.d == 2 ? sp.ky_of(j) : 0.0;
      const double kn = std::hypot(kx, ky);
      const int id = sp.kidx(i, j);
      if (kn == 0.0) continue;  // mean values are invariant
      const double omega = sqrt_delta * kn / p.rho;
      const double c = std::cos(omega * t), s = std::sin(omega * t);
      const std::complex<double> eta0 = sz[id];
      std::complex<double> a0 = (kx / kn) * sx[id];
      if (g.d == 2) a0 += (ky / kn) * sy[id];
      const std::complex<double> im(0.0, 1.0);
      const std::complex<double> eta = eta0 * c - im * (a0 / sqrt_delta) * s;
      const std::complex<double> amp = a0 * c - im * sqrt_delta * eta0 * s;
      sz[id] = eta;
      sx[id] = (kx / kn) * amp;
      if (g.d == 2) sy[id] = (ky / kn) * amp;
    }
  }

  AcousticState out;
  sp.backward(sz, out.scaled_zeta1);
  sp.backward(sx, out.wx);
  if (g.d == 2) sp.backward(sy, out.wy);
  return out;
}

double acoustic_invariant(const Params& p, const Grid& g,
                          const AcousticState& a) {
  const double nz = field_l2_norm(g, a.scaled_zeta1);
  double nw2 = field_l2_norm(g, a.wx);
  nw2 *= nw2;
  if (g.d == 2) {
    const double ny = field_l2_norm(g, a.wy);
    nw2 += ny * ny;
  }
  return nz * nz + nw2 / p.total_depth;
}

namespace {

std::vector<Field> rl_depths(const Params& p, const Grid& g,
                             const RigidLidState& s) {
  const int N = p.N;
  std::vector<Field> h(N);
  for (int n = 1; n <= N; ++n) {
    h[n - 1] = Field(g.size(), p.delta_of(n));
    const Field* above = (n >= 2) ? &s.zeta[n - 2] : nullptr;  // zeta_1 == 0
    const Field* below = (n < N) ? &s.zeta[n - 1] : nullptr;
    for (int i = 0; i < g.size(); ++i) {
      if (above) h[n - 1][i] += (*above)[i];
      if (below) h[n - 1][i] -= (*below)[i];
    }
  }
  return h;
}

// x-component is stored first; returns the vector field
// sum_n [ div(h_n u_n tensor u_n) + h_n sum_{i<=n} r_i grad zeta_i ].
void rl_poisson_vector(const Params& p, const Grid& g, const Spectral& sp,
                       const RigidLidState& s, const std::vector<Field>& h,
                       bool dealias, Field& gx, Field& gy) {
  const int N = p.N;
  gx = g.zero_field();
  gy = g.d == 2 ? g.zero_field() : Field();
  std::vector<Field> gzx(N + 1), gzy(N + 1);
  for (int i = 2; i <= N; ++i) {
    gzx[i] = sp.deriv_x(s.zeta[i - 2]);
    if (g.d == 2) gzy[i] = sp.deriv_y(s.zeta[i - 2]);
  }
  for (int n = 1; n <= N; ++n) {
    const Field fx = pmul(sp, h[n - 1], s.ux[n - 1], dealias);
    f_axpy(1.0, sp.deriv_x(pmul(sp, fx, s.ux[n - 1], dealias)), gx);
    if (g.d == 2) {
      const Field fy = pmul(sp, h[n - 1], s.uy[n - 1], dealias);
      f_axpy(1.0, sp.deriv_y(pmul(sp, fy, s.ux[n - 1], dealias)), gx);
      f_axpy(1.0, sp.deriv_x(pmul(sp, fx, s.uy[n - 1], dealias)), gy);
      f_axpy(1.0, sp.deriv_y(pmul(sp, fy, s.uy[n - 1], dealias)), gy);
    }
    for (int i = 2; i <= n; ++i) {
      f_axpy(p.r_of(i), pmul(sp, h[n - 1], gzx[i], dealias), gx);
      if (g.d == 2)
        f_axpy(p.r_of(i), pmul(sp, h[n - 1], gzy[i], dealias), gy);
    }
  }
}

}  // namespace

Field rl_pressure(const Params& p, const Grid& g, const Spectral& sp,
                  const RigidLidState& s, bool dealias) {
  const auto h = rl_depths(p, g, s);
  check_floor(h);
  Field gx, gy;
  rl_poisson_vector(p, g, sp, s, h, dealias, gx, gy);
  Field rhs = sp.deriv_x(gx);
  if (g.d == 2) f_axpy(1.0, sp.deriv_y(gy), rhs);
  for (double& v : rhs) v /= -p.total_depth;
  return sp.inv_laplacian(rhs);
}

RigidLidState rl_rhs(const Params& p, const Grid& g, const Spectral& sp,
                     const RigidLidState& s, bool dealias) {
  const int N = p.N;
  const auto h = rl_depths(p, g, s);
  check_floor(h);

  RigidLidState t;
  t.zeta.assign(N - 1, g.zero_field());
  t.ux.assign(N, g.zero_field());
  t.uy.assign(g.d == 2 ? N : 0, g.zero_field());

  const auto suffix =
      flux_divergence_suffix(p, g, sp, h, s.ux, s.uy, dealias);
  for (int n = 2; n <= N; ++n) {
    t.zeta[n - 2] = suffix[n - 1];
    for (double& v : t.zeta[n - 2]) v *= -1.0;
  }

  const Field press = rl_pressure(p, g, sp, s, dealias);
  const Field gpx = sp.deriv_x(press);
  const Field gpy = g.d == 2 ? sp.deriv_y(press) : Field();

  std::vector<Field> gzx(N + 1), gzy(N + 1);
  for (int i = 2; i <= N; ++i) {
    gzx[i] = sp.deriv_x(s.zeta[i - 2]);
    if (g.d == 2) gzy[i] = sp.deriv_y(s.zeta[i - 2]);
  }

  for (int n = 1; n <= N; ++n) {
    Field adv_x, adv_y;
    advection(g, sp, s.ux[n - 1], g.d == 2 ? s.uy[n - 1] : Field(), dealias,
              adv_x, adv_y);
    Field& tx = t.ux[n - 1];
    f_axpy(-1.0, gpx, tx);
    for (int i = 2; i <= n; ++i) f_axpy(-p.r_of(i), gzx[i], tx);
    f_axpy(-1.0, adv_x, tx);
    if (g.d == 2) {
      Field& ty = t.uy[n - 1];
      f_axpy(-1.0, gpy, ty);
      for (int i = 2; i <= n; ++i) f_axpy(-p.r_of(i), gzy[i], ty);
      f_axpy(-1.0, adv_y, ty);
    }
  }
  return t;
}

void rl_project(const Params& p, const Grid& g, const Spectral& sp,
                RigidLidState& s) {
  const auto h = rl_depths(p, g, s);
  Field wx = g.zero_field(), wy = g.d == 2 ? g.zero_field() : Field();
  for (int n = 1; n <= p.N; ++n) {
    kernels::mul_acc(h[n - 1].data(), s.ux[n - 1].data(), wx.data(),
                     wx.size());
    if (g.d == 2)
      kernels::mul_acc(h[n - 1].data(), s.uy[n - 1].data(), wy.data(),
                       wy.size());
  }
  sp.leray_project(wx, wy);
  for (int n = 1; n <= p.N; ++n) {
    f_axpy(-1.0 / p.total_depth, wx, s.ux[n - 1]);
    if (g.d == 2) f_axpy(-1.0 / p.total_depth, wy, s.uy[n - 1]);
  }
}

double rl_constraint_residual(const Params& p, const Grid& g,
                              const Spectral& sp, const RigidLidState& s) {
  const auto h = rl_depths(p, g, s);
  Field wx = g.zero_field(), wy = g.d == 2 ? g.zero_field() : Field();
  for (int n = 1; n <= p.N; ++n) {
    kernels::mul_acc(h[n - 1].data(), s.ux[n - 1].data(), wx.data(),
                     wx.size());
    if (g.d == 2)
      kernels::mul_acc(h[n - 1].data(), s.uy[n - 1].data(), wy.data(),
                       wy.size());
  }
  Field div = sp.deriv_x(wx);
  if (g.d == 2) f_axpy(1.0, sp.deriv_y(wy), div);
  return field_l2_norm(g, div);
}

double rl_cfl_dt(const Params& p, const Grid& g, const RigidLidState& s,
                 double cfl) {
  double r_sum = 0.0;
  for (int i = 2; i <= p.N; ++i) r_sum += p.r_of(i);
  double umax = 0.0;
  for (int n = 1; n <= p.N; ++n) {
    for (int i = 0; i < g.size(); ++i) {
      double s2 = s.ux[n - 1][i] * s.ux[n - 1][i];
      if (g.d == 2) s2 += s.uy[n - 1][i] * s.uy[n - 1][i];
      umax = std::max(umax, std::sqrt(s2));
    }
  }
  // Internal-wave speeds are below sqrt(delta * sum r_i); pad for safety.
  const double s_max = umax + std::sqrt(p.total_depth * std::max(r_sum, 1e-8));
  const double dx = g.d == 2 ? std::min(g.dx(), g.dy()) : g.dx();
  return cfl * dx / s_max;
}

StateU build_initial_data(const Params& p, const Grid& g, const Recipe& r) {
  StateU u = make_rest_state_u(p, g);
  for (const ModeSpec& m : r.modes) {
    Field* target = nullptr;
    if (m.field == "zeta") {
      if (m.layer < 1 || m.layer > p.N)
        throw std::invalid_argument("zeta layer out of range");
      target = m.layer == 1 ? &u.scaled_zeta1 : &u.zeta[m.layer - 2];
    } else if (m.field == "ux") {
      if (m.layer < 1 || m.layer > p.N)
        throw std::invalid_argument("ux layer out of range");
      target = &u.ux[m.layer - 1];
    } else if (m.field == "uy") {
      if (g.d != 2) throw std::invalid_argument("uy requires d=2");
      if (m.layer < 1 || m.layer > p.N)
        throw std::invalid_argument("uy layer out of range");
      target = &u.uy[m.layer - 1];
    } else {
      throw std::invalid_argument("unknown recipe field '" + m.field + "'");
    }
    const double kx = 2.0 * std::numbers::pi * m.mx / g.Lx;
    const double ky = g.d == 2 ? 2.0 * std::numbers::pi * m.my / g.Ly : 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        (*target)[g.idx(i, j)] +=
            m.amplitude * std::cos(kx * g.x_of(i) + ky * g.y_of(j) + m.phase);
  }
  const DepthCheck dc = check_depth_condition(p, g, u, r.depth_margin);
  if (!dc.ok)
    throw std::invalid_argument(
        "recipe violates the depth condition in layer " +
        std::to_string(dc.worst_layer));
  const ShearCheck sc = check_shear_condition(p, g, u, r.shear_nu);
  if (!sc.ok)
    throw std::invalid_argument("recipe violates the shear condition");
  return u;
}

std::vector<Field> total_flux(const Params& p, const Grid& g,
                              const StateU& u) {
  const auto h = layer_depths(p, g, u);
  std::vector<Field> w(g.d, g.zero_field());
  for (int n = 1; n <= p.N; ++n) {
    kernels::mul_acc(h[n - 1].data(), u.ux[n - 1].data(), w[0].data(),
                     w[0].size());
    if (g.d == 2)
      kernels::mul_acc(h[n - 1].data(), u.uy[n - 1].data(), w[1].data(),
                       w[1].size());
  }
  return w;
}

StateU wellprepare(const Params& p, const Grid& g, const Spectral& sp,
                   const StateU& u_in) {
  StateU u = u_in;
  for (double& v : u.scaled_zeta1) v *= p.rho;
  for (int pass = 0; pass < 2; ++pass) {
    auto w = total_flux(p, g, u);
    Field empty;
    sp.leray_project(w[0], g.d == 2 ? w[1] : empty);
    for (int n = 1; n <= p.N; ++n) {
      f_axpy(-1.0 / p.total_depth, w[0], u.ux[n - 1]);
      if (g.d == 2) f_axpy(-1.0 / p.total_depth, w[1], u.uy[n - 1]);
    }
  }
  return u;
}

StateU compose_Uapp(const Params& p, const Grid& g, const RigidLidState& rl,
                    const AcousticState& ac) {
  if (static_cast<int>(ac.scaled_zeta1.size()) != g.size() ||
      (!rl.zeta.empty() &&
       static_cast<int>(rl.zeta[0].size()) != g.size()) ||
      static_cast<int>(rl.ux[0].size()) != g.size())
    throw std::invalid_argument("grid mismatch in superposition");
  if (static_cast<int>(rl.p.size()) != g.size())
    throw std::invalid_argument("rigid-lid pressure missing");

  StateU u = make_rest_state_u(p, g);
  u.scaled_zeta1 = ac.scaled_zeta1;
  f_axpy(p.rho, rl.p, u.scaled_zeta1);
  for (int n = 2; n <= p.N; ++n) u.zeta[n - 2] = rl.zeta[n - 2];
  for (int n = 1; n <= p.N; ++n) {
    u.ux[n - 1] = rl.ux[n - 1];
    f_axpy(1.0 / p.total_depth, ac.wx, u.ux[n - 1]);
    if (g.d == 2) {
      u.uy[n - 1] = rl.uy[n - 1];
      f_axpy(1.0 / p.total_depth, ac.wy, u.uy[n - 1]);
    }
  }
  return u;
}

RigidLidState rl_from_u(const Params& p, const Grid& g, const Spectral& sp,
                        const StateU& u) {
  RigidLidState s;
  s.zeta = u.zeta;
  s.ux = u.ux;
  s.uy = u.uy;
  auto w = total_flux(p, g, u);
  Field empty;
  sp.leray_project(w[0], g.d == 2 ? w[1] : empty);
  for (int n = 1; n <= p.N; ++n) {
    f_axpy(-1.0 / p.total_depth, w[0], s.ux[n - 1]);
    if (g.d == 2) f_axpy(-1.0 / p.total_depth, w[1], s.uy[n - 1]);
  }
  return s;
}

AcousticState acoustic_from_u(const Params& p, const Grid& g,
                              const Spectral& sp, const StateU& u) {
  AcousticState a;
  a.scaled_zeta1 = u.scaled_zeta1;
  auto w = total_flux(p, g, u);
  a.wx = std::move(w[0]);
  if (g.d == 2) a.wy = std::move(w[1]);
  Field empty;
  sp.leray_project(a.wx, g.d == 2 ? a.wy : empty);
  return a;
}

}  // namespace mlsw
