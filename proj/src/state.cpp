#include "mlsw/state.hpp"

#include <cmath>

#include "mlsw/simd/kernels.hpp"

namespace mlsw {

StateU make_rest_state_u(const Params& p, const Grid& g) {
  StateU s;
  s.scaled_zeta1 = g.zero_field();
  s.zeta.assign(p.N - 1, g.zero_field());
  s.ux.assign(p.N, g.zero_field());
  if (p.d == 2) s.uy.assign(p.N, g.zero_field());
  return s;
}

StateV make_rest_state_v(const Params& p, const Grid& g) {
  StateV s;
  s.scaled_zeta1 = g.zero_field();
  s.zeta.assign(p.N - 1, g.zero_field());
  s.vx.assign(p.N - 1, g.zero_field());
  s.wx = g.zero_field();
  if (p.d == 2) {
    s.vy.assign(p.N - 1, g.zero_field());
    s.wy = g.zero_field();
  }
  return s;
}

std::vector<Field> layer_depths(const Params& p, const Grid& g,
                                const StateU& u) {
  const std::size_t m = g.size();
  std::vector<Field> h(p.N, Field(m));
  for (int n = 1; n <= p.N; ++n) {
    Field& hn = h[n - 1];
    const double dn = p.delta_of(n);
    // zeta_n with zeta_1 = rho * scaled_zeta1 and zeta_{N+1} = 0
    const Field* upper = (n == 1) ? &u.scaled_zeta1
                                  : (n <= p.N ? &u.zeta[n - 2] : nullptr);
    const Field* lower = (n + 1 <= p.N) ? &u.zeta[n - 1] : nullptr;
    const double cu = (n == 1) ? p.rho : 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      double v = dn;
      if (upper) v += cu * (*upper)[i];
      if (lower) v -= (*lower)[i];
      hn[i] = v;
    }
  }
  return h;
}

DepthCheck check_depth_condition(const Params& p, const Grid& g,
                                 const StateU& u, double h0) {
  const auto h = layer_depths(p, g, u);
  DepthCheck out;
  out.min_depth.resize(p.N);
  double worst = h0;
  for (int n = 0; n < p.N; ++n) {
    out.min_depth[n] = kernels::min(h[n].data(), h[n].size());
    if (out.min_depth[n] < worst) {
      worst = out.min_depth[n];
      out.worst_layer = n + 1;
      out.ok = false;
    }
  }
  return out;
}

ShearCheck check_shear_condition(const Params& p, const Grid& g,
                                 const StateU& u, double nu) {
  ShearCheck out;
  const std::size_t m = g.size();
  double max_sq = 0.0;
  for (int n = 2; n <= p.N; ++n) {
    const Field& ax = u.ux[n - 1];
    const Field& bx = u.ux[n - 2];
    const Field* ay = p.d == 2 ? &u.uy[n - 1] : nullptr;
    const Field* by = p.d == 2 ? &u.uy[n - 2] : nullptr;
    for (std::size_t i = 0; i < m; ++i) {
      const double sx = ax[i] - bx[i];
      double sq = sx * sx;
      if (ay) {
        const double sy = (*ay)[i] - (*by)[i];
        sq += sy * sy;
      }
      if (sq > max_sq) max_sq = sq;
    }
  }
  out.max_shear = std::sqrt(max_sq);
  out.ok = out.max_shear < 1.0 / nu;
  return out;
}

double field_l2_norm(const Grid& g, const Field& f) {
  const double cell = g.area() / g.size();
  return std::sqrt(cell * kernels::dot(f.data(), f.data(), f.size()));
}

double field_l2_dist(const Grid& g, const Field& a, const Field& b) {
  const double cell = g.area() / g.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(cell * acc);
}

}  // namespace mlsw
