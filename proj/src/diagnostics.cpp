#include "mlsw/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "mlsw/changevar.hpp"
#include "mlsw/simd/kernels.hpp"

namespace mlsw {

double energy(const Params& p, const Grid& g, const StateU& u) {
  const int N = p.N;
  const auto h = layer_depths(p, g, u);
  const std::size_t n = u.scaled_zeta1.size();

  // (gamma_1/rho^2)|zeta_1|^2 is gamma_1 |rho^{-1} zeta_1|^2 as stored.
  double acc = p.gamma_of(1) *
               kernels::dot(u.scaled_zeta1.data(), u.scaled_zeta1.data(), n);
  for (int i = 2; i <= N; ++i)
    acc += p.r_of(i) *
           kernels::dot(u.zeta[i - 2].data(), u.zeta[i - 2].data(), n);
  for (int i = 1; i <= N; ++i) {
    double vel2 =
        kernels::weighted_sq_sum(h[i - 1].data(), u.ux[i - 1].data(), n);
    if (g.d == 2)
      vel2 +=
          kernels::weighted_sq_sum(h[i - 1].data(), u.uy[i - 1].data(), n);
    acc += p.gamma_of(i) * vel2;
  }
  return 0.5 * acc * g.area() / static_cast<double>(n);
}

namespace {

// Squared H^s norm of one field via the Fourier multiplier (1+|k|^2)^s,
// normalized so that s=0 matches field_l2_norm^2.
double hs_sq(const Grid& g, const Spectral& sp, const Field& f, double s) {
  Spectrum spec;
  sp.forward(f, spec);
  const int nkx = g.nx / 2 + 1;
  double acc = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const double ky = g.d == 2 ? g.ky[j] : 0.0;
    for (int i = 0; i < nkx; ++i) {
      const double k2 = g.kx[i] * g.kx[i] + ky * ky;
      // Real transform stores half the modes; interior columns count twice.
      const double mult = (i == 0 || i == g.nx / 2) ? 1.0 : 2.0;
      acc += mult * std::pow(1.0 + k2, s) * std::norm(spec[sp.kidx(i, j)]);
    }
  }
  const double npts = static_cast<double>(g.size());
  return acc * g.area() / (npts * npts);
}

}  // namespace

double sobolev_norm(const Params& p, const Grid& g, const Spectral& sp,
                    const StateU& u, double s) {
  double acc = hs_sq(g, sp, u.scaled_zeta1, s);
  for (const Field& z : u.zeta) acc += hs_sq(g, sp, z, s);
  for (const Field& f : u.ux) acc += hs_sq(g, sp, f, s);
  for (const Field& f : u.uy) acc += hs_sq(g, sp, f, s);
  return std::sqrt(acc);
}

double sobolev_norm(const Params& p, const Grid& g, const Spectral& sp,
                    const StateV& v, double s) {
  double acc = hs_sq(g, sp, v.scaled_zeta1, s);
  for (const Field& z : v.zeta) acc += hs_sq(g, sp, z, s);
  for (const Field& f : v.vx) acc += hs_sq(g, sp, f, s);
  for (const Field& f : v.vy) acc += hs_sq(g, sp, f, s);
  acc += hs_sq(g, sp, v.wx, s);
  if (!v.wy.empty()) acc += hs_sq(g, sp, v.wy, s);
  return std::sqrt(acc);
}

double symmetrizer_energy(const Params& p, const Grid& g, const StateV& base,
                          const StateV& W) {
  const int npts = g.size();
  double acc = 0.0;
  for (int i = 0; i < npts; ++i) {
    const Mat T = symmetrizer_T(p, pack_v_point(p, base, i));
    const Vec w = pack_v_point(p, W, i);
    acc += w.dot(T * w);
  }
  return acc * g.area() / static_cast<double>(npts);
}

DiagnosticsRecord record(const Params& p, const Grid& g, const Spectral& sp,
                         const StateU& u, double t, double s) {
  DiagnosticsRecord rec;
  rec.time = t;
  rec.energy = energy(p, g, u);
  rec.hs_norm_u = sobolev_norm(p, g, sp, u, s);

  const DepthCheck dc = check_depth_condition(p, g, u, 0.0);
  rec.min_depth = dc.min_depth[dc.worst_layer > 0 ? dc.worst_layer - 1 : 0];
  for (double md : dc.min_depth) rec.min_depth = std::min(rec.min_depth, md);
  const ShearCheck sc = check_shear_condition(
      p, g, u, 1.0 / std::numeric_limits<double>::max());
  rec.max_shear = sc.max_shear;

  {
    auto w = total_flux(p, g, u);
    Field div = sp.deriv_x(w[0]);
    if (g.d == 2) {
      const Field dy = sp.deriv_y(w[1]);
      for (std::size_t i = 0; i < div.size(); ++i) div[i] += dy[i];
    }
    rec.rl_residual = field_l2_norm(g, div);
  }

  std::string flags;
  auto mark = [&flags](const char* f) {
    if (!flags.empty()) flags += ';';
    flags += f;
  };

  try {
    const StateV v = u_to_v(p, g, u);
    rec.hs_norm_v = sobolev_norm(p, g, sp, v, s);
    try {
      rec.symm_energy = symmetrizer_energy(p, g, v, v);
    } catch (const std::exception&) {
      rec.symm_energy = -1.0;
      mark("symmetrizer_failed");
    }
    // Eigen gap at the point with the strongest shear (worst case).
    int worst = 0;
    double worst_shear = -1.0;
    for (int i = 0; i < g.size(); ++i) {
      double sh = 0.0;
      for (int n = 2; n <= p.N; ++n) {
        double s2 = v.vx[n - 2][i] * v.vx[n - 2][i];
        if (g.d == 2) s2 += v.vy[n - 2][i] * v.vy[n - 2][i];
        sh = std::max(sh, s2);
      }
      if (sh > worst_shear) {
        worst_shear = sh;
        worst = i;
      }
    }
    try {
      rec.min_gap = eigendecompose_Bx(p, pack_v_point(p, v, worst)).min_gap;
    } catch (const std::exception&) {
      rec.min_gap = -1.0;
      mark("eigen_failed");
    }
  } catch (const std::exception&) {
    rec.hs_norm_v = -1.0;
    rec.symm_energy = -1.0;
    rec.min_gap = -1.0;
    mark("changevar_failed");
  }

  rec.flags = flags.empty() ? "ok" : flags;
  return rec;
}

}  // namespace mlsw
