#include "mlsw/eigenstructure.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "mlsw/changevar.hpp"

namespace mlsw {

namespace {

// Largest shear magnitude of a V point (Euclidean over directions), used to
// annotate hyperbolicity-loss diagnostics.
double point_shear(const Params& p, const Vec& v_point) {
  const int N = p.N;
  double worst = 0.0;
  for (int n = 2; n <= N; ++n) {
    double s2 = v_point[N + n - 2] * v_point[N + n - 2];
    if (p.d == 2) s2 += v_point[2 * N + n - 2] * v_point[2 * N + n - 2];
    worst = std::max(worst, std::sqrt(s2));
  }
  return worst;
}

Vec normalize_right(Vec v) {
  v /= v.norm();
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0.0) v = -v;
      break;
    }
  }
  return v;
}

// Left eigenvector of B for a simple real eigenvalue mu: the null vector of
// B^T - mu I, taken from the smallest singular direction.
Vec left_eigenvector(const Mat& B, double mu) {
  const int sz = static_cast<int>(B.rows());
  Mat shifted = B.transpose() - mu * Mat::Identity(sz, sz);
  Eigen::JacobiSVD<Mat> svd(shifted, Eigen::ComputeFullV);
  return svd.matrixV().col(sz - 1);
}

}  // namespace

Mat TridiagSymbol::dense() const {
  const int N = static_cast<int>(diagonal.size());
  Mat m = Mat::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    m(i, i) = diagonal[i];
    if (i + 1 < N) {
      m(i, i + 1) = offdiagonal[i];
      m(i + 1, i) = offdiagonal[i];
    }
  }
  return m;
}

std::vector<std::pair<double, Mat>> trivial_eigenpairs(const Params& p,
                                                       const Vec& v_point) {
  if (p.d != 2)
    throw std::invalid_argument(
        "advective eigenpairs exist only in dimension d=2");
  const int N = p.N, sz = 3 * N;
  const Vec u_point = v_to_u_point(p, v_point);
  const Mat JF = jacobian_F(p, v_point);
  const Mat JFinv = jacobian_Finv(p, u_point);
  std::vector<std::pair<double, Mat>> pairs;
  pairs.reserve(N);
  for (int n = 1; n <= N; ++n) {
    Mat sel = Mat::Zero(sz, sz);
    sel(2 * N + n - 1, 2 * N + n - 1) = 1.0;
    pairs.emplace_back(u_point[N + n - 1], JFinv * sel * JF);
  }
  return pairs;
}

TridiagSymbol tridiag_symbol(const Params& p, const Vec& z_point) {
  const int N = p.N;
  for (int i = N; i < z_point.size(); ++i)
    if (std::abs(z_point[i]) > 1e-14)
      throw std::invalid_argument(
          "tridiag_symbol requires a rest-type point (zero velocities)");
  const Vec h = point_depths(p, z_point);

  Vec rt_invsqrt(N), gamma_over_h(N), erho = Vec::Ones(N);
  rt_invsqrt[0] = 1.0 / std::sqrt(p.gamma_of(1));
  for (int i = 2; i <= N; ++i) rt_invsqrt[i - 1] = 1.0 / std::sqrt(p.r_of(i));
  for (int n = 1; n <= N; ++n)
    gamma_over_h[n - 1] = p.gamma_of(n) / h[n - 1];
  erho[0] = p.rho;

  const Mat D = diff_matrix(N);
  const Mat core = D.transpose() * gamma_over_h.asDiagonal() * D;
  const Vec scale = erho.cwiseProduct(rt_invsqrt);
  const Mat T = scale.asDiagonal() * core * scale.asDiagonal();

  TridiagSymbol sym;
  sym.diagonal = T.diagonal();
  sym.offdiagonal = Vec(N - 1);
  for (int i = 0; i + 1 < N; ++i) {
    sym.offdiagonal[i] = T(i, i + 1);
    if (sym.offdiagonal[i] == 0.0)
      throw std::runtime_error("tridiagonal symbol has a vanishing coupling");
  }
  return sym;
}

Vec rest_wave_speeds(const Params& p, const Vec& z_point) {
  const int N = p.N;
  const TridiagSymbol sym = tridiag_symbol(p, z_point);
  Eigen::SelfAdjointEigenSolver<Mat> es;
  es.computeFromTridiagonal(sym.diagonal, sym.offdiagonal,
                            Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("tridiagonal eigensolve failed");
  const Vec lambda = es.eigenvalues();  // ascending
  if (lambda[0] <= 0.0)
    throw std::runtime_error("tridiagonal symbol is not positive definite");
  Vec speeds(2 * N);
  for (int n = 0; n < N; ++n) {
    const double s = 1.0 / std::sqrt(lambda[n]);
    speeds[n] = -s;             // -lambda_1^{-1/2} is the most negative
    speeds[2 * N - 1 - n] = s;  // +lambda_1^{-1/2} is the largest
  }
  return speeds;
}

EigenDecomp eigendecompose_Bx(const Params& p, const Vec& v_point) {
  const int N = p.N, sz = p.state_size(), n_wave = 2 * N;
  const Mat B = assemble_Bx(p, v_point);

  Eigen::EigenSolver<Mat> es(B);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense eigensolve failed");
  const Eigen::VectorXcd ev = es.eigenvalues();
  const double radius = ev.cwiseAbs().maxCoeff();
  const double real_tol = 1e-8 * radius;
  const double gap_tol = 1e-10 * radius;

  // Peel off the advective eigenvalues (known in closed form) so that the
  // realness and gap checks apply to the wave eigenvalues only.
  std::vector<int> remaining(sz);
  for (int i = 0; i < sz; ++i) remaining[i] = i;
  if (p.d == 2) {
    const Vec u_point = v_to_u_point(p, v_point);
    for (int n = 1; n <= N; ++n) {
      const double target = u_point[N + n - 1];
      auto best = remaining.begin();
      double best_dist = std::numeric_limits<double>::max();
      for (auto it = remaining.begin(); it != remaining.end(); ++it) {
        const double dist = std::abs(ev[*it] - std::complex<double>(target));
        if (dist < best_dist) {
          best_dist = dist;
          best = it;
        }
      }
      remaining.erase(best);
    }
  }

  std::vector<std::pair<double, int>> waves;  // (eigenvalue, column)
  waves.reserve(n_wave);
  for (int idx : remaining) {
    if (std::abs(ev[idx].imag()) > real_tol) {
      std::ostringstream msg;
      msg << "complex eigenvalue pair " << ev[idx]
          << " (spectral radius " << radius << ")";
      throw ComplexPairDetected(msg.str(), point_shear(p, v_point));
    }
    waves.emplace_back(ev[idx].real(), idx);
  }
  std::sort(waves.begin(), waves.end());

  double min_gap = std::numeric_limits<double>::max();
  for (int i = 0; i + 1 < n_wave; ++i)
    min_gap = std::min(min_gap, waves[i + 1].first - waves[i].first);
  if (min_gap < gap_tol)
    throw DegenerateGap("wave eigenvalue spacing below resolution: gap " +
                        std::to_string(min_gap));

  EigenDecomp dec;
  dec.is_real = true;
  dec.min_gap = min_gap;
  dec.mu_plus.resize(N);
  dec.mu_minus.resize(N);
  dec.P_plus.resize(N);
  dec.P_minus.resize(N);

  auto projection = [&](int sorted_pos) {
    const double mu = waves[sorted_pos].first;
    const Vec right = normalize_right(
        es.eigenvectors().col(waves[sorted_pos].second).real());
    const Vec left = left_eigenvector(B, mu);
    const double overlap = left.dot(right);
    if (std::abs(overlap) < 1e-12)
      throw DegenerateGap("degenerate left/right eigenvector pairing at mu=" +
                          std::to_string(mu));
    return Mat((right * left.transpose()) / overlap);
  };

  for (int n = 1; n <= N; ++n) {
    dec.mu_minus[n - 1] = waves[n - 1].first;
    dec.P_minus[n - 1] = projection(n - 1);
    dec.mu_plus[n - 1] = waves[n_wave - n].first;
    dec.P_plus[n - 1] = projection(n_wave - n);
  }
  if (p.d == 2) {
    for (auto& [mu, P] : trivial_eigenpairs(p, v_point)) {
      dec.mu_trivial.push_back(mu);
      dec.P_trivial.push_back(std::move(P));
    }
  }
  return dec;
}

Mat symmetrizer_T(const Params& p, const Vec& v_point) {
  const EigenDecomp dec = eigendecompose_Bx(p, v_point);
  const int sz = p.state_size();
  Mat T = Mat::Zero(sz, sz);
  for (const auto& P : dec.P_plus) T += P.transpose() * P;
  for (const auto& P : dec.P_minus) T += P.transpose() * P;
  for (const auto& P : dec.P_trivial) T += P.transpose() * P;
  return T;
}

HyperbolicityReport check_hyperbolicity(const Params& p, const Grid& g,
                                        const StateV& v, double h0,
                                        double nu) {
  const int N = p.N;
  const int npts = static_cast<int>(v.scaled_zeta1.size());
  HyperbolicityReport rep;
  rep.min_depth = std::numeric_limits<double>::max();
  rep.min_gap = std::numeric_limits<double>::max();
  rep.all_real = true;

  for (int i = 0; i < npts; ++i) {
    const Vec point = pack_v_point(p, v, i);

    // Depths by hand (the throwing accessor would abort the survey).
    double zeta_above = p.rho * point[0];
    for (int n = 1; n <= N; ++n) {
      const double zeta_below = (n < N) ? point[n] : 0.0;
      const double h = p.delta_of(n) + zeta_above - zeta_below;
      if (h < rep.min_depth) {
        rep.min_depth = h;
        rep.worst_depth_layer = n;
      }
      zeta_above = zeta_below;
    }
    rep.max_shear = std::max(rep.max_shear, point_shear(p, point));

    try {
      const EigenDecomp dec = eigendecompose_Bx(p, point);
      rep.min_gap = std::min(rep.min_gap, dec.min_gap);
    } catch (const ComplexPairDetected&) {
      if (rep.all_real) rep.first_bad_index = i;
      rep.all_real = false;
    } catch (const std::exception&) {
      if (rep.all_real) rep.first_bad_index = i;
      rep.all_real = false;
    }
  }

  rep.depth_ok = rep.min_depth >= h0;
  if (rep.depth_ok) rep.worst_depth_layer = 0;
  rep.shear_ok = rep.max_shear < 1.0 / nu;
  rep.pass = rep.depth_ok && rep.shear_ok && rep.all_real;
  return rep;
}

HyperbolicityReport check_hyperbolicity(const Params& p, const Grid& g,
                                        const StateU& u, double h0,
                                        double nu) {
  return check_hyperbolicity(p, g, u_to_v(p, g, u), h0, nu);
}

}  // namespace mlsw
