#include <doctest.h>

#include <cmath>
#include <random>

#include "mlsw/matrices.hpp"

using namespace mlsw;
namespace {

Vec random_u_point(const Params& p, std::mt19937& rng, double uamp = 0.5) {
  std::uniform_real_distribution<double> zdist(-0.15, 0.15);
  std::uniform_real_distribution<double> udist(-uamp, uamp);
  Vec u(p.state_size());
  for (int i = 0; i < p.N; ++i) u(i) = zdist(rng);
  for (int i = p.N; i < p.state_size(); ++i) u(i) = udist(rng);
  return u;
}

double sym_residual(const Mat& M) {
  return (M - M.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("single layer symbol in one dimension") {
  // N=1, delta_1=1, rho=0.5. At rest the symbol is [[0, h/rho], [1/rho, 0]]
  // = [[0,2],[2,0]]; a uniform velocity 0.3 adds itself on the diagonal.
  const Params p = derive_params(1, 1, {1.0}, {}, 0.5);
  Vec u(2);
  u << 0.0, 0.0;
  Mat A = assemble_Ax(p, u);
  CHECK(A(0, 0) == doctest::Approx(0.0));
  CHECK(A(0, 1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(A(1, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(A(1, 1) == doctest::Approx(0.0));
  u(1) = 0.3;
  A = assemble_Ax(p, u);
  CHECK(A(0, 0) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(A(1, 1) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(A(0, 1) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("assembled blocks match their difference-matrix closed forms") {
  // With Delta the upper bidiagonal (-1, +1) matrix and e_rho = (rho,1,..,1):
  //   M = D(e)^{-1} Delta^{-1} D(u) Delta D(e)
  //   H = -D(e)^{-1} Delta^{-1} D(h)
  //   R = -D(1/gamma) (Delta^{-1})^T D(rtilde) D(e)^{-1}
  std::mt19937 rng(3);
  const Params p = derive_params(3, 1, {1.0, 0.5, 2.0}, {0.3, 0.7}, 0.2);
  const int N = p.N;
  const Vec u = random_u_point(p, rng);
  const Mat A = assemble_Ax(p, u);

  const Mat D = diff_matrix(N);
  const Mat Dinv = D.inverse();
  const Mat E = d_erho(p);
  const Mat Einv = E.inverse();
  const Vec h = point_depths(p, u);
  const Vec uvel = u.segment(N, N);
  Vec ginv(N);
  for (int n = 1; n <= N; ++n) ginv(n - 1) = 1.0 / p.gamma_of(n);

  const Mat Mblk = Einv * Dinv * uvel.asDiagonal() * D * E;
  const Mat Hblk = -(Einv * Dinv * h.asDiagonal()).eval();
  const Mat Rblk =
      -(ginv.asDiagonal() * Dinv.transpose() * d_rtilde(p) * Einv).eval();

  CHECK((A.topLeftCorner(N, N) - Mblk).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((A.topRightCorner(N, N) - Hblk).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((A.bottomLeftCorner(N, N) - Rblk).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((A.bottomRightCorner(N, N) - Mat(uvel.asDiagonal()))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
}

TEST_CASE("two dimensional symbol keeps the advection blocks apart") {
  std::mt19937 rng(5);
  const Params p = derive_params(2, 2, {1.0, 1.0}, {1.0}, 0.1);
  const Vec u = random_u_point(p, rng);
  const Mat Ax = assemble_Ax(p, u);
  const Mat Ay = assemble_Ay(p, u);
  CHECK(Ax.rows() == 6);
  // The u^y advection block of A^x is diag(u^x) and vice versa.
  CHECK((Ax.block(4, 4, 2, 2) - Mat(u.segment(2, 2).asDiagonal()))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  CHECK((Ay.block(2, 2, 2, 2) - Mat(u.segment(4, 2).asDiagonal()))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  // symbol_A is the linear combination of the two.
  const Mat S = symbol_A(p, u, 0.3, -1.1);
  CHECK((S - (0.3 * Ax - 1.1 * Ay)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("rotation is orthogonal and homogeneous of degree zero") {
  const Params p2 = derive_params(2, 2, {1.0, 1.0}, {1.0}, 0.1);
  const Mat Q = rotation_Q(p2, 0.6, -0.8);
  CHECK((Q * Q.transpose() - Mat::Identity(6, 6)).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK((rotation_Q(p2, 1.2, -1.6) - Q).cwiseAbs().maxCoeff() < 1e-14);
  const Params p1 = derive_params(2, 1, {1.0, 1.0}, {1.0}, 0.1);
  CHECK((rotation_Q(p1, -3.0, 0.0) - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("rotation by a quarter turn swaps velocity components") {
  const Params p = derive_params(1, 2, {1.0}, {}, 0.1);
  const Mat Q = rotation_Q(p, 0.0, 1.0);
  Mat expect(3, 3);
  expect << 1, 0, 0, 0, 0, 1, 0, -1, 0;
  CHECK((Q - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("rotational invariance of the full symbol") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> xdist(-2.0, 2.0);
  const Params p = derive_params(3, 2, {1.0, 0.5, 1.5}, {0.4, 0.6}, 0.25);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec u = random_u_point(p, rng);
    double xix = xdist(rng), xiy = xdist(rng);
    const double norm = std::hypot(xix, xiy);
    if (norm < 0.1) continue;
    const Mat Q = rotation_Q(p, xix, xiy);
    const Mat lhs = symbol_A(p, u, xix, xiy);
    const Mat rhs = Q.transpose() * assemble_Ax(p, Q * u) * Q * norm;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("A^y is the quarter-turn conjugate of A^x") {
  std::mt19937 rng(19);
  const Params p = derive_params(2, 2, {1.0, 2.0}, {1.0}, 0.15);
  const Vec u = random_u_point(p, rng);
  const Mat Q = rotation_Q(p, 0.0, 1.0);
  const Mat rhs = Q.transpose() * assemble_Ax(p, Q * u) * Q;
  CHECK((assemble_Ay(p, u) - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rotational invariance in the normal-form variables") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> xdist(-2.0, 2.0);
  const Params p = derive_params(2, 2, {1.0, 1.0}, {1.0}, 0.2);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec v = u_to_v_point(p, random_u_point(p, rng));
    double xix = xdist(rng), xiy = xdist(rng);
    const double norm = std::hypot(xix, xiy);
    if (norm < 0.1) continue;
    const Mat Q = rotation_Q(p, xix, xiy);
    const Mat lhs = xix * assemble_Bx(p, v) + xiy * assemble_By(p, v);
    const Mat rhs = Q.transpose() * assemble_Bx(p, Q * v) * Q * norm;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("symbols in both variable sets share their spectrum") {
  std::mt19937 rng(29);
  const Params p = derive_params(3, 1, {1.0, 1.0, 1.0}, {0.5, 0.5}, 0.1);
  const Vec u = random_u_point(p, rng, 0.1);
  const Vec v = u_to_v_point(p, u);
  Eigen::VectorXcd ea = Eigen::EigenSolver<Mat>(assemble_Ax(p, u)).eigenvalues();
  Eigen::VectorXcd eb = Eigen::EigenSolver<Mat>(assemble_Bx(p, v)).eigenvalues();
  std::vector<double> ra(ea.size()), rb(eb.size());
  for (int i = 0; i < ea.size(); ++i) {
    ra[i] = ea(i).real();
    rb[i] = eb(i).real();
    CHECK(std::abs(ea(i).imag()) < 1e-9);
    CHECK(std::abs(eb(i).imag()) < 1e-9);
  }
  std::sort(ra.begin(), ra.end());
  std::sort(rb.begin(), rb.end());
  for (std::size_t i = 0; i < ra.size(); ++i)
    CHECK(ra[i] == doctest::Approx(rb[i]).epsilon(1e-8));
}

TEST_CASE("single layer symmetrizer at rest") {
  const Params p = derive_params(1, 1, {2.0}, {}, 0.3);
  Vec u(2);
  u << 0.0, 0.0;
  const Mat S = symmetrizer_Sx(p, u);
  const double g1 = p.gamma_of(1);
  CHECK(S(0, 0) == doctest::Approx(g1).epsilon(1e-14));
  CHECK(S(1, 1) == doctest::Approx(g1 * 2.0).epsilon(1e-14));
  CHECK(std::abs(S(0, 1)) < 1e-15);
  CHECK(std::abs(S(1, 0)) < 1e-15);
}

TEST_CASE("symmetrizer property on random admissible states") {
  std::mt19937 rng(31);
  for (int N : {1, 2, 3}) {
    std::vector<double> delta(N, 1.0);
    std::vector<double> r(N - 1, N > 1 ? 1.0 / (N - 1) : 0.0);
    for (int d : {1, 2}) {
      const Params p = derive_params(N, d, delta, r, 0.2);
      for (int trial = 0; trial < 10; ++trial) {
        const Vec u = random_u_point(p, rng, 0.3);
        const Mat S = symmetrizer_Sx(p, u);
        CHECK(sym_residual(S) < 1e-13);
        CHECK(sym_residual(S * assemble_Ax(p, u)) < 1e-12);
        // Positive definite once the shear is small enough.
        Eigen::SelfAdjointEigenSolver<Mat> es(
            symmetrizer_Sx(p, random_u_point(p, rng, 0.05)));
        CHECK(es.eigenvalues().minCoeff() > 0.0);
      }
    }
  }
}

TEST_CASE("symmetrizer with an explicit Kx still symmetrizes") {
  std::mt19937 rng(37);
  const Params p = derive_params(2, 1, {1.0, 1.0}, {1.0}, 0.2);
  const Vec u = random_u_point(p, rng, 0.3);
  const Mat S = symmetrizer_Sx(p, u, 0.7);
  CHECK(sym_residual(S) < 1e-13);
  CHECK(sym_residual(S * assemble_Ax(p, u)) < 1e-12);
}

TEST_CASE("symmetrizer loses definiteness under extreme shear") {
  const Params p = derive_params(2, 1, {1.0, 1.0}, {1.0}, 0.2);
  Vec u(4);
  u << 0.0, 0.0, 40.0, -40.0;  // huge velocity jump across the interface
  Eigen::SelfAdjointEigenSolver<Mat> es(symmetrizer_Sx(p, u));
  CHECK(es.eigenvalues().minCoeff() <= 0.0);
}

TEST_CASE("fast projections select the surface and momentum entries") {
  const Params p = derive_params(2, 2, {1.0, 1.0}, {1.0}, 0.1);
  const Mat P = proj_fast(p);
  const Mat Px = proj_fast_x(p);
  // V layout: (scaled zeta_1, zeta_2, v^x_2, w^x, v^y_2, w^y).
  CHECK((P * P - P).cwiseAbs().maxCoeff() == 0.0);
  CHECK(P(0, 0) == 1.0);
  CHECK(P(3, 3) == 1.0);
  CHECK(P(5, 5) == 1.0);
  CHECK(P.trace() == doctest::Approx(3.0));
  CHECK(Px.trace() == doctest::Approx(2.0));
  CHECK(Px(5, 5) == 0.0);
}
