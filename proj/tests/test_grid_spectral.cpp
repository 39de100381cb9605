#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mlsw/grid.hpp"
#include "mlsw/spectral.hpp"

using namespace mlsw;
namespace {

constexpr double kPi = std::numbers::pi;

Field sample_1d(const Grid& g, double (*f)(double)) {
  Field out = g.zero_field();
  for (int i = 0; i < g.nx; ++i) out[i] = f(g.x_of(i));
  return out;
}

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid wavenumbers follow the FFTW ordering") {
  const Grid g = make_grid_1d(2.0 * kPi, 8);
  CHECK(g.kx[0] == doctest::Approx(0.0));
  CHECK(g.kx[1] == doctest::Approx(1.0));
  CHECK(g.kx[3] == doctest::Approx(3.0));
  CHECK(std::abs(g.kx[4]) == doctest::Approx(4.0).epsilon(1e-12));  // Nyquist
  CHECK(g.kx[7] == doctest::Approx(-1.0));
  CHECK(g.dx() == doctest::Approx(kPi / 4.0));
  CHECK(g.area() == doctest::Approx(2.0 * kPi));
}

TEST_CASE("grid construction rejects bad sizes") {
  CHECK_THROWS(make_grid_1d(2.0 * kPi, 12));  // not a power of two
  CHECK_THROWS(make_grid_1d(2.0 * kPi, 4));   // below minimum
  CHECK_THROWS(make_grid_1d(-1.0, 16));
  CHECK_THROWS(make_grid_2d(2.0 * kPi, 0.0, 16, 16));
}

TEST_CASE("round trip backward(forward(f)) == f") {
  const Grid g = make_grid_1d(2.0 * kPi, 32);
  Spectral sp(g);
  const Field f = sample_1d(g, [](double x) {
    return 0.3 + std::sin(3.0 * x) - 0.2 * std::cos(5.0 * x);
  });
  Spectrum s(sp.spectrum_size());
  sp.forward(f, s);
  Field back = g.zero_field();
  sp.backward(s, back);
  CHECK(max_abs_diff(f, back) < 1e-13);
}

TEST_CASE("deriv_x of sin(3x) is 3cos(3x) to spectral accuracy") {
  const Grid g = make_grid_1d(2.0 * kPi, 64);
  Spectral sp(g);
  const Field f = sample_1d(g, [](double x) { return std::sin(3.0 * x); });
  const Field exact =
      sample_1d(g, [](double x) { return 3.0 * std::cos(3.0 * x); });
  CHECK(max_abs_diff(sp.deriv_x(f), exact) < 1e-12);
}

TEST_CASE("derivatives respect the box length") {
  const Grid g = make_grid_1d(4.0 * kPi, 64);
  Spectral sp(g);
  Field f = g.zero_field();
  for (int i = 0; i < g.nx; ++i) f[i] = std::sin(0.5 * g.x_of(i));
  Field exact = g.zero_field();
  for (int i = 0; i < g.nx; ++i) exact[i] = 0.5 * std::cos(0.5 * g.x_of(i));
  CHECK(max_abs_diff(sp.deriv_x(f), exact) < 1e-12);
}

TEST_CASE("2d derivatives of a tensor mode") {
  const Grid g = make_grid_2d(2.0 * kPi, 2.0 * kPi, 32, 16);
  Spectral sp(g);
  Field f = g.zero_field(), fx = g.zero_field(), fy = g.zero_field();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x_of(i), y = g.y_of(j);
      f[g.idx(i, j)] = std::sin(2.0 * x) * std::cos(3.0 * y);
      fx[g.idx(i, j)] = 2.0 * std::cos(2.0 * x) * std::cos(3.0 * y);
      fy[g.idx(i, j)] = -3.0 * std::sin(2.0 * x) * std::sin(3.0 * y);
    }
  CHECK(max_abs_diff(sp.deriv_x(f), fx) < 1e-11);
  CHECK(max_abs_diff(sp.deriv_y(f), fy) < 1e-11);
}

TEST_CASE("deriv_y vanishes in one dimension") {
  const Grid g = make_grid_1d(2.0 * kPi, 16);
  Spectral sp(g);
  const Field f = sample_1d(g, [](double x) { return std::sin(x); });
  CHECK(max_abs_diff(sp.deriv_y(f), g.zero_field()) == 0.0);
}

TEST_CASE("dealias kills modes beyond a third of the resolution") {
  const Grid g = make_grid_1d(2.0 * kPi, 32);  // keeps |m| <= 10
  Spectral sp(g);
  const Field keep = sample_1d(g, [](double x) { return std::cos(10.0 * x); });
  const Field kill = sample_1d(g, [](double x) { return std::cos(11.0 * x); });
  Field f(g.size());
  for (int i = 0; i < g.nx; ++i) f[i] = keep[i] + kill[i];
  sp.dealias(f);
  CHECK(max_abs_diff(f, keep) < 1e-13);
}

TEST_CASE("1d irrotational projection removes the mean and nothing else") {
  const Grid g = make_grid_1d(2.0 * kPi, 32);
  Spectral sp(g);
  Field wx = sample_1d(g, [](double x) { return 1.5 + std::sin(2.0 * x); });
  Field wy;
  sp.leray_project(wx, wy);
  const Field exact = sample_1d(g, [](double x) { return std::sin(2.0 * x); });
  CHECK(max_abs_diff(wx, exact) < 1e-13);
}

TEST_CASE("2d irrotational projection is idempotent and kills curls") {
  const Grid g = make_grid_2d(2.0 * kPi, 2.0 * kPi, 32, 32);
  Spectral sp(g);
  Field wx = g.zero_field(), wy = g.zero_field();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x_of(i), y = g.y_of(j);
      wx[g.idx(i, j)] = std::sin(x + 2.0 * y) + std::cos(y);
      wy[g.idx(i, j)] = std::cos(3.0 * x) - std::sin(x - y);
    }
  sp.leray_project(wx, wy);
  Field curl = sp.deriv_x(wy);
  const Field dwx = sp.deriv_y(wx);
  for (int k = 0; k < g.size(); ++k) curl[k] -= dwx[k];
  CHECK(max_abs_diff(curl, g.zero_field()) < 1e-11);

  Field wx2 = wx, wy2 = wy;
  sp.leray_project(wx2, wy2);
  CHECK(max_abs_diff(wx, wx2) < 1e-12);
  CHECK(max_abs_diff(wy, wy2) < 1e-12);
}

TEST_CASE("2d irrotational projection keeps gradients intact") {
  const Grid g = make_grid_2d(2.0 * kPi, 2.0 * kPi, 32, 32);
  Spectral sp(g);
  Field phi = g.zero_field();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      phi[g.idx(i, j)] = std::sin(g.x_of(i)) * std::cos(2.0 * g.y_of(j));
  Field wx = sp.deriv_x(phi), wy = sp.deriv_y(phi);
  const Field gx = wx, gy = wy;
  sp.leray_project(wx, wy);
  CHECK(max_abs_diff(wx, gx) < 1e-12);
  CHECK(max_abs_diff(wy, gy) < 1e-12);
}

TEST_CASE("inv_laplacian inverts the Laplacian on mean-zero data") {
  const Grid g = make_grid_2d(2.0 * kPi, 2.0 * kPi, 32, 32);
  Spectral sp(g);
  Field p_exact = g.zero_field();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      p_exact[g.idx(i, j)] =
          std::cos(2.0 * g.x_of(i)) * std::sin(g.y_of(j));
  // Laplacian of the mode above is -(4+1) times itself.
  Field rhs(g.size());
  for (int k = 0; k < g.size(); ++k) rhs[k] = -5.0 * p_exact[k];
  const Field p = sp.inv_laplacian(rhs);
  CHECK(max_abs_diff(p, p_exact) < 1e-12);
  CHECK(std::abs(sp.mean(p)) < 1e-14);
}

TEST_CASE("mean is the average value") {
  const Grid g = make_grid_1d(2.0 * kPi, 16);
  Spectral sp(g);
  const Field f = sample_1d(g, [](double x) { return 2.0 + std::sin(x); });
  CHECK(sp.mean(f) == doctest::Approx(2.0).epsilon(1e-13));
}
