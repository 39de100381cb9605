#include "mlsw/grid.hpp"

#include <cmath>
#include <numbers>

namespace mlsw {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<double> wavenumbers(int n, double L) {
  std::vector<double> k(n);
  const double dk = 2.0 * std::numbers::pi / L;
  for (int m = 0; m < n; ++m) {
    const int signed_m = (m <= n / 2) ? m : m - n;
    k[m] = dk * signed_m;
  }
  return k;
}

}  // namespace

Grid make_grid_1d(double Lx, int nx) {
  if (!(Lx > 0.0)) throw std::invalid_argument("torus length must be positive");
  if (!power_of_two(nx) || nx < 8)
    throw std::invalid_argument("point count must be a power of two >= 8");
  Grid g;
  g.d = 1;
  g.Lx = Lx;
  g.nx = nx;
  g.ny = 1;
  g.kx = wavenumbers(nx, Lx);
  g.ky = {0.0};
  return g;
}

Grid make_grid_2d(double Lx, double Ly, int nx, int ny) {
  if (!(Lx > 0.0 && Ly > 0.0))
    throw std::invalid_argument("torus lengths must be positive");
  if (!power_of_two(nx) || nx < 8 || !power_of_two(ny) || ny < 8)
    throw std::invalid_argument("point counts must be powers of two >= 8");
  Grid g;
  g.d = 2;
  g.Lx = Lx;
  g.Ly = Ly;
  g.nx = nx;
  g.ny = ny;
  g.kx = wavenumbers(nx, Lx);
  g.ky = wavenumbers(ny, Ly);
  return g;
}

}  // namespace mlsw
