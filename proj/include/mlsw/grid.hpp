#pragma once

#include <stdexcept>
#include <vector>

namespace mlsw {

using Field = std::vector<double>;  // row-major grid field

/// Uniform periodic grid on [0,Lx) x [0,Ly). Point counts are powers of two.
/// Fourier indices follow the FFTW convention: non-negative frequencies
/// first, then negative ones.
struct Grid {
  int d = 1;
  double Lx = 0.0, Ly = 0.0;
  int nx = 0, ny = 1;
  std::vector<double> kx;  ///< wavenumbers 2*pi*m/Lx at each x index
  std::vector<double> ky;

  int size() const { return nx * ny; }
  double dx() const { return Lx / nx; }
  double dy() const { return d == 2 ? Ly / ny : 0.0; }
  double area() const { return d == 2 ? Lx * Ly : Lx; }
  double x_of(int i) const { return i * Lx / nx; }
  double y_of(int j) const { return j * Ly / ny; }
  int idx(int i, int j = 0) const { return j * nx + i; }

  Field zero_field() const { return Field(size(), 0.0); }
};

Grid make_grid_1d(double Lx, int nx);
Grid make_grid_2d(double Lx, double Ly, int nx, int ny);

}  // namespace mlsw
