#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "mlsw/grid.hpp"

namespace mlsw {

using Spectrum = std::vector<std::complex<double>>;

/// Fourier transforms and spectral operators on one grid. Owns the FFTW
/// plans and scratch buffers; one instance per grid, reused across calls.
/// Not thread-safe (shared scratch); create one per thread if needed.
class Spectral {
 public:
  explicit Spectral(const Grid& g);
  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  /// Number of retained complex modes, ny * (nx/2 + 1) (real transform).
  int spectrum_size() const { return ny_ * nkx_; }
  /// Index into a Spectrum for x-frequency index i (0..nx/2) and y index j.
  int kidx(int i, int j = 0) const { return j * nkx_ + i; }
  /// Signed wavenumber pair of a retained mode.
  double kx_of(int i) const { return kx_[i]; }
  double ky_of(int j) const { return ky_[j]; }

  void forward(const Field& f, Spectrum& out) const;
  /// Inverse transform, normalized so backward(forward(f)) == f.
  void backward(const Spectrum& s, Field& out) const;

  Field deriv_x(const Field& f) const;
  Field deriv_y(const Field& f) const;  // zero field for d=1

  /// Zero all modes with |m_x| > nx/3 or |m_y| > ny/3 (2/3 rule).
  void dealias(Spectrum& s) const;
  void dealias(Field& f) const;

  /// Orthogonal projection onto irrotational fields, k k^T/|k|^2 modewise,
  /// zero mode mapped to zero. For d=1 this removes the mean (pass wy
  /// empty).
  void leray_project(Field& wx, Field& wy) const;

  /// Solve Laplacian(p) = rhs with mean-zero p; the rhs mean is discarded.
  Field inv_laplacian(const Field& rhs) const;

  /// Spatial mean of a field.
  double mean(const Field& f) const;

  const Grid& grid() const { return grid_; }

 private:
  struct Plans;
  Grid grid_;
  int ny_ = 1, nkx_ = 0;
  std::vector<double> kx_, ky_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace mlsw
