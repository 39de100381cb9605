#include "mlsw/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace mlsw {

struct Spectral::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  int nreal = 0, ncplx = 0;

  ~Plans() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (real) fftw_free(real);
    if (cplx) fftw_free(cplx);
  }
};

Spectral::Spectral(const Grid& g) : grid_(g), plans_(std::make_unique<Plans>()) {
  ny_ = g.ny;
  nkx_ = g.nx / 2 + 1;
  kx_.assign(g.kx.begin(), g.kx.begin() + nkx_);
  ky_ = g.ky;

  plans_->nreal = g.nx * g.ny;
  plans_->ncplx = nkx_ * ny_;
  plans_->real = fftw_alloc_real(plans_->nreal);
  plans_->cplx = fftw_alloc_complex(plans_->ncplx);
  if (!plans_->real || !plans_->cplx)
    throw std::bad_alloc();

  // Row-major [ny][nx] layout matches Grid::idx, so the slow dimension is y.
  plans_->fwd = fftw_plan_dft_r2c_2d(ny_, g.nx, plans_->real, plans_->cplx,
                                     FFTW_ESTIMATE);
  plans_->bwd = fftw_plan_dft_c2r_2d(ny_, g.nx, plans_->cplx, plans_->real,
                                     FFTW_ESTIMATE);
  if (!plans_->fwd || !plans_->bwd)
    throw std::runtime_error("FFTW plan creation failed");
}

Spectral::~Spectral() = default;

void Spectral::forward(const Field& f, Spectrum& out) const {
  if (static_cast<int>(f.size()) != plans_->nreal)
    throw std::invalid_argument("field size does not match the grid");
  std::memcpy(plans_->real, f.data(), sizeof(double) * plans_->nreal);
  fftw_execute(plans_->fwd);
  out.resize(plans_->ncplx);
  std::memcpy(out.data(), plans_->cplx,
              sizeof(fftw_complex) * plans_->ncplx);
}

void Spectral::backward(const Spectrum& s, Field& out) const {
  if (static_cast<int>(s.size()) != plans_->ncplx)
    throw std::invalid_argument("spectrum size does not match the grid");
  std::memcpy(plans_->cplx, s.data(), sizeof(fftw_complex) * plans_->ncplx);
  fftw_execute(plans_->bwd);
  out.resize(plans_->nreal);
  const double scale = 1.0 / plans_->nreal;
  for (int i = 0; i < plans_->nreal; ++i) out[i] = plans_->real[i] * scale;
}

Field Spectral::deriv_x(const Field& f) const {
  Spectrum s;
  forward(f, s);
  const std::complex<double> im(0.0, 1.0);
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nkx_; ++i) s[kidx(i, j)] *= im * kx_[i];
  // The Nyquist mode has no well-defined sign under differentiation.
  for (int j = 0; j < ny_; ++j) s[kidx(nkx_ - 1, j)] = 0.0;
  Field out;
  backward(s, out);
  return out;
}

Field Spectral::deriv_y(const Field& f) const {
  if (grid_.d == 1) return Field(f.size(), 0.0);
  Spectrum s;
  forward(f, s);
  const std::complex<double> im(0.0, 1.0);
  for (int j = 0; j < ny_; ++j) {
    const double ky = (j == ny_ / 2) ? 0.0 : ky_[j];  // drop Nyquist
    for (int i = 0; i < nkx_; ++i) s[kidx(i, j)] *= im * ky;
  }
  Field out;
  backward(s, out);
  return out;
}

void Spectral::dealias(Spectrum& s) const {
  const int cutx = grid_.nx / 3;
  const int cuty = grid_.ny / 3;
  for (int j = 0; j < ny_; ++j) {
    const int my = (j <= ny_ / 2) ? j : j - ny_;
    const bool kill_y = grid_.d == 2 && std::abs(my) > cuty;
    for (int i = 0; i < nkx_; ++i)
      if (kill_y || i > cutx) s[kidx(i, j)] = 0.0;
  }
}

void Spectral::dealias(Field& f) const {
  Spectrum s;
  forward(f, s);
  dealias(s);
  backward(s, f);
}

void Spectral::leray_project(Field& wx, Field& wy) const {
  if (grid_.d == 1) {
    const double m = mean(wx);
    for (double& v : wx) v -= m;
    return;
  }
  Spectrum sx, sy;
  forward(wx, sx);
  forward(wy, sy);
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nkx_; ++i) {
      // Nyquist modes are treated as frequency zero, matching deriv_x/deriv_y,
      // so that div((Id - Pi)w) vanishes identically on the discrete grid.
      const double kx = (i == nkx_ - 1) ? 0.0 : kx_[i];
      const double ky = (j == ny_ / 2) ? 0.0 : ky_[j];
      const double k2 = kx * kx + ky * ky;
      const int id = kidx(i, j);
      if (k2 == 0.0) {
        sx[id] = 0.0;
        sy[id] = 0.0;
        continue;
      }
      const std::complex<double> dot = (kx * sx[id] + ky * sy[id]) / k2;
      sx[id] = kx * dot;
      sy[id] = ky * dot;
    }
  }
  backward(sx, wx);
  backward(sy, wy);
}

Field Spectral::inv_laplacian(const Field& rhs) const {
  Spectrum s;
  forward(rhs, s);
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nkx_; ++i) {
      // Same zero-frequency Nyquist convention as the derivatives.
      const double kx = (i == nkx_ - 1) ? 0.0 : kx_[i];
      const double ky = (j == ny_ / 2) ? 0.0 : ky_[j];
      const double k2 = kx * kx + ky * ky;
      const int id = kidx(i, j);
      s[id] = (k2 == 0.0) ? 0.0 : -s[id] / k2;
    }
  }
  Field out;
  backward(s, out);
  return out;
}

double Spectral::mean(const Field& f) const {
  double acc = 0.0;
  for (double v : f) acc += v;
  return acc / static_cast<double>(f.size());
}

}  // namespace mlsw
