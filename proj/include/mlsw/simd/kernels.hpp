#pragma once

#include <cstddef>

// Data-parallel field kernels used by the pseudo-spectral solvers and the
// diagnostics reductions. Each kernel has a scalar reference implementation
// and vectorized variants (AVX2 on x86-64, NEON on arm64) selected once at
// runtime from CPU capabilities. Set MLSW_SIMD=scalar in the environment to
// force the reference path.
//
// Elementwise kernels are bit-identical across variants (no FMA contraction);
// reductions may differ by rounding of the accumulation order.

namespace mlsw::kernels {

struct Ops {
  // c[i] = a[i] * b[i]
  void (*mul)(const double*, const double*, double*, std::size_t);
  // c[i] += a[i] * b[i]
  void (*mul_acc)(const double*, const double*, double*, std::size_t);
  // y[i] += alpha * x[i]
  void (*axpy)(double, const double*, double*, std::size_t);
  // y[i] = x[i] + alpha * t[i]   (RK stage update)
  void (*stage)(const double*, double, const double*, double*, std::size_t);
  // sum_i a[i] * b[i]
  double (*dot)(const double*, const double*, std::size_t);
  // sum_i a[i]
  double (*sum)(const double*, std::size_t);
  // sum_i w[i] * a[i]^2
  double (*weighted_sq_sum)(const double*, const double*, std::size_t);
  double (*min)(const double*, std::size_t);
  double (*max)(const double*, std::size_t);
};

extern const Ops scalar_ops;
#if defined(__x86_64__)
extern const Ops avx2_ops;
#endif
#if defined(__aarch64__)
extern const Ops neon_ops;
#endif

/// The variant selected for this process.
const Ops& active();

/// Name of the selected variant: "scalar", "avx2" or "neon".
const char* active_name();

// Convenience forwarders.
inline void mul(const double* a, const double* b, double* c, std::size_t n) {
  active().mul(a, b, c, n);
}
inline void mul_acc(const double* a, const double* b, double* c, std::size_t n) {
  active().mul_acc(a, b, c, n);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  active().axpy(alpha, x, y, n);
}
inline void stage(const double* x, double alpha, const double* t, double* out,
                  std::size_t n) {
  active().stage(x, alpha, t, out, n);
}
inline double dot(const double* a, const double* b, std::size_t n) {
  return active().dot(a, b, n);
}
inline double sum(const double* a, std::size_t n) { return active().sum(a, n); }
inline double weighted_sq_sum(const double* w, const double* a, std::size_t n) {
  return active().weighted_sq_sum(w, a, n);
}
inline double min(const double* a, std::size_t n) { return active().min(a, n); }
inline double max(const double* a, std::size_t n) { return active().max(a, n); }

}  // namespace mlsw::kernels
