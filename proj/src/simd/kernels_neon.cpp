#if defined(__aarch64__)

#include <arm_neon.h>

#include "mlsw/simd/kernels.hpp"

// NEON variants (two doubles per vector). As with AVX2, elementwise kernels
// avoid FMA contraction to stay bit-identical to the scalar reference.

namespace mlsw::kernels {

namespace {

void v_mul(const double* a, const double* b, double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(c + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) c[i] = a[i] * b[i];
}

void v_mul_acc(const double* a, const double* b, double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t prod = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    vst1q_f64(c + i, vaddq_f64(vld1q_f64(c + i), prod));
  }
  for (; i < n; ++i) c[i] += a[i] * b[i];
}

void v_axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t prod = vmulq_f64(va, vld1q_f64(x + i));
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void v_stage(const double* x, double alpha, const double* t, double* out,
             std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t prod = vmulq_f64(va, vld1q_f64(t + i));
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(x + i), prod));
  }
  for (; i < n; ++i) out[i] = x[i] + alpha * t[i];
}

double v_dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

double v_sum(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) out += a[i];
  return out;
}

double v_weighted_sq_sum(const double* w, const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t va = vld1q_f64(a + i);
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(w + i), vmulq_f64(va, va)));
  }
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) out += w[i] * a[i] * a[i];
  return out;
}

double v_min(const double* a, std::size_t n) {
  double out = a[0];
  std::size_t i = 0;
  if (n >= 2) {
    float64x2_t acc = vld1q_f64(a);
    for (i = 2; i + 2 <= n; i += 2) acc = vminq_f64(acc, vld1q_f64(a + i));
    out = vminvq_f64(acc);
  }
  for (; i < n; ++i)
    if (a[i] < out) out = a[i];
  return out;
}

double v_max(const double* a, std::size_t n) {
  double out = a[0];
  std::size_t i = 0;
  if (n >= 2) {
    float64x2_t acc = vld1q_f64(a);
    for (i = 2; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vld1q_f64(a + i));
    out = vmaxvq_f64(acc);
  }
  for (; i < n; ++i)
    if (a[i] > out) out = a[i];
  return out;
}

}  // namespace

const Ops neon_ops = {v_mul, v_mul_acc,         v_axpy, v_stage, v_dot,
                      v_sum, v_weighted_sq_sum, v_min,  v_max};

}  // namespace mlsw::kernels

#endif  // __aarch64__
