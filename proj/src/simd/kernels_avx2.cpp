#if defined(__x86_64__)

#include <immintrin.h>

#include "mlsw/simd/kernels.hpp"

// AVX2 variants. Elementwise kernels use separate mul/add (no FMA) so that
// results are bit-identical to the scalar reference. Reductions accumulate
// in four lanes and combine at the end.

namespace mlsw::kernels {

namespace {

void v_mul(const double* a, const double* b, double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(c + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                          _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) c[i] = a[i] * b[i];
}

void v_mul_acc(const double* a, const double* b, double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod =
        _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(c + i, _mm256_add_pd(_mm256_loadu_pd(c + i), prod));
  }
  for (; i < n; ++i) c[i] += a[i] * b[i];
}

void v_axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void v_stage(const double* x, double alpha, const double* t, double* out,
             std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(t + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(x + i), prod));
  }
  for (; i < n; ++i) out[i] = x[i] + alpha * t[i];
}

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double v_dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(
        acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

double v_sum(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double out = hsum(acc);
  for (; i < n; ++i) out += a[i];
  return out;
}

double v_weighted_sq_sum(const double* w, const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    acc = _mm256_add_pd(
        acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_mul_pd(va, va)));
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += w[i] * a[i] * a[i];
  return out;
}

double v_min(const double* a, std::size_t n) {
  double out = a[0];
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(a);
    for (i = 4; i + 4 <= n; i += 4)
      acc = _mm256_min_pd(acc, _mm256_loadu_pd(a + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    out = lanes[0];
    for (int l = 1; l < 4; ++l)
      if (lanes[l] < out) out = lanes[l];
  }
  for (; i < n; ++i)
    if (a[i] < out) out = a[i];
  return out;
}

double v_max(const double* a, std::size_t n) {
  double out = a[0];
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(a);
    for (i = 4; i + 4 <= n; i += 4)
      acc = _mm256_max_pd(acc, _mm256_loadu_pd(a + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    out = lanes[0];
    for (int l = 1; l < 4; ++l)
      if (lanes[l] > out) out = lanes[l];
  }
  for (; i < n; ++i)
    if (a[i] > out) out = a[i];
  return out;
}

}  // namespace

const Ops avx2_ops = {v_mul, v_mul_acc,         v_axpy, v_stage, v_dot,
                      v_sum, v_weighted_sq_sum, v_min,  v_max};

}  // namespace mlsw::kernels

#endif  // __x86_64__
