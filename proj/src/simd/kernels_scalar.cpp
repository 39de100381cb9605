#include "mlsw/simd/kernels.hpp"

namespace mlsw::kernels {

namespace {

void s_mul(const double* a, const double* b, double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) c[i] = a[i] * b[i];
}

void s_mul_acc(const double* a, const double* b, double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) c[i] += a[i] * b[i];
}

void s_axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void s_stage(const double* x, double alpha, const double* t, double* out,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + alpha * t[i];
}

double s_dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double s_sum(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

double s_weighted_sq_sum(const double* w, const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * a[i] * a[i];
  return acc;
}

double s_min(const double* a, std::size_t n) {
  double m = a[0];
  for (std::size_t i = 1; i < n; ++i)
    if (a[i] < m) m = a[i];
  return m;
}

double s_max(const double* a, std::size_t n) {
  double m = a[0];
  for (std::size_t i = 1; i < n; ++i)
    if (a[i] > m) m = a[i];
  return m;
}

}  // namespace

const Ops scalar_ops = {s_mul, s_mul_acc,         s_axpy, s_stage, s_dot,
                        s_sum, s_weighted_sq_sum, s_min,  s_max};

}  // namespace mlsw::kernels
