// NEON variants for aarch64. Same contract as the AVX2 file: pointwise
// kernels avoid fused multiply-add so every backend returns identical bits.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

#include "parahyp/kernels.hpp"

namespace parahyp::kernels {
namespace {

void mul_v(const double* a, const double* b, double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(c + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) c[i] = a[i] * b[i];
}

void mul_add_v(const double* a, const double* b, double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t prod = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    vst1q_f64(c + i, vaddq_f64(vld1q_f64(c + i), prod));
  }
  for (; i < n; ++i) c[i] += a[i] * b[i];
}

void axpy_v(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t prod = vmulq_f64(va, vld1q_f64(x + i));
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void apply_multiplier_v(const double* m, double* z, std::size_t n_modes) {
  for (std::size_t i = 0; i < n_modes; ++i) {
    const float64x2_t vz = vld1q_f64(z + 2 * i);
    vst1q_f64(z + 2 * i, vmulq_f64(vz, vdupq_n_f64(m[i])));
  }
}

double sum_sq_v(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vld1q_f64(x + i);
    acc = vaddq_f64(acc, vmulq_f64(vx, vx));
  }
  double r = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) r += x[i] * x[i];
  return r;
}

double weighted_mode_energy_v(const double* w, const double* z,
                              std::size_t n_modes) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n_modes; ++i) {
    const float64x2_t vz = vld1q_f64(z + 2 * i);
    acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(w[i]), vmulq_f64(vz, vz)));
  }
  return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

double max_abs_v(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
  double m = vgetq_lane_f64(acc, 0);
  if (vgetq_lane_f64(acc, 1) > m) m = vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    const double v = std::fabs(x[i]);
    if (v > m) m = v;
  }
  return m;
}

double max_sum_sq2_v(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t va = vld1q_f64(a + i);
    const float64x2_t vb = vld1q_f64(b + i);
    acc = vmaxq_f64(acc, vaddq_f64(vmulq_f64(va, va), vmulq_f64(vb, vb)));
  }
  double m = vgetq_lane_f64(acc, 0);
  if (vgetq_lane_f64(acc, 1) > m) m = vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    const double v = a[i] * a[i] + b[i] * b[i];
    if (v > m) m = v;
  }
  return m;
}

}  // namespace

const Backend& neon_backend() {
  static const Backend backend{
      "neon",          mul_v,     mul_add_v,
      axpy_v,          apply_multiplier_v,   sum_sq_v,
      weighted_mode_energy_v,     max_abs_v, max_sum_sq2_v};
  return backend;
}

}  // namespace parahyp::kernels

#endif  // aarch64
