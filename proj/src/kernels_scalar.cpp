#include <cmath>

#include "parahyp/kernels.hpp"

namespace parahyp::kernels {
namespace {

void mul_s(const double* a, const double* b, double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) c[i] = a[i] * b[i];
}

void mul_add_s(const double* a, const double* b, double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) c[i] += a[i] * b[i];
}

void axpy_s(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void apply_multiplier_s(const double* m, double* z, std::size_t n_modes) {
  for (std::size_t i = 0; i < n_modes; ++i) {
    z[2 * i] *= m[i];
    z[2 * i + 1] *= m[i];
  }
}

double sum_sq_s(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double weighted_mode_energy_s(const double* w, const double* z,
                              std::size_t n_modes) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n_modes; ++i)
    acc += w[i] * (z[2 * i] * z[2 * i] + z[2 * i + 1] * z[2 * i + 1]);
  return acc;
}

double max_abs_s(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(x[i]);
    if (v > m) m = v;
  }
  return m;
}

double max_sum_sq2_s(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = a[i] * a[i] + b[i] * b[i];
    if (v > m) m = v;
  }
  return m;
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend{
      "scalar",        mul_s,     mul_add_s,
      axpy_s,          apply_multiplier_s,   sum_sq_s,
      weighted_mode_energy_s,     max_abs_s, max_sum_sq2_s};
  return backend;
}

}  // namespace parahyp::kernels
