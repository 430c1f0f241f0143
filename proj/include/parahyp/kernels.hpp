#pragma once

#include <cstddef>
#include <string>

namespace parahyp::kernels {

// Hot inner loops behind a runtime-selected backend. Pointwise kernels are
// bit-identical across backends (no FMA contraction, same per-element
// expression); reductions may reassociate and agree only to round-off.
struct Backend {
  const char* name;

  // c[i] = a[i] * b[i]
  void (*mul)(const double* a, const double* b, double* c, std::size_t n);
  // c[i] += a[i] * b[i]
  void (*mul_add)(const double* a, const double* b, double* c, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // Interleaved complex z scaled by a real multiplier per mode:
  // z[2i] *= m[i]; z[2i+1] *= m[i]
  void (*apply_multiplier)(const double* m, double* z, std::size_t n_modes);

  // sum_i x[i]^2
  double (*sum_sq)(const double* x, std::size_t n);
  // sum_i w[i] * (z[2i]^2 + z[2i+1]^2) for interleaved complex z
  double (*weighted_mode_energy)(const double* w, const double* z,
                                 std::size_t n_modes);
  // max_i |x[i]|
  double (*max_abs)(const double* x, std::size_t n);
  // max_i (a[i]^2 + b[i]^2)
  double (*max_sum_sq2)(const double* a, const double* b, std::size_t n);
};

const Backend& scalar_backend();
#if defined(__x86_64__) || defined(_M_X64)
const Backend& avx2_backend();
#endif
#if defined(__aarch64__)
const Backend& neon_backend();
#endif

// Backend chosen at first use: PARAHYP_KERNELS={scalar,avx2,neon} overrides,
// otherwise the widest instruction set the CPU reports. Stable for the
// process lifetime.
const Backend& active();

// Lookup by name; nullptr if the backend is unknown or not compiled in.
const Backend* by_name(const std::string& name);

}  // namespace parahyp::kernels
