// AVX2 variants. Compiled with -mavx2 for this translation unit only; callers
// reach it through the runtime dispatch in kernels.cpp. Pointwise kernels use
// separate mul/add (no FMA) so results are bit-identical to the scalar path.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "parahyp/kernels.hpp"

namespace parahyp::kernels {
namespace {

void mul_v(const double* a, const double* b, double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(c + i, _mm256_mul_pd(va, vb));
  }
  for (; i < n; ++i) c[i] = a[i] * b[i];
}

void mul_add_v(const double* a, const double* b, double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    const __m256d vc = _mm256_loadu_pd(c + i);
    _mm256_storeu_pd(c + i, _mm256_add_pd(vc, _mm256_mul_pd(va, vb)));
  }
  for (; i < n; ++i) c[i] += a[i] * b[i];
}

void axpy_v(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void apply_multiplier_v(const double* m, double* z, std::size_t n_modes) {
  std::size_t i = 0;
  for (; i + 2 <= n_modes; i += 2) {
    // [m0, m1] -> [m0, m0, m1, m1] to cover two interleaved complexes.
    const __m128d mpair = _mm_loadu_pd(m + i);
    const __m256d mdup =
        _mm256_permute4x64_pd(_mm256_castpd128_pd256(mpair), 0x50);
    const __m256d vz = _mm256_loadu_pd(z + 2 * i);
    _mm256_storeu_pd(z + 2 * i, _mm256_mul_pd(vz, mdup));
  }
  for (; i < n_modes; ++i) {
    z[2 * i] *= m[i];
    z[2 * i + 1] *= m[i];
  }
}

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_sq_v(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vx, vx));
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i] * x[i];
  return r;
}

double weighted_mode_energy_v(const double* w, const double* z,
                              std::size_t n_modes) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n_modes; i += 2) {
    const __m128d wpair = _mm_loadu_pd(w + i);
    const __m256d wdup =
        _mm256_permute4x64_pd(_mm256_castpd128_pd256(wpair), 0x50);
    const __m256d vz = _mm256_loadu_pd(z + 2 * i);
    // lanes hold w_i re^2, w_i im^2; the horizontal sum restores w|z|^2.
    acc = _mm256_add_pd(acc, _mm256_mul_pd(wdup, _mm256_mul_pd(vz, vz)));
  }
  double r = hsum(acc);
  for (; i < n_modes; ++i)
    r += w[i] * (z[2 * i] * z[2 * i] + z[2 * i + 1] * z[2 * i + 1]);
  return r;
}

double max_abs_v(const double* x, std::size_t n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_andnot_pd(signmask, _mm256_loadu_pd(x + i));
    acc = _mm256_max_pd(acc, vx);
  }
  double m = hmax(acc);
  for (; i < n; ++i) {
    const double v = std::fabs(x[i]);
    if (v > m) m = v;
  }
  return m;
}

double max_sum_sq2_v(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    acc = _mm256_max_pd(
        acc, _mm256_add_pd(_mm256_mul_pd(va, va), _mm256_mul_pd(vb, vb)));
  }
  double m = hmax(acc);
  for (; i < n; ++i) {
    const double v = a[i] * a[i] + b[i] * b[i];
    if (v > m) m = v;
  }
  return m;
}

}  // namespace

const Backend& avx2_backend() {
  static const Backend backend{
      "avx2",          mul_v,     mul_add_v,
      axpy_v,          apply_multiplier_v,   sum_sq_v,
      weighted_mode_energy_v,     max_abs_v, max_sum_sq2_v};
  return backend;
}

}  // namespace parahyp::kernels

#endif  // x86_64
