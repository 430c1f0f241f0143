#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "parahyp/kernels.hpp"
#include "parahyp/random_fields.hpp"

using namespace parahyp;

namespace {

std::vector<double> random_vec(std::mt19937_64& gen, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = 2.0 * rand_u01(gen) - 1.0;
  return v;
}

// Odd lengths exercise the vector-remainder tail paths.
const std::size_t kLengths[] = {1, 2, 3, 4, 7, 8, 15, 16, 64, 255, 1024, 1031};

}  // namespace

TEST_CASE("backend registry") {
  CHECK(kernels::by_name("scalar") != nullptr);
  CHECK(kernels::by_name("scalar") == &kernels::scalar_backend());
  CHECK(kernels::by_name("not-a-backend") == nullptr);
  CHECK(kernels::active().name != nullptr);
#if defined(__x86_64__) || defined(_M_X64)
  CHECK(kernels::by_name("avx2") == &kernels::avx2_backend());
#endif
}

TEST_CASE("pointwise kernels match scalar bit for bit") {
  const kernels::Backend& ref = kernels::scalar_backend();
  std::vector<const kernels::Backend*> others;
  others.push_back(&kernels::active());
#if defined(__x86_64__) || defined(_M_X64)
  others.push_back(&kernels::avx2_backend());
#endif
#if defined(__aarch64__)
  others.push_back(&kernels::neon_backend());
#endif

  std::mt19937_64 gen(derive_seed(7, "kernels-pointwise"));
  for (const kernels::Backend* bk : others) {
    CAPTURE(bk->name);
    for (std::size_t n : kLengths) {
      const std::vector<double> a = random_vec(gen, n);
      const std::vector<double> b = random_vec(gen, n);

      std::vector<double> c1(n, 0.5), c2(n, 0.5);
      ref.mul(a.data(), b.data(), c1.data(), n);
      bk->mul(a.data(), b.data(), c2.data(), n);
      CHECK(c1 == c2);

      c1.assign(n, 0.25);
      c2.assign(n, 0.25);
      ref.mul_add(a.data(), b.data(), c1.data(), n);
      bk->mul_add(a.data(), b.data(), c2.data(), n);
      CHECK(c1 == c2);

      c1 = b;
      c2 = b;
      ref.axpy(1.75, a.data(), c1.data(), n);
      bk->axpy(1.75, a.data(), c2.data(), n);
      CHECK(c1 == c2);

      std::vector<double> z = random_vec(gen, 2 * n);
      std::vector<double> z2 = z;
      ref.apply_multiplier(a.data(), z.data(), n);
      bk->apply_multiplier(a.data(), z2.data(), n);
      CHECK(z == z2);
    }
  }
}

TEST_CASE("reductions agree to round-off") {
  const kernels::Backend& ref = kernels::scalar_backend();
  const kernels::Backend& bk = kernels::active();
  std::mt19937_64 gen(derive_seed(7, "kernels-reduce"));
  for (std::size_t n : kLengths) {
    const std::vector<double> a = random_vec(gen, n);
    const std::vector<double> b = random_vec(gen, n);
    const std::vector<double> z = random_vec(gen, 2 * n);

    CHECK(ref.sum_sq(a.data(), n) ==
          doctest::Approx(bk.sum_sq(a.data(), n)).epsilon(1e-13));
    const std::vector<double> w = random_vec(gen, n);
    CHECK(ref.weighted_mode_energy(w.data(), z.data(), n) ==
          doctest::Approx(bk.weighted_mode_energy(w.data(), z.data(), n))
              .epsilon(1e-13));
    // max reductions pick one element, so they are exact.
    CHECK(ref.max_abs(a.data(), n) == bk.max_abs(a.data(), n));
    CHECK(ref.max_sum_sq2(a.data(), b.data(), n) ==
          bk.max_sum_sq2(a.data(), b.data(), n));
  }
}

TEST_CASE("reduction values against direct sums") {
  const kernels::Backend& bk = kernels::active();
  std::mt19937_64 gen(derive_seed(7, "kernels-values"));
  const std::size_t n = 257;
  const std::vector<double> a = random_vec(gen, n);
  const std::vector<double> b = random_vec(gen, n);
  const std::vector<double> w = random_vec(gen, n);
  const std::vector<double> z = random_vec(gen, 2 * n);

  double ss = 0.0, we = 0.0, ma = 0.0, ms = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ss += a[i] * a[i];
    we += w[i] * (z[2 * i] * z[2 * i] + z[2 * i + 1] * z[2 * i + 1]);
    ma = std::max(ma, std::fabs(a[i]));
    ms = std::max(ms, a[i] * a[i] + b[i] * b[i]);
  }
  CHECK(bk.sum_sq(a.data(), n) == doctest::Approx(ss).epsilon(1e-13));
  CHECK(bk.weighted_mode_energy(w.data(), z.data(), n) ==
        doctest::Approx(we).epsilon(1e-13));
  CHECK(bk.max_abs(a.data(), n) == ma);
  CHECK(bk.max_sum_sq2(a.data(), b.data(), n) == ms);
}
