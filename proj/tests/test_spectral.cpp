#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "parahyp/norms.hpp"
#include "parahyp/random_fields.hpp"
#include "parahyp/spectral.hpp"

using namespace parahyp;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
  REQUIRE(a.grid == b.grid);
  REQUIRE(a.components == b.components);
  double m = 0.0;
  for (int c = 0; c < a.components; ++c)
    for (std::size_t p = 0; p < a.grid.total(); ++p)
      m = std::max(m, std::fabs(a.values[c][p] - b.values[c][p]));
  return m;
}

double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (int c = 0; c < a.components; ++c)
    for (std::size_t p = 0; p < a.grid.total(); ++p)
      m = std::max(m, std::abs(a.coeff[c][p] - b.coeff[c][p]));
  return m;
}

}  // namespace

TEST_CASE("grid bookkeeping") {
  CHECK_THROWS_AS(GridSpec(3, 64), InvalidArgument);
  CHECK_THROWS_AS(GridSpec(1, 48), InvalidArgument);
  CHECK_THROWS_AS(GridSpec(1, 8), InvalidArgument);

  const GridSpec g(1, 256);
  CHECK(g.nyquist() == 128);
  CHECK(g.shell_top() == 7);
  CHECK(g.envelope_top() == 6);
  CHECK((1 << (g.envelope_top() + 1)) == g.nyquist());
  CHECK(g.wavenumber(1) == 1);
  CHECK(g.wavenumber(128) == -128);
  CHECK(g.wavenumber(255) == -1);
  CHECK(shell_top(g) == g.shell_top());

  const GridSpec g2(2, 64);
  CHECK(g2.total() == 64u * 64u);
  CHECK(g2.max_freq() == doctest::Approx(32.0 * std::sqrt(2.0)));
  CHECK(g2.shell_top() == 6);  // 2^6 = 64 >= 45.25
  CHECK(g2.envelope_top() == 4);
}

TEST_CASE("transform round trip and known coefficients") {
  for (const GridSpec g : {GridSpec(1, 16), GridSpec(1, 64), GridSpec(2, 16),
                           GridSpec(2, 32)}) {
    const Field f = random_field(g, 2, derive_seed(3, "spectral-rt", g.n));
    const Field back = inverse_transform(transform(f));
    CHECK(max_abs_diff(f, back) < 1e-12);
    CHECK(hermitian_defect(transform(f)) < 1e-13);
  }

  const GridSpec g(1, 64);
  const Field s = Field::from_function(
      g, 1, [](double x, int) { return std::sin(x); });
  const SpectralField S = transform(s);
  // sin x = -i/2 e^{ix} + i/2 e^{-ix}
  CHECK(std::abs(S.coeff[0][1] - std::complex<double>(0.0, -0.5)) < 1e-13);
  CHECK(std::abs(S.coeff[0][63] - std::complex<double>(0.0, 0.5)) < 1e-13);
  double rest = 0.0;
  for (int i = 0; i < 64; ++i)
    if (i != 1 && i != 63) rest = std::max(rest, std::abs(S.coeff[0][i]));
  CHECK(rest < 1e-14);
}

TEST_CASE("spectral derivative") {
  const GridSpec g(1, 64);
  const Field s = Field::from_function(
      g, 1, [](double x, int) { return std::sin(3.0 * x); });
  const Field d = derivative(s, 0);
  const Field want = Field::from_function(
      g, 1, [](double x, int) { return 3.0 * std::cos(3.0 * x); });
  CHECK(max_abs_diff(d, want) < 1e-11);

  // The Nyquist mode has no representable derivative and is zeroed.
  const Field nyq = Field::from_function(
      g, 1, [&](double x, int) { return std::cos(32.0 * x); });
  CHECK(linf_norm(derivative(nyq, 0)) < 1e-12);

  const GridSpec g2(2, 32);
  const Field f2 = Field::from_function2(
      g2, 1, [](double x, double y, int) { return std::sin(x + 2.0 * y); });
  const Field dy = derivative(f2, 1);
  const Field want2 = Field::from_function2(g2, 1, [](double x, double y, int) {
    return 2.0 * std::cos(x + 2.0 * y);
  });
  CHECK(max_abs_diff(dy, want2) < 1e-11);
}

TEST_CASE("shells tile the lattice") {
  for (const Profile prof : {Profile::sharp, Profile::smooth}) {
    const GridSpec g(1, 128);
    const Field f = random_field(g, 1, derive_seed(3, "spectral-tile"),
                                 {.decay = 2.0, .max_shell = g.shell_top()});
    Field sum(g, 1);
    int resolved = 0;
    for (int k = 0; k <= g.shell_top(); ++k) {
      const ShellProjection pr = lp_project(f, k, prof);
      if (pr.resolved) ++resolved;
      sum += pr.field;
    }
    CHECK(resolved == g.shell_top() + 1);
    CHECK(max_abs_diff(sum, f) < 1e-12);
    CHECK_FALSE(lp_project(f, g.shell_top() + 1, prof).resolved);
  }
}

TEST_CASE("shell projector localization (sharp)") {
  const GridSpec g(1, 128);
  // |xi| = 4 sits in shell 2 = (2, 4]; |xi| = 5 in shell 3.
  const Field f = Field::from_function(g, 1, [](double x, int) {
    return std::cos(4.0 * x) + std::sin(5.0 * x);
  });
  const Field p2 = lp_project(f, 2).field;
  const Field p3 = lp_project(f, 3).field;
  const Field w2 =
      Field::from_function(g, 1, [](double x, int) { return std::cos(4.0 * x); });
  const Field w3 =
      Field::from_function(g, 1, [](double x, int) { return std::sin(5.0 * x); });
  CHECK(max_abs_diff(p2, w2) < 1e-12);
  CHECK(max_abs_diff(p3, w3) < 1e-12);
}

TEST_CASE("low pass and shell low pass") {
  const GridSpec g(1, 128);
  const Field f = random_field(g, 1, derive_seed(3, "spectral-lp"));
  const SpectralField F = transform(f);

  for (const Profile prof : {Profile::sharp, Profile::smooth}) {
    for (int m : {-1, 0, 1, 3, 5, g.shell_top() + 1}) {
      SpectralField sum(g, 1);
      for (int j = 0; j < m; ++j) axpy(1.0, lp_project(F, j, prof), sum);
      const SpectralField slp = shell_low_pass(F, m, prof);
      CHECK(max_coeff_diff(slp, sum) < 1e-13);
      if (m >= 1) {
        // Sharp keeps the integer lattice up to 2^(m-1); smooth matches the
        // one-octave low-pass ramp ending at 2^m.
        const double lambda = prof == Profile::sharp
                                  ? std::ldexp(1.0, m - 1) + 0.5
                                  : std::ldexp(1.0, m);
        const SpectralField lp = low_pass(F, lambda, prof);
        CHECK(max_coeff_diff(slp, lp) < 1e-13);
      }
    }
    // Identity once the cutoff clears the lattice.
    const Field id = low_pass(f, 2.0 * g.max_freq(), prof);
    CHECK(max_abs_diff(id, f) < 1e-13);
  }

  // Idempotence of the sharp projector.
  const Field once = low_pass(f, 10.0);
  CHECK(max_abs_diff(low_pass(once, 10.0), once) < 1e-14);
}

TEST_CASE("padding round trip is exact") {
  for (const GridSpec g : {GridSpec(1, 64), GridSpec(2, 32)}) {
    const Field f = random_field(g, 2, derive_seed(3, "spectral-pad", g.n),
                                 {.decay = 1.0, .max_shell = g.shell_top()});
    const SpectralField F = transform(f);
    const PaddedSamples p = pad_to_fine(F);
    CHECK(p.fine.n == 2 * g.n);
    const SpectralField back = truncate_from_fine(p, g);
    CHECK(max_coeff_diff(F, back) < 1e-13);
  }
}

TEST_CASE("dealiased product is the exact truncated product") {
  const GridSpec g(1, 64);
  const Field f = Field::from_function(
      g, 1, [](double x, int) { return std::sin(3.0 * x); });
  const Field h = Field::from_function(
      g, 1, [](double x, int) { return std::cos(5.0 * x); });
  // sin 3x cos 5x = (sin 8x - sin 2x) / 2
  const Field want = Field::from_function(g, 1, [](double x, int) {
    return 0.5 * (std::sin(8.0 * x) - std::sin(2.0 * x));
  });
  CHECK(max_abs_diff(dealiased_product(f, h), want) < 1e-12);

  // A product whose true frequency (62) exceeds Nyquist (32) truncates to
  // zero; the raw pointwise product aliases it back into band instead.
  const Field hi = Field::from_function(
      g, 1, [](double x, int) { return std::sin(31.0 * x); });
  const Field co = Field::from_function(
      g, 1, [](double x, int) { return std::cos(31.0 * x); });
  CHECK(linf_norm(dealiased_product(hi, co)) < 1e-12);
  Field raw(g, 1);
  for (int i = 0; i < g.n; ++i)
    raw.values[0][i] = hi.values[0][i] * co.values[0][i];
  CHECK(linf_norm(raw) > 0.4);

  // Scalar factor broadcasts across components.
  const GridSpec g2(1, 32);
  const Field a = random_field(g2, 1, derive_seed(3, "spectral-bc-a"));
  const Field b = random_field(g2, 3, derive_seed(3, "spectral-bc-b"));
  const Field prod = dealiased_product(a, b);
  CHECK(prod.components == 3);
  for (int c = 0; c < 3; ++c) {
    Field bc(g2, 1);
    bc.values[0] = b.values[c];
    CHECK(max_abs_diff(
              [&] {
                Field one(g2, 1);
                one.values[0] = prod.values[c];
                return one;
              }(),
              dealiased_product(a, bc)) < 1e-13);
  }
}

TEST_CASE("multiplier tables") {
  const GridSpec g(1, 32);
  const auto& fsq = freq_sq_table(g);
  REQUIRE(fsq.size() == g.total());
  CHECK(fsq[0] == 0.0);
  CHECK(fsq[1] == 1.0);
  CHECK(fsq[31] == 1.0);
  CHECK(fsq[16] == 256.0);

  // Shell multipliers sum to one at every lattice point, both profiles.
  for (const Profile prof : {Profile::sharp, Profile::smooth}) {
    std::vector<double> sum(g.total(), 0.0);
    for (int k = 0; k <= g.shell_top(); ++k) {
      const auto& m = shell_multiplier(g, k, prof);
      for (std::size_t p = 0; p < g.total(); ++p) sum[p] += m[p];
    }
    for (std::size_t p = 0; p < g.total(); ++p)
      CHECK(sum[p] == doctest::Approx(1.0).epsilon(1e-13));
  }
}
