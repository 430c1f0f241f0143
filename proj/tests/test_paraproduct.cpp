#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "parahyp/norms.hpp"
#include "parahyp/paraproduct.hpp"
#include "parahyp/random_fields.hpp"

using namespace parahyp;

TEST_CASE("gap validation") {
  ParaConfig cfg;
  cfg.gap = 1;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg.gap = 2;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("trichotomy sums to the dealiased product") {
  const GridSpec g(1, 256);
  for (const Profile prof : {Profile::sharp, Profile::smooth}) {
    for (int gap : {2, 4, 8}) {
      for (int trial = 0; trial < 10; ++trial) {
        const Field f = random_field(
            g, 1, derive_seed(11, "para-tri-f", trial), {.decay = 3.0});
        const Field h = random_field(
            g, 1, derive_seed(11, "para-tri-g", trial), {.decay = 3.0});
        ParaConfig cfg;
        cfg.gap = gap;
        cfg.profile = prof;
        const ParaParts parts = para_decompose(f, h, cfg);
        const Field prod = dealiased_product(f, h);
        const Field defect =
            prod - (parts.low_high + parts.high_low + parts.high_high);
        CHECK(l2_norm(defect) <= 1e-12 * l2_norm(prod));
        CHECK(l2_norm(parts.high_high - para_highhigh(f, h, cfg)) <=
              1e-12 * l2_norm(prod));
      }
    }
  }
}

TEST_CASE("low-high keeps the advancing factor strictly below the gap") {
  const GridSpec g(1, 256);
  // f lives in shell 1 (|xi| = 2), h in shell 6 (|xi| = 48).
  const Field f = Field::from_function(
      g, 1, [](double x, int) { return std::cos(2.0 * x); });
  const Field h = Field::from_function(
      g, 1, [](double x, int) { return std::cos(48.0 * x); });
  const Field prod = dealiased_product(f, h);

  ParaConfig cfg;
  cfg.gap = 4;
  // S_{<6-4} keeps shells {0, 1}, so all of f: T_f h is the whole product,
  // T_h f sees S_{<1-4} = 0, and the remainder vanishes.
  ParaParts parts = para_decompose(f, h, cfg);
  CHECK(l2_norm(parts.low_high - prod) <= 1e-12 * l2_norm(prod));
  CHECK(l2_norm(parts.high_low) <= 1e-12 * l2_norm(prod));
  CHECK(l2_norm(parts.high_high) <= 1e-12 * l2_norm(prod));

  // With gap 8 the coefficient cutoff S_{<6-8} annihilates f as well, so the
  // whole product lands in the remainder.
  cfg.gap = 8;
  parts = para_decompose(f, h, cfg);
  CHECK(l2_norm(parts.low_high) <= 1e-12 * l2_norm(prod));
  CHECK(l2_norm(parts.high_low) <= 1e-12 * l2_norm(prod));
  CHECK(l2_norm(parts.high_high - prod) <= 1e-12 * l2_norm(prod));
}

TEST_CASE("paraproduct output is frequency localized near the high factor") {
  const GridSpec g(1, 256);
  const Field f = random_field(g, 1, derive_seed(11, "para-loc-f"),
                               {.decay = 2.0, .max_shell = 2});
  const Field h = Field::from_function(
      g, 1, [](double x, int) { return std::sin(40.0 * x); });  // shell 6
  ParaConfig cfg;
  cfg.gap = 3;
  const Field lh = para_lowhigh(f, h, cfg);
  // f carries |xi| <= 4, h carries |xi| = 40: the product stays in
  // 36 <= |xi| <= 44, inside shell 6. Everything below shell 5 must vanish.
  const SpectralField LH = transform(lh);
  double low_mass = 0.0, total = 0.0;
  for (std::size_t i = 0; i < g.total(); ++i) {
    const double a = std::abs(LH.coeff[0][i]);
    total += a * a;
    const int xi = std::abs(g.wavenumber(static_cast<int>(i)));
    if (xi < 32) low_mass += a * a;
  }
  CHECK(total > 0.0);
  CHECK(low_mass <= 1e-24 * total);
}

TEST_CASE("scalar low factor broadcasts across components") {
  const GridSpec g(1, 128);
  const Field f = random_field(g, 1, derive_seed(11, "para-bc-f"));
  const Field h = random_field(g, 2, derive_seed(11, "para-bc-g"));
  ParaConfig cfg;
  cfg.gap = 2;
  const Field lh = para_lowhigh(f, h, cfg);
  REQUIRE(lh.components == 2);
  for (int c = 0; c < 2; ++c) {
    Field hc(g, 1);
    hc.values[0] = h.values[c];
    const Field one = para_lowhigh(f, hc, cfg);
    double m = 0.0;
    for (std::size_t p = 0; p < g.total(); ++p)
      m = std::max(m, std::fabs(one.values[0][p] - lh.values[c][p]));
    CHECK(m < 1e-13);
  }
}

TEST_CASE("commutator ratio is order one for smooth factors") {
  const GridSpec g(1, 256);
  const Field f = Field::from_function(
      g, 1, [](double x, int) { return std::sin(x) + 0.3 * std::cos(2.0 * x); });
  for (int trial = 0; trial < 20; ++trial) {
    const Field h =
        random_field(g, 1, derive_seed(11, "para-comm", trial), {.decay = 4.0});
    for (int k : {3, 4, 5, 6}) {
      const CommutatorReport rep = commutator_check(f, h, k, Profile::smooth);
      CHECK(rep.k == k);
      CHECK(rep.ratio >= 0.0);
      CHECK(rep.ratio <= 8.0);
      CHECK(rep.grad_f_linf ==
            doctest::Approx(control_params(f).B).epsilon(1e-12));
    }
  }
}

TEST_CASE("commutator of a constant factor vanishes") {
  const GridSpec g(1, 128);
  Field f(g, 1);
  for (auto& v : f.values[0]) v = 2.5;
  const Field h = random_field(g, 1, derive_seed(11, "para-comm-const"));
  const CommutatorReport rep = commutator_check(f, h, 4);
  CHECK(rep.comm_l2 <= 1e-12);
  CHECK(rep.ratio == 0.0);  // zero gradient denominator is reported as 0
}
