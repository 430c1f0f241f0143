// Acceptance gate: one pass/fail line per criterion, exit 0 only if all pass.
// Every tolerance and runtime budget is pinned here, next to its check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "parahyp/experiments.hpp"
#include "parahyp/io.hpp"
#include "parahyp/norms.hpp"
#include "parahyp/random_fields.hpp"

using namespace parahyp;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

Field sin_datum(const GridSpec& g) {
  return Field::from_function(g, 1, [](double x, int) { return std::sin(x); });
}

CharacteristicsOracle sin_oracle() {
  return {[](double x) { return std::sin(x); },
          [](double x) { return std::cos(x); }};
}

HarnessConfig desk_config() {
  HarnessConfig hc;
  hc.grid = GridSpec(1, 256);
  hc.s = 3.0;
  hc.seed = kSeed;
  return hc;
}

// 1. T_f g + T_g f + Pi(f,g) recompose fg to 1e-12 relative, 200 random
// pairs, both profiles, gaps {4, 8}.
Outcome criterion_trichotomy() {
  const GridSpec g(1, 256);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Field f = random_field(g, 1, derive_seed(kSeed, "acc1-f", trial),
                                 {.decay = 3.0});
    const Field h = random_field(g, 1, derive_seed(kSeed, "acc1-g", trial),
                                 {.decay = 3.0});
    const Field prod = dealiased_product(f, h);
    const double scale = l2_norm(prod);
    for (const Profile prof : {Profile::sharp, Profile::smooth}) {
      for (int gap : {4, 8}) {
        ParaConfig cfg;
        cfg.gap = gap;
        cfg.profile = prof;
        const ParaParts parts = para_decompose(f, h, cfg);
        const Field defect =
            parts.low_high + parts.high_low + parts.high_high - prod;
        worst = std::max(worst, l2_norm(defect) / scale);
      }
    }
  }
  return {worst <= 1e-12, "max relative defect " + fmt(worst)};
}

// 2. ||T_f g||_L2 <= 4 ||f||_Linf ||g||_L2 and
//    2^k ||[P_k, f] g||_L2 <= 8 ||grad f||_Linf ||g||_L2
// over 200 trials, with both constants stable within 2x across
// N in {64, 128, 256}.
Outcome criterion_inequalities() {
  std::vector<double> cms, comms;
  for (int n : {64, 128, 256}) {
    const GridSpec g(1, n);
    double cm = 0.0, comm = 0.0;
    std::mt19937_64 pick(derive_seed(kSeed, "acc2-k", n));
    for (int trial = 0; trial < 200; ++trial) {
      const Field f =
          random_field(g, 1, derive_seed(kSeed, "acc2-f", n * 1000 + trial),
                       {.decay = 4.0});
      const Field h =
          random_field(g, 1, derive_seed(kSeed, "acc2-g", n * 1000 + trial),
                       {.decay = 4.0});
      ParaConfig cfg;
      cfg.gap = 2;
      cm = std::max(cm, l2_norm(para_lowhigh(f, h, cfg)) /
                            (linf_norm(f) * l2_norm(h)));
      const int top = g.envelope_top();
      const int k = 2 + static_cast<int>(pick() % (top - 1));
      comm = std::max(comm, commutator_check(f, h, k, Profile::smooth).ratio);
    }
    cms.push_back(cm);
    comms.push_back(comm);
  }
  const auto spread = [](const std::vector<double>& v) {
    double lo = v[0], hi = v[0];
    for (double x : v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    return hi / lo;
  };
  const double cm_max = *std::max_element(cms.begin(), cms.end());
  const double comm_max = *std::max_element(comms.begin(), comms.end());
  const bool pass = cm_max <= 4.0 && comm_max <= 8.0 &&
                    spread(cms) <= 2.0 && spread(comms) <= 2.0;
  return {pass, "product const " + fmt(cm_max) + " (spread " +
                    fmt(spread(cms)) + "), commutator const " + fmt(comm_max) +
                    " (spread " + fmt(spread(comms)) + ")"};
}

// 3. N(u) = paradiff(u,u) + F(u) and the linearized analogue, both against
// independently assembled three-term right-hand sides, 1e-10 relative,
// 50 random fields.
Outcome criterion_splitting() {
  const GridSpec g(1, 256);
  ParaConfig cfg;
  cfg.gap = 4;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const HyperbolicSystem& sys =
        system_registry(trial % 2 == 0 ? "burgers" : "sym2");
    const Field u = random_field(g, sys.components,
                                 derive_seed(kSeed, "acc3-u", trial));
    const Field v = random_field(g, sys.components,
                                 derive_seed(kSeed, "acc3-v", trial));

    const Field n = apply_N(sys, u);
    const Field split = apply_paradiff(sys, u, u, cfg) +
                        perturbative_F_displayed(sys, u, cfg);
    worst = std::max(worst, l2_norm(n - split) / l2_norm(n));

    const Field lin = apply_linearized(sys, u, v);
    const LinearizedRemainder rem = linearized_remainder(sys, u, v, cfg);
    const Field lsplit = apply_paradiff(sys, u, v, cfg) + rem.pi_part +
                         linearized_remainder_t_displayed(sys, u, v, cfg);
    worst = std::max(worst, l2_norm(lin - lsplit) / l2_norm(lin));
  }
  return {worst <= 1e-10, "max relative defect " + fmt(worst)};
}

// 4. First-order Taylor defect of the exact flow: slope of
// ||u(eps) - u0 - eps N(u0)||_L2 vs eps over eps = 2^-6..2^-12 is >= 1.9.
Outcome criterion_step_order() {
  const GridSpec g(1, 256);
  const HyperbolicSystem& burgers = system_registry("burgers");
  const Field u0 = sin_datum(g);
  const Field n0 = apply_N(burgers, u0);
  const CharacteristicsOracle oracle = sin_oracle();
  std::vector<double> xs, ys;
  for (int p = 6; p <= 12; ++p) {
    const double eps = std::ldexp(1.0, -p);
    Field taylor = u0;
    axpy(eps, n0, taylor);
    const double defect = l2_norm(oracle.evaluate(g, eps) - taylor);
    xs.push_back(std::log2(eps));
    ys.push_back(std::log2(defect));
  }
  const double slope = fit_slope(xs, ys);
  return {slope >= 1.9, "defect slope " + fmt(slope)};
}

// 5. Regularized Euler vs the characteristics oracle at T = 0.5: errors
// decrease monotonically in eps, fitted rate >= 0.8, error <= 5e-3 at 2^-10.
Outcome criterion_scheme_convergence() {
  const GridSpec g(1, 256);
  const HyperbolicSystem& burgers = system_registry("burgers");
  const Field ref = sin_oracle().evaluate(g, 0.5);
  SolveConfig cfg;
  cfg.T = 0.5;
  std::vector<double> xs, ys;
  bool monotone = true;
  double prev = 1e18, last = 0.0;
  for (int p = 6; p <= 10; ++p) {
    cfg.epsilon = std::ldexp(1.0, -p);
    const Trajectory traj = solve(burgers, sin_datum(g), cfg);
    if (traj.blown_up) return {false, "unexpected blowup at eps 2^-" +
                                          std::to_string(p)};
    last = l2_norm(traj.final_state() - ref);
    monotone = monotone && last < prev;
    prev = last;
    xs.push_back(std::log2(cfg.epsilon));
    ys.push_back(std::log2(last));
  }
  const double rate = fit_slope(xs, ys);
  const bool pass = monotone && rate >= 0.8 && last <= 5e-3;
  return {pass, "rate " + fmt(rate) + ", error at 2^-10 " + fmt(last) +
                    (monotone ? "" : ", not monotone")};
}

// 6. One Gronwall constant covers the five-amplitude family, spread <= 4x.
Outcome criterion_energy_growth() {
  const ExperimentResult r = run_experiment("energy_growth", desk_config());
  return {r.pass, "constant spread " + fmt(r.fitted.at("spread"))};
}

// 7. Uniqueness constant stable within 2x across perturbation scales.
Outcome criterion_uniqueness() {
  const ExperimentResult r = run_experiment("uniqueness", desk_config());
  return {r.pass, "constant spread " + fmt(r.fitted.at("spread"))};
}

// 8. Iteration contraction at T = 0.05: every ratio d_n/d_{n-1} <= 1/2, and
// halving T reduces the contraction factor, consistent with a linear-in-T
// factor to within 2x (kappa(T) <= 4 kappa(T/2)).
Outcome criterion_contraction() {
  const GridSpec g(1, 256);
  const HyperbolicSystem& burgers = system_registry("burgers");
  SolveConfig cfg;
  cfg.scheme = Scheme::iteration;
  cfg.T = 0.05;
  const auto [traj, full] = iteration_solve(burgers, sin_datum(g), cfg);
  bool ratios_ok = full.converged && !full.ratios.empty();
  for (double r : full.ratios) ratios_ok = ratios_ok && r <= 0.5;
  cfg.T = 0.025;
  const auto [traj2, half] = iteration_solve(burgers, sin_datum(g), cfg);
  const bool halving_ok =
      half.kappa <= full.kappa && full.kappa <= 4.0 * half.kappa;
  return {ratios_ok && halving_ok,
          "kappa(T) " + fmt(full.kappa) + ", kappa(T/2) " + fmt(half.kappa)};
}

// 9. One constant covers the regularized-family bounds for h = 2..6.
Outcome criterion_regularized_family() {
  const ExperimentResult r =
      run_experiment("regularized_family", desk_config());
  return {r.pass, "family constant " + fmt(r.fitted.at("C"))};
}

// 10. Sup-in-time H^s distances strictly decreasing over j = 1..6 and the
// envelope l2 distances decreasing to zero.
Outcome criterion_continuous_dependence() {
  const ExperimentResult r =
      run_experiment("continuous_dependence", desk_config());
  return {r.pass,
          "d6/d1 " + fmt(r.fitted.at("d6") / r.fitted.at("d1")) + ", e6/e1 " +
              fmt(r.fitted.at("e6") / r.fitted.at("e1"))};
}

// 11. Blowup detection times approach T* = 1 from below (inside [0.9, 1))
// as N grows through {128, 256, 512}; rank correlation(Hs growth, intB)
// >= 0.99.
Outcome criterion_continuation() {
  const ExperimentResult r = run_experiment("continuation", desk_config());
  std::ostringstream det;
  det << "t_detect";
  for (int n : {128, 256, 512})
    det << " " << fmt(r.fitted.at("t_" + std::to_string(n)));
  det << ", spearman " << fmt(r.fitted.at("spearman_min"));
  return {r.pass, det.str()};
}

// 12. Dominance and slow variation hold for every constructed envelope,
// 500 random fields.
Outcome criterion_envelope_axioms() {
  const GridSpec g(1, 256);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    RandomFieldSpec spec;
    spec.decay = 2.0 + (trial % 3);
    if (trial % 5 == 0) spec.max_shell = 4;
    const Field u =
        random_field(g, 1, derive_seed(kSeed, "acc12", trial), spec);
    const std::vector<double> a = shell_norms(u, 3.0);
    const double dn = trial % 2 == 0 ? 0.25 : 0.2;
    const double up = trial % 2 == 0 ? 0.25 : 0.4;
    const FrequencyEnvelope env = envelope_from_shell_norms(a, 3.0, dn, up);
    for (std::size_t k = 0; k < a.size(); ++k)
      if (env.c[k] < a[k] * (1.0 - 1e-13))
        return {false, "dominance fails at trial " + std::to_string(trial)};
    const int m = static_cast<int>(env.c.size());
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j) {
        if (j == k) continue;
        const double bound =
            j < k ? std::exp2(up * (k - j)) * env.c[j]
                  : std::exp2(dn * (j - k)) * env.c[j];
        if (env.c[k] > bound * (1.0 + 1e-12))
          return {false, "slow variation fails at trial " +
                             std::to_string(trial)};
      }
    ++checked;
  }
  return {true, std::to_string(checked) + " envelopes satisfy both axioms"};
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"paraproduct trichotomy", 10, criterion_trichotomy},
      {"product and commutator inequalities", 30, criterion_inequalities},
      {"paradifferential splitting identities", 10, criterion_splitting},
      {"single-step order", 5, criterion_step_order},
      {"scheme convergence to oracle", 30, criterion_scheme_convergence},
      {"energy growth audit", 60, criterion_energy_growth},
      {"uniqueness bound", 60, criterion_uniqueness},
      {"iteration contraction", 60, criterion_contraction},
      {"regularized data family", 120, criterion_regularized_family},
      {"continuous dependence", 120, criterion_continuous_dependence},
      {"continuation criterion", 120, criterion_continuation},
      {"envelope axioms", 10, criterion_envelope_axioms},
  };

  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_budget = secs < criteria[i].budget_s;
    const bool ok = out.pass && in_budget;
    if (ok) ++passed;
    std::printf("%s  %2zu. %s: %s (%.1fs%s)\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name, out.detail.c_str(), secs,
                in_budget ? "" : ", over budget");
  }
  std::printf("ACCEPTANCE: %d/12 criteria pass\n", passed);
  return passed == 12 ? 0 : 1;
}
