#include "parahyp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "parahyp/io.hpp"
#include "parahyp/norms.hpp"
#include "parahyp/random_fields.hpp"

#include "json.hpp"

namespace parahyp {

namespace {

const char* profile_name(Profile p) {
  return p == Profile::sharp ? "sharp" : "smooth";
}

const char* quant_name(Quantization q) {
  switch (q) {
    case Quantization::coeff_lowpass: return "coeff_lowpass";
    case Quantization::arg_lowpass: return "arg_lowpass";
    case Quantization::double_lowpass: return "double_lowpass";
  }
  return "?";
}

// Full-band RK4 reference integrator: the Galerkin scheme with the cutoff
// above the top shell reduces to plain pseudospectral RK4.
SolveConfig rk4_config(const HarnessConfig& cfg, const GridSpec& g, double T) {
  SolveConfig sc = cfg.solve;
  sc.scheme = Scheme::galerkin;
  sc.h_cut = g.shell_top() + 1;
  sc.T = T;
  sc.s = cfg.s;
  sc.monitor_every = 1;
  return sc;
}

void base_parameters(ExperimentResult& r, const HarnessConfig& cfg,
                     const GridSpec& g, const SolveConfig& sc) {
  r.parameters["grid_n"] = std::to_string(g.n);
  r.parameters["dim"] = std::to_string(g.dim);
  r.parameters["s"] = format_double(cfg.s);
  r.parameters["scheme"] = to_string(sc.scheme);
  r.parameters["T"] = format_double(sc.T);
  r.parameters["gap"] = std::to_string(sc.para.gap);
  r.parameters["profile"] = profile_name(sc.para.profile);
  r.parameters["quantization"] = quant_name(sc.para.quantization);
  r.seed = cfg.seed;
}

double sup_distance(const Trajectory& a, const Trajectory& b,
                    const std::function<double(const Field&)>& nrm) {
  if (a.states.size() != b.states.size())
    throw InvalidArgument(
        "sup_distance: trajectories sampled at different times");
  double top = 0.0;
  for (std::size_t i = 0; i < a.states.size(); ++i)
    top = std::max(top, nrm(a.states[i] - b.states[i]));
  return top;
}

double l2_inner(const Field& a, const Field& b) {
  require_same_grid(a.grid, b.grid, "l2_inner");
  if (a.components != b.components)
    throw ComponentMismatch("l2_inner: component count mismatch");
  double acc = 0.0;
  for (int c = 0; c < a.components; ++c)
    acc += std::inner_product(a.values[c].begin(), a.values[c].end(),
                              b.values[c].begin(), 0.0);
  return acc / static_cast<double>(a.grid.total()) *
         std::pow(2.0 * M_PI, a.grid.dim);
}

std::vector<double> ranks_of(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = 0.5 * (i + j) + 1.0;  // average rank for ties
    for (std::size_t t = i; t <= j; ++t) rank[idx[t]] = avg;
    i = j + 1;
  }
  return rank;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw InvalidArgument("spearman: need two equal series of length >= 3");
  const std::vector<double> rx = ranks_of(x), ry = ranks_of(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

// Growth constant of one perturbation scale: log of the realized distance
// amplification over the summed control integrals of both runs.
double growth_constant(double d0, double dsup, double int_b_sum) {
  if (!(d0 > 0.0) || !(int_b_sum > 0.0)) return 0.0;
  const double growth = std::log(dsup / d0);
  return growth > 0.0 ? growth / int_b_sum : 0.0;
}

}  // namespace

ExperimentResult exp_energy_growth(const HyperbolicSystem& sys,
                                   const Field& u0, const HarnessConfig& cfg) {
  ExperimentResult r;
  r.name = "energy_growth";
  const std::vector<double> amps = {0.25, 0.5, 1.0, 1.5, 2.0};
  const double t_base = 0.2;
  SolveConfig sc = rk4_config(cfg, u0.grid, t_base);
  base_parameters(r, cfg, u0.grid, sc);
  r.parameters["system"] = sys.name;
  r.parameters["amps"] = "0.25,0.5,1,1.5,2";
  r.parameters["T_base"] = format_double(t_base);
  r.parameters["horizon"] = "T_base/amp";
  r.columns = {"amp", "scheme", "Hs0", "HsT", "intB_T", "C"};
  r.tolerance =
      "single Gronwall constant across amplitudes and both time-advance "
      "schemes: max/min of fitted C <= 4, no blowup";

  bool ok = true;
  double cmin = 0.0, cmax = 0.0;
  bool first = true;
  for (double amp : amps) {
    // The horizon scales inversely with amplitude: amp*u0 traverses the same
    // flow in time t/amp, so a fixed horizon would compare early-transient
    // constants against near-shock constants instead of like with like.
    const double horizon = t_base / amp;
    SolveConfig s3 = sc;
    s3.T = horizon;
    SolveConfig s1 = cfg.solve;
    s1.scheme = Scheme::euler_reg;
    s1.T = horizon;
    s1.s = cfg.s;
    s1.monitor_every = 1;
    s1.store_states_every = 0;
    const SolveConfig* runs[] = {&s3, &s1};
    for (const SolveConfig* run_cfg : runs) {
      const double scheme_id = static_cast<double>(run_cfg->scheme);
      const Trajectory traj = solve(sys, amp * u0, *run_cfg);
      if (traj.blown_up) {
        ok = false;
        r.notes.push_back("amplitude " + format_double(amp) + " blew up");
      }
      const double c = gronwall_constant(traj);
      r.rows.push_back({amp, scheme_id, traj.diag.front().hs,
                        traj.diag.back().hs, traj.diag.back().intB, c});
      if (first) {
        cmin = cmax = c;
        first = false;
      } else {
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
      }
    }
  }
  const double spread =
      cmax == 0.0 ? 1.0
                  : (cmin > 0.0 ? cmax / cmin
                                : std::numeric_limits<double>::infinity());
  r.notes.push_back(
      "scheme column uses the Scheme enum order: 0 regularized Euler, 3 "
      "projected fourth-order");
  r.fitted["C"] = cmax;
  r.fitted["spread"] = spread;
  r.pass = ok && spread <= 4.0;
  return r;
}

ExperimentResult exp_uniqueness(const HyperbolicSystem& sys, const Field& u0,
                                const Field& perturbation,
                                const HarnessConfig& cfg) {
  require_same_grid(u0.grid, perturbation.grid, "exp_uniqueness");
  ExperimentResult r;
  r.name = "uniqueness";
  const std::vector<double> etas = {1e-2, 1e-3, 1e-4};
  SolveConfig sc = rk4_config(cfg, u0.grid, 0.5);
  sc.store_states_every = 1;
  // One shared step so all runs sample identical times.
  sc.inner_dt = sc.cfl_fraction /
                (u0.grid.n * (linf_norm(u0) + linf_norm(perturbation)));
  base_parameters(r, cfg, u0.grid, sc);
  r.parameters["system"] = sys.name;
  r.parameters["etas"] = "1e-2,1e-3,1e-4";
  r.parameters["sigma"] = format_double(cfg.s - 1.0);
  r.parameters["inner_dt"] = format_double(sc.inner_dt);
  r.columns = {"eta", "d0_L2", "dsup_L2", "C_L2", "d0_Hsig", "dsup_Hsig",
               "C_Hsig"};
  r.tolerance =
      "L2 growth constants within 2x across perturbation scales; H^(s-1) "
      "variant recorded";

  const Trajectory base = solve(sys, u0, sc);
  const double sigma = cfg.s - 1.0;
  bool ok = !base.blown_up;

  // Smallest C with d(t) <= e^(C (intB_1 + intB_2)) d(0) at every sample.
  const auto pointwise_c = [](const Trajectory& a, const Trajectory& b,
                              double d0, const auto& nrm) {
    if (a.states.size() != a.diag.size() || b.states.size() != b.diag.size())
      throw InvalidArgument("exp_uniqueness: state/diagnostic cadence differ");
    double c = 0.0;
    for (std::size_t i = 0; i < a.states.size(); ++i) {
      const double di = nrm(a.states[i] - b.states[i]);
      const double ib = a.diag[i].intB + b.diag[i].intB;
      if (di > d0 && d0 > 0.0 && ib > 0.0)
        c = std::max(c, std::log(di / d0) / ib);
    }
    return c;
  };

  double cmin = 0.0, cmax = 0.0;
  for (double eta : etas) {
    Field v0 = u0;
    axpy(eta, perturbation, v0);
    const Trajectory vt = solve(sys, v0, sc);
    if (vt.blown_up) ok = false;
    const double d0_l2 = eta * l2_norm(perturbation);
    const double d0_hs = eta * sobolev_norm(perturbation, sigma);
    const auto l2 = [](const Field& f) { return l2_norm(f); };
    const auto hsig = [&](const Field& f) { return sobolev_norm(f, sigma); };
    const double dsup_l2 = sup_distance(base, vt, l2);
    const double dsup_hs = sup_distance(base, vt, hsig);
    const double c_l2 = pointwise_c(base, vt, d0_l2, l2);
    const double c_hs = pointwise_c(base, vt, d0_hs, hsig);
    r.rows.push_back({eta, d0_l2, dsup_l2, c_l2, d0_hs, dsup_hs, c_hs});
    if (r.rows.size() == 1) {
      cmin = cmax = c_l2;
    } else {
      cmin = std::min(cmin, c_l2);
      cmax = std::max(cmax, c_l2);
    }
  }
  const double spread =
      cmax == 0.0 ? 1.0
                  : (cmin > 0.0 ? cmax / cmin
                                : std::numeric_limits<double>::infinity());
  r.fitted["C_min"] = cmin;
  r.fitted["C_max"] = cmax;
  r.fitted["spread"] = spread;
  r.pass = ok && spread <= 2.0;
  return r;
}

ExperimentResult exp_regularized_family(const HyperbolicSystem& sys,
                                        const Field& u0,
                                        const HarnessConfig& cfg, int h_lo,
                                        int h_hi) {
  if (h_lo < 1 || h_hi < h_lo)
    throw InvalidArgument("exp_regularized_family: need 1 <= h_lo <= h_hi");
  if (h_hi > u0.grid.envelope_top())
    throw GridTooCoarse("exp_regularized_family: h_hi above resolved shells");
  ExperimentResult r;
  r.name = "regularized_family";
  SolveConfig sc = rk4_config(cfg, u0.grid, 0.25);
  sc.store_states_every = 1;
  sc.inner_dt = sc.cfl_fraction / (u0.grid.n * 1.5 * linf_norm(u0));
  base_parameters(r, cfg, u0.grid, sc);
  r.parameters["system"] = sys.name;
  r.parameters["h_range"] =
      std::to_string(h_lo) + ".." + std::to_string(h_hi);
  r.parameters["inner_dt"] = format_double(sc.inner_dt);
  r.parameters["envelope_delta"] = format_double(0.25);
  r.columns = {"h",    "growth_Hs1", "dyadic_L2", "conv_Hs",
               "kato", "interp_m0",  "interp_m1", "interp_m2"};
  r.tolerance =
      "one constant C <= 50 over envelope-normalized high-norm growth "
      "(vs 2^h c_h), dyadic L2 differences (vs 2^(-sh) c_h) and Hs "
      "convergence to the untruncated run (vs the envelope tail)";

  const double s = cfg.s;
  const Profile prof = sc.para.profile;
  const FrequencyEnvelope env = sharp_envelope(u0, s, 0.25);
  const Trajectory ref = solve(sys, u0, sc);
  bool ok = !ref.blown_up;

  // 0/0 counts as satisfied (band-limited data makes bounds vacuous).
  const auto ratio = [](double num, double den) {
    if (den > 0.0) return num / den;
    return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  };

  std::vector<Trajectory> fam;
  for (int h = h_lo; h <= h_hi; ++h) {
    const Field uh0 = low_pass(u0, std::ldexp(1.0, h), prof);
    fam.push_back(solve(sys, uh0, sc));
    if (fam.back().blown_up) ok = false;
  }

  double c_all = 0.0, growth_max = 0.0, dyadic_max = 0.0, conv_max = 0.0,
         kato_max = 0.0;
  for (int h = h_lo; h <= h_hi; ++h) {
    const Trajectory& th = fam[h - h_lo];
    const double ch = env.c[h];
    double growth = 0.0;
    for (const Field& uf : th.states)
      growth = std::max(growth, sobolev_norm(uf, s + 1.0));
    growth = ratio(growth, std::ldexp(1.0, h) * ch);

    double dyadic = 0.0;
    std::vector<double> interp(3, 0.0);
    if (h < h_hi) {
      const Trajectory& tn = fam[h - h_lo + 1];
      for (std::size_t i = 0; i < th.states.size(); ++i) {
        const Field d = tn.states[i] - th.states[i];
        dyadic = std::max(dyadic, l2_norm(d));
        for (int m = 0; m <= 2; ++m)
          interp[m] = std::max(
              interp[m],
              ratio(sobolev_norm(d, m), std::ldexp(1.0, -h * (s - m)) * ch));
      }
      dyadic = ratio(dyadic, std::ldexp(1.0, -h * s) * ch);
    }

    const double conv = ratio(sup_distance(ref, th,
                                           [&](const Field& f) {
                                             return sobolev_norm(f, s);
                                           }),
                              tail(env, h));

    double kato = 0.0;
    for (std::size_t i = 0; i < ref.states.size(); ++i) {
      const Field diff = th.states[i] - ref.states[i];
      kato = std::max(kato, sobolev_norm(diff, s) +
                                std::ldexp(1.0, h) *
                                    sobolev_norm(diff, s - 1.0));
    }
    r.rows.push_back(
        {static_cast<double>(h), growth, dyadic, conv, kato, interp[0],
         interp[1], interp[2]});
    growth_max = std::max(growth_max, growth);
    dyadic_max = std::max(dyadic_max, dyadic);
    conv_max = std::max(conv_max, conv);
    kato_max = std::max(kato_max, kato);
  }
  c_all = std::max({growth_max, dyadic_max, conv_max});
  r.fitted["C"] = c_all;
  r.fitted["growth_max"] = growth_max;
  r.fitted["dyadic_max"] = dyadic_max;
  r.fitted["conv_max"] = conv_max;
  r.fitted["kato_max"] = kato_max;
  r.notes.push_back(
      "dyadic_L2/interp are 0 at the top h (no partner); kato is the raw "
      "tracked norm sup_t ||u^h-u||_Hs + 2^h ||u^h-u||_H(s-1), recorded "
      "without a threshold");
  r.pass = ok && c_all <= 50.0;
  return r;
}

ExperimentResult exp_continuous_dependence(const HyperbolicSystem& sys,
                                           const Field& u0,
                                           const HarnessConfig& cfg) {
  ExperimentResult r;
  r.name = "continuous_dependence";
  const Field w = borderline_field(u0.grid, sys.components, cfg.s,
                                   derive_seed(cfg.seed, "cdep-w"));
  SolveConfig sc = rk4_config(cfg, u0.grid, 0.1);
  sc.store_states_every = 1;
  sc.inner_dt =
      sc.cfl_fraction / (u0.grid.n * (linf_norm(u0) + linf_norm(w)));
  ParaConfig split = sc.para;
  split.gap = 2;  // recorded split uses the active narrow-gap decomposition
  base_parameters(r, cfg, u0.grid, sc);
  r.parameters["system"] = sys.name;
  r.parameters["split_gap"] = std::to_string(split.gap);
  r.parameters["w_hs"] = format_double(sobolev_norm(w, cfg.s));
  r.parameters["inner_dt"] = format_double(sc.inner_dt);
  r.columns = {"j", "d_Hs", "env_l2", "split_LH", "split_HL", "split_HH"};
  r.tolerance =
      "sup-in-time H^s distances strictly decreasing with d6 <= d1/16; data "
      "envelope l2 distances strictly decreasing with e6 <= e1/8";

  const Trajectory base = solve(sys, u0, sc);
  bool ok = !base.blown_up;
  const double delta = 0.25;
  const FrequencyEnvelope env0 = sharp_envelope(u0, cfg.s, delta);

  std::vector<double> d, e;
  for (int j = 1; j <= 6; ++j) {
    Field uj0 = u0;
    const double scale = std::ldexp(1.0, -j);
    axpy(scale, w, uj0);
    const Trajectory tj = solve(sys, uj0, sc);
    if (tj.blown_up) ok = false;
    const double dj = sup_distance(
        base, tj, [&](const Field& f) { return sobolev_norm(f, cfg.s); });
    const double ej =
        envelope_l2_distance(sharp_envelope(uj0, cfg.s, delta), env0);
    const ParaParts parts = para_decompose(scale * w, u0, split);
    d.push_back(dj);
    e.push_back(ej);
    r.rows.push_back({static_cast<double>(j), dj, ej,
                      l2_norm(parts.low_high), l2_norm(parts.high_low),
                      l2_norm(parts.high_high)});
  }
  bool dec_d = true, dec_e = true;
  for (std::size_t i = 1; i < d.size(); ++i) {
    dec_d = dec_d && d[i] < d[i - 1];
    dec_e = dec_e && e[i] < e[i - 1];
  }
  r.fitted["d1"] = d.front();
  r.fitted["d6"] = d.back();
  r.fitted["e1"] = e.front();
  r.fitted["e6"] = e.back();
  r.pass = ok && dec_d && dec_e && d.back() <= d.front() / 16.0 &&
           e.back() <= e.front() / 8.0;
  return r;
}

ExperimentResult exp_continuation(const HarnessConfig& cfg) {
  ExperimentResult r;
  r.name = "continuation";
  const HyperbolicSystem& sys = system_registry("burgers");
  const double kappa = 0.011;
  const std::vector<int> grids = {128, 256, 512};

  SolveConfig sc = cfg.solve;
  sc.scheme = Scheme::euler_reg;
  sc.T = 1.05;
  sc.s = cfg.s;
  sc.monitor_every = 1;
  sc.store_states_every = 0;
  r.parameters["system"] = sys.name;
  r.parameters["kappa"] = format_double(kappa);
  r.parameters["grids"] = "128,256,512";
  r.parameters["T"] = format_double(sc.T);
  r.parameters["s"] = format_double(cfg.s);
  r.parameters["profile"] = profile_name(sc.para.profile);
  r.seed = cfg.seed;
  r.columns = {"n", "eps", "t_detect", "intB_detect", "spearman"};
  r.tolerance =
      "detection times increase with resolution inside [0.9, 1); integrated B "
      "at detection increases; Spearman(Hs, intB) >= 0.99 per grid";

  bool ok = true;
  double prev_t = 0.0, prev_ib = 0.0, rho_min = 1.0;
  for (int n : grids) {
    const GridSpec g(1, n);
    const Field u0 =
        Field::from_function(g, 1, [](double x, int) { return std::sin(x); });
    sc.epsilon = 16.0 / (static_cast<double>(n) * n);
    const double cut = n / 4.0;
    // Detection threshold tied to the regularization ceiling of the grid:
    // modes below the cutoff can carry at most (1+cut^2)^(s/2) ||u||_L2 of
    // H^s mass, and kappa sets the saturation fraction that counts as gone.
    sc.blowup_factor = kappa *
                       std::pow(1.0 + cut * cut, 0.5 * cfg.s) * l2_norm(u0) /
                       sobolev_norm(u0, cfg.s);
    const Trajectory traj = solve(sys, u0, sc);
    if (!traj.blown_up) {
      ok = false;
      r.notes.push_back("grid " + std::to_string(n) +
                        ": no detection before T");
    }
    std::vector<double> hs, ib;
    for (const TrajectorySample& smp : traj.diag) {
      if (!std::isfinite(smp.hs)) break;
      hs.push_back(smp.hs);
      ib.push_back(smp.intB);
    }
    const double rho = spearman(hs, ib);
    const double t_det = traj.blown_up ? traj.blowup_time : -1.0;
    const double ib_det = traj.diag.back().intB;
    r.rows.push_back({static_cast<double>(n), sc.epsilon, t_det, ib_det, rho});
    ok = ok && t_det >= 0.9 && t_det < 1.0 && t_det > prev_t &&
         ib_det > prev_ib && rho >= 0.99;
    prev_t = t_det;
    prev_ib = ib_det;
    rho_min = std::min(rho_min, rho);
    r.fitted["t_" + std::to_string(n)] = t_det;
  }
  r.fitted["spearman_min"] = rho_min;
  r.pass = ok;
  return r;
}

ExperimentResult exp_inequality_suites(const HarnessConfig& cfg) {
  ExperimentResult r;
  r.name = "inequality_suites";
  ParaConfig pc = cfg.solve.para;
  pc.gap = 2;
  RandomFieldSpec spec;
  spec.decay = 4.0;
  const int trials = 200;

  r.parameters["gap"] = std::to_string(pc.gap);
  r.parameters["decay"] = format_double(spec.decay);
  r.parameters["trials"] = std::to_string(trials);
  r.parameters["grids"] = "64,128,256";
  r.parameters["s"] = format_double(cfg.s);
  r.parameters["commutator_profile"] = "smooth";
  r.seed = cfg.seed;
  r.columns = {"suite", "n", "trial", "value"};
  r.tolerance =
      "suite 1 (low-high/remainder product bound) <= 4 and stable within 2x "
      "across grids; suite 2 (commutator) <= 8 and stable within 2x; suite 3 "
      "(Moser) <= 10; suite 4 (energy audit) <= 20; suite 5 (constant "
      "coefficient L2 drift) <= 1e-8";
  r.notes.push_back(
      "suite ids: 1 product bounds, 2 commutator, 3 Moser composition, 4 "
      "paradifferential energy audit, 5 constant-coefficient conservation");

  const std::vector<int> grids = {64, 128, 256};
  std::vector<double> cm_by_n, comm_by_n;
  for (int n : grids) {
    const GridSpec g(1, n);
    std::mt19937_64 master(derive_seed(cfg.seed, "ineq", n));
    double cm = 0.0, comm = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
      const Field f = random_field(g, 1, master(), spec);
      const Field h = random_field(g, 1, master(), spec);
      const ParaParts parts = para_decompose(f, h, pc);
      const double den_f = linf_norm(f) * l2_norm(h);
      const double den_h = linf_norm(h) * l2_norm(f);
      const double ratio =
          std::max({l2_norm(parts.low_high) / den_f,
                    l2_norm(parts.high_low) / den_h,
                    l2_norm(parts.high_high) / den_f});
      r.rows.push_back({1.0, static_cast<double>(n),
                        static_cast<double>(trial), ratio});
      cm = std::max(cm, ratio);

      const int top = g.envelope_top();
      const int k = 2 + static_cast<int>(master() % (top - 1));
      const CommutatorReport rep = commutator_check(f, h, k, Profile::smooth);
      r.rows.push_back({2.0, static_cast<double>(n),
                        static_cast<double>(trial), rep.ratio});
      comm = std::max(comm, rep.ratio);
    }
    cm_by_n.push_back(cm);
    comm_by_n.push_back(comm);
  }
  const auto spread = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
  };

  const GridSpec g256(1, 256);
  std::mt19937_64 master(derive_seed(cfg.seed, "ineq-fine"));
  double moser_max = 0.0;
  const std::vector<std::function<double(double)>> maps = {
      [](double v) { return std::sin(v); },
      [](double v) { return v * v; },
      [](double v) { return v / (1.0 + v * v); }};
  for (std::size_t mi = 0; mi < maps.size(); ++mi)
    for (int trial = 0; trial < 50; ++trial) {
      const Field u =
          normalize_linf(random_field(g256, 1, master(), spec), 1.0);
      const MoserReport rep = moser_check(maps[mi], u, cfg.s);
      r.rows.push_back({3.0, 256.0,
                        static_cast<double>(mi * 50 + trial), rep.ratio});
      moser_max = std::max(moser_max, rep.ratio);
    }

  const HyperbolicSystem& burgers = system_registry("burgers");
  double audit_max = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Field u =
        normalize_linf(random_field(g256, 1, master(), spec), 1.0);
    const Field w = random_field(g256, 1, master(), spec);
    const Field pw = apply_paradiff(burgers, u, w, pc);
    const double b = control_params(u).B;
    const double wl2 = l2_norm(w);
    const double ratio =
        std::fabs(2.0 * l2_inner(w, pw)) / (b * wl2 * wl2);
    r.rows.push_back({4.0, 256.0, static_cast<double>(trial), ratio});
    audit_max = std::max(audit_max, ratio);
  }

  HyperbolicSystem unit;
  unit.name = "unit_advection";
  unit.dim = 1;
  unit.components = 1;
  unit.coeff = [](const double*, double* out) { out[0] = 1.0; };
  unit.coeff_jacobian = [](const double*, const double*, double* out) {
    out[0] = 0.0;
  };
  RandomFieldSpec low_spec = spec;
  low_spec.max_shell = 5;
  const Field w0 = random_field(g256, 1, derive_seed(cfg.seed, "ineq-cons"),
                                low_spec);
  SolveConfig sc = rk4_config(cfg, g256, 0.5);
  sc.inner_dt = 5e-4;
  const Trajectory traj = solve(unit, w0, sc);
  double drift = 0.0;
  const double l2_0 = traj.diag.front().l2;
  for (const TrajectorySample& smp : traj.diag)
    drift = std::max(drift, std::fabs(smp.l2 - l2_0) / l2_0);
  r.rows.push_back({5.0, 256.0, 0.0, drift});

  const double cm_max = *std::max_element(cm_by_n.begin(), cm_by_n.end());
  const double comm_max =
      *std::max_element(comm_by_n.begin(), comm_by_n.end());
  r.fitted["cm_max"] = cm_max;
  r.fitted["cm_spread"] = spread(cm_by_n);
  r.fitted["comm_max"] = comm_max;
  r.fitted["comm_spread"] = spread(comm_by_n);
  r.fitted["moser_max"] = moser_max;
  r.fitted["audit_max"] = audit_max;
  r.fitted["conservation_drift"] = drift;
  r.pass = cm_max <= 4.0 && r.fitted["cm_spread"] <= 2.0 && comm_max <= 8.0 &&
           r.fitted["comm_spread"] <= 2.0 && moser_max <= 10.0 &&
           audit_max <= 20.0 && drift <= 1e-8;
  return r;
}

std::string write_experiment(const ExperimentResult& r,
                             const std::string& out_dir,
                             bool emit_plotscript) {
  const std::string path = out_dir + "/" + r.name + ".csv";
  std::vector<std::string> comments;
  comments.push_back("# experiment: " + r.name);
  comments.push_back(std::string("# pass: ") + (r.pass ? "true" : "false"));
  comments.push_back("# tolerance: " + r.tolerance);
  comments.push_back("# seed: " + std::to_string(r.seed));
  for (const auto& kv : r.parameters)
    comments.push_back("# parameter " + kv.first + " = " + kv.second);
  for (const auto& kv : r.fitted)
    comments.push_back("# fitted " + kv.first + " = " +
                       format_double(kv.second));
  for (const std::string& note : r.notes)
    comments.push_back("# note: " + note);
  write_csv(path, comments, r.columns, r.rows);
  if (emit_plotscript && r.columns.size() >= 2 && !r.rows.empty())
    write_plotscript(path, r.columns);
  return path;
}

void write_summary(const std::vector<ExperimentResult>& results,
                   const std::string& out_dir) {
  nlohmann::json root;
  const std::string path = out_dir + "/summary.json";
  {
    std::ifstream in(path);
    if (in) {
      try {
        in >> root;
      } catch (const nlohmann::json::exception&) {
        root = nlohmann::json::object();
      }
    }
  }
  if (!root.is_object()) root = nlohmann::json::object();
  if (!root.contains("experiments") || !root["experiments"].is_object())
    root["experiments"] = nlohmann::json::object();
  for (const ExperimentResult& r : results) {
    nlohmann::json e;
    e["pass"] = r.pass;
    e["tolerance"] = r.tolerance;
    e["seed"] = r.seed;
    e["parameters"] = r.parameters;
    e["fitted"] = r.fitted;
    e["notes"] = r.notes;
    root["experiments"][r.name] = std::move(e);
  }
  ensure_directory(out_dir);
  atomic_write_text(path, root.dump(2) + "\n");
}

std::vector<std::string> experiment_names() {
  return {"energy_growth",         "uniqueness",   "regularized_family",
          "continuous_dependence", "continuation", "inequality_suites"};
}

namespace {

Field standard_datum(const GridSpec& g, int components) {
  if (g.dim == 1)
    return Field::from_function(g, components, [](double x, int c) {
      return c == 0 ? std::sin(x) : 0.5 * std::cos(x);
    });
  return Field::from_function2(g, components, [](double x, double y, int c) {
    return c == 0 ? std::sin(x) + 0.5 * std::sin(y) : 0.5 * std::cos(x);
  });
}

// Rough-tail datum for the regularized family: a smooth carrier plus two
// small high modes (kept only when the grid resolves them).
Field rough_datum(const GridSpec& g, int components) {
  const int nyq = g.nyquist();
  return Field::from_function(g, components, [&](double x, int c) {
    if (c != 0) return 0.5 * std::cos(x);
    double v = std::sin(x);
    if (nyq > 17) v += 0.05 * std::sin(17.0 * x);
    if (nyq > 53) v += 0.01 * std::sin(53.0 * x);
    return v;
  });
}

}  // namespace

ExperimentResult run_experiment(const std::string& name,
                                const HarnessConfig& cfg) {
  if (name == "continuation") return exp_continuation(cfg);
  if (name == "inequality_suites") return exp_inequality_suites(cfg);

  const HyperbolicSystem& sys =
      system_registry(cfg.grid.dim == 1 ? "burgers" : "burgers2d");
  if (name == "energy_growth")
    return exp_energy_growth(sys, standard_datum(cfg.grid, sys.components),
                             cfg);
  if (name == "uniqueness") {
    RandomFieldSpec spec;
    // Rough relative to the datum so the perturbation rides the steepening
    // gradient; smoother profiles can stay below their initial distance over
    // the whole horizon, which fits no exponential constant.
    spec.decay = 3.0;
    const Field pert = normalize_hs(
        random_field(cfg.grid, sys.components,
                     derive_seed(cfg.seed, "uniqueness-pert"), spec),
        cfg.s, 1.0);
    return exp_uniqueness(sys, standard_datum(cfg.grid, sys.components), pert,
                          cfg);
  }
  if (name == "regularized_family") {
    if (cfg.grid.dim != 1)
      throw InvalidArgument("regularized_family: 1D experiment");
    return exp_regularized_family(sys, rough_datum(cfg.grid, sys.components),
                                  cfg);
  }
  if (name == "continuous_dependence")
    return exp_continuous_dependence(
        sys, standard_datum(cfg.grid, sys.components), cfg);
  throw InvalidArgument("unknown experiment '" + name + "'");
}

}  // namespace parahyp
