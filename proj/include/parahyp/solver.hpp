#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "parahyp/model.hpp"

namespace parahyp {

enum class Scheme { euler_reg, iteration, parabolic, galerkin };

Scheme scheme_from_string(const std::string& s);
std::string to_string(Scheme s);

struct SolveConfig {
  Scheme scheme = Scheme::euler_reg;
  double epsilon = 1e-3;  // outer time step (and regularization scale) for S1
  double T = 0.5;         // horizon
  double s = 3.0;         // working Sobolev index
  double inner_dt = 0.0;  // RK4 step for iteration/parabolic/galerkin; 0=auto
  double nu = 1e-4;       // parabolic viscosity
  int diss_order = 1;     // parabolic dissipation (-Laplacian)^diss_order
  int h_cut = 6;          // Galerkin shell cutoff: evolve S_{<h_cut} modes
  ParaConfig para;
  int monitor_every = 1;       // diagnostics cadence, in outer steps
  int store_states_every = 0;  // state snapshots cadence; 0 = ~64 per run
  double blowup_factor = 1e6;  // stop when H^s exceeds this multiple of start
  int max_iterations = 12;     // fixed-point iteration budget
  double contraction_rtol = 1e-10;  // stop when d_n <= rtol * ||u0||_L2
  double cfl_fraction = 0.25;       // auto inner_dt = cfl/(N * max|A|)
};

struct TrajectorySample {
  double t;
  double hs;      // H^s norm (total across components)
  double l2;      // L2 norm (total)
  double A, B;    // control parameters
  double intB;    // trapezoid integral of B over [0, t]
  std::vector<double> comp_l2;  // per-component L2 norms
};

struct Trajectory {
  GridSpec grid;
  double s = 3.0;
  std::vector<TrajectorySample> diag;  // dense (every monitor_every steps)
  std::vector<double> state_times;     // sparse state snapshots
  std::vector<Field> states;
  bool blown_up = false;
  double blowup_time = -1.0;

  const Field& final_state() const { return states.back(); }
  double final_time() const { return state_times.back(); }
};

// One regularize-then-advance step: u_reg = P_{<eps^-1/2} u,
// u_next = u_reg + eps * N(u_reg). The report carries the per-step audits.
struct StepReport {
  double reg_hs1_over_scale;  // ||u_reg||_{H^(s+1)} / (eps^-1/2 ||u||_{H^s})
  double energy_ratio;        // ||u_next||_{H^s} / ||u||_{H^s}
  double reg_l2_dist;         // ||u_reg - u||_{L2}
  double defect_l2;           // ||u_next - u - eps N(u)||_{L2}
  double data_hs;             // ||u||_{H^s} entering the step
};
std::pair<Field, StepReport> euler_reg_step(const HyperbolicSystem& sys,
                                            const Field& u, double eps,
                                            const SolveConfig& cfg);

// Advances u0 with the configured scheme. Blowup (non-finite samples or
// H^s > blowup_factor * initial) terminates the trajectory with the flag set
// instead of throwing, so callers can study the approach to breakdown.
Trajectory solve(const HyperbolicSystem& sys, const Field& u0,
                 const SolveConfig& cfg);

struct ContractionReport {
  std::vector<double> d;       // sup-in-time L2 distances between iterates
  std::vector<double> ratios;  // d_n / d_{n-1}
  double kappa = 0.0;          // max ratio over n >= 2 (round-off guarded)
  int iterations = 0;
  bool converged = false;
};

// Fixed-point iteration: each pass integrates the linear flow
//   w_t = apply_paradiff(u_prev(t), w) + perturbative_F(u_prev(t))
// from u0 with RK4, freezing the previous iterate (linear interpolation in
// time between inner steps). Throws NonContraction when the iterate
// distances grow for two consecutive passes.
std::pair<Trajectory, ContractionReport> iteration_solve(
    const HyperbolicSystem& sys, const Field& u0, const SolveConfig& cfg);

// u_t = N(u) - nu (-Laplacian)^diss_order u, dissipative part applied by an
// exact integrating factor inside RK4 (zero system: exact heat multiplier).
Trajectory parabolic_solve(const HyperbolicSystem& sys, const Field& u0,
                           const SolveConfig& cfg);

// u_t = S_{<h_cut} N( S_{<h_cut} u ); modes outside the cutoff never change.
Trajectory galerkin_solve(const HyperbolicSystem& sys, const Field& u0,
                          const SolveConfig& cfg);

// Gronwall audit: smallest C with log(hs(t)/hs(0)) <= C * intB(t) at every
// sample (0 when the norm never grows).
double gronwall_constant(const Trajectory& traj);

// Exact solution of scalar 1D u_t = u u_x by tracing characteristics
// x = x0 - t u0(x0), u = u0(x0); valid until T* = 1 / max u0'.
struct CharacteristicsOracle {
  std::function<double(double)> u0;
  std::function<double(double)> du0;

  double shock_time(int scan_points = 4096) const;
  // Newton with tolerance 1e-12 (bisection fallback); t must be < T*.
  double eval_point(double x, double t) const;
  Field evaluate(const GridSpec& g, double t) const;
};

}  // namespace parahyp
