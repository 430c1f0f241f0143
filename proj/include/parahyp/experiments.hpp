#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "parahyp/envelope.hpp"
#include "parahyp/solver.hpp"

namespace parahyp {

// A measured, reproducible check. pass is a pure function of the recorded
// rows and the stated thresholds, so it can be re-derived from the CSV alone;
// all fitted constants use the max-over-samples convention.
struct ExperimentResult {
  std::string name;
  std::map<std::string, std::string> parameters;
  std::map<std::string, double> fitted;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  bool pass = false;
  std::string tolerance;  // human-readable statement of the pass rule
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
};

struct HarnessConfig {
  GridSpec grid{1, 256};
  double s = 3.0;
  std::uint64_t seed = 42;
  SolveConfig solve;  // base scheme settings; experiments override T/epsilon
};

// Exponential energy growth: one constant C with log(Hs(t)/Hs(0)) <= C intB
// across the amplitude family {0.25, 0.5, 1, 1.5, 2} * u0, spread <= 4x.
ExperimentResult exp_energy_growth(const HyperbolicSystem& sys,
                                   const Field& u0, const HarnessConfig& cfg);

// L2 distance growth of perturbed runs: fitted constant stable within 2x
// across perturbation scales {1e-2, 1e-3, 1e-4}; weaker-norm variant at
// sigma = s-1 recorded.
ExperimentResult exp_uniqueness(const HyperbolicSystem& sys, const Field& u0,
                                const Field& perturbation,
                                const HarnessConfig& cfg);

// Runs from frequency-truncated data P_{<2^h} u0, h in h_range: one constant
// covers the high-frequency growth, the dyadic-difference decay, and the
// convergence-to-finest bounds; interpolated-norm differences and the
// tracked combination ||u^h-u||_{H^s} + 2^h ||u^h-u||_{H^(s-1)} recorded.
ExperimentResult exp_regularized_family(const HyperbolicSystem& sys,
                                        const Field& u0,
                                        const HarnessConfig& cfg, int h_lo = 2,
                                        int h_hi = 6);

// Data u0 + 2^-j w for a fixed rough borderline w: sup-in-time H^s distance
// to the unperturbed run strictly decreasing with d_6 <= d_1/16, and data
// envelopes converging in l2 (strictly decreasing, e_6 <= e_1/8).
ExperimentResult exp_continuous_dependence(const HyperbolicSystem& sys,
                                           const Field& u0,
                                           const HarnessConfig& cfg);

// Runs toward gradient blowup on grids {128, 256, 512}: detection times
// increase with resolution inside [0.9, 1), integrated B at detection grows,
// and H^s growth is rank-correlated (>= 0.99) with integrated B.
ExperimentResult exp_continuation(const HarnessConfig& cfg);

// Randomized inequality batches: low-high and remainder product bounds,
// commutators, Moser composition ratios, and a discrete energy audit of the
// low-high evolution with frozen coefficients.
ExperimentResult exp_inequality_suites(const HarnessConfig& cfg);

// Writes <out_dir>/<name>.csv (plus optional plot script); returns csv path.
std::string write_experiment(const ExperimentResult& r,
                             const std::string& out_dir,
                             bool emit_plotscript = false);

// Appends/creates <out_dir>/summary.json from the given results.
void write_summary(const std::vector<ExperimentResult>& results,
                   const std::string& out_dir);

std::vector<std::string> experiment_names();

// Dispatch by name; the standard datum for 1D experiments is sin x unless
// the experiment documents otherwise.
ExperimentResult run_experiment(const std::string& name,
                                const HarnessConfig& cfg);

}  // namespace parahyp
