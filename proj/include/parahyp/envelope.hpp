#pragma once

#include "parahyp/solver.hpp"

namespace parahyp {

// Slowly varying majorant of the dyadic H^s shell norms of a field:
//   dominance:      ||P_k u||_{H^s} <= c_k
//   slow variation: c_k <= 2^(delta_up |j-k|) c_j  (delta_dn for k < j)
// Asymmetric slack (delta_dn != delta_up) tightens the high-frequency tail.
struct FrequencyEnvelope {
  double s = 3.0;
  double delta_dn = 0.25;  // slack toward lower shells (j < k)
  double delta_up = 0.25;  // slack toward higher shells (j > k)
  std::vector<double> c;

  int k_max() const { return static_cast<int>(c.size()) - 1; }
};

// ||P_j u||_{H^s} for j = 0..envelope_top(grid).
std::vector<double> shell_norms(const Field& u, double s,
                                Profile profile = Profile::sharp);

// c_k = max_j 2^(-delta |j-k|) a_j over the measured shells: the least
// envelope above the shell norms. delta in (0,1).
FrequencyEnvelope sharp_envelope(const Field& u, double s, double delta,
                                 Profile profile = Profile::sharp);
// Asymmetric variant: weight 2^(-delta_dn (k-j)) for j < k and
// 2^(-delta_up (j-k)) for j > k.
FrequencyEnvelope sharp_envelope(const Field& u, double s, double delta_dn,
                                 double delta_up, Profile profile);
// Sequence-level constructor (no field), same maximization.
FrequencyEnvelope envelope_from_shell_norms(const std::vector<double>& a,
                                            double s, double delta_dn,
                                            double delta_up);

// Energy of the field in shells above envelope_top (reported so truncation
// at the analysis band is never silent).
double unresolved_shell_mass(const Field& u, double s,
                             Profile profile = Profile::sharp);

// ( sum_{m >= h} c_m^2 )^(1/2); 0 when h exceeds the last shell.
double tail(const FrequencyEnvelope& env, int h);

// l2 distance of two envelopes with identical (s, delta, length).
double envelope_l2_distance(const FrequencyEnvelope& a,
                            const FrequencyEnvelope& b);

struct PropagationReport {
  double max_ratio = 0.0;           // fitted propagation constant
  std::vector<double> shell_ratio;  // max over time, per shell
  int shells = 0;
  int samples = 0;
};

// Along the trajectory's stored states, measures
//   ||P_k u(t)||_{H^s} / ( c_k * 2^(-n_hi * max(k - h, 0)) )
// against the envelope of the initial state; h < 0 disables the
// high-frequency penalty factor.
PropagationReport propagation_audit(const Trajectory& traj,
                                    const FrequencyEnvelope& env0, int h = -1,
                                    double n_hi = 2.0,
                                    Profile profile = Profile::sharp);

}  // namespace parahyp
