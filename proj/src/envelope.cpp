#include "parahyp/envelope.hpp"

#include <cmath>

#include "parahyp/norms.hpp"
#include "parahyp/spectral.hpp"

namespace parahyp {

std::vector<double> shell_norms(const Field& u, double s, Profile profile) {
  const SpectralField F = transform(u);
  const int top = u.grid.envelope_top();
  std::vector<double> a(top + 1, 0.0);
  for (int k = 0; k <= top; ++k)
    a[k] = sobolev_norm(lp_project(F, k, profile), s);
  return a;
}

FrequencyEnvelope envelope_from_shell_norms(const std::vector<double>& a,
                                            double s, double delta_dn,
                                            double delta_up) {
  if (a.empty()) throw InvalidArgument("envelope: no shell norms");
  if (!(delta_dn > 0.0 && delta_dn < 1.0 && delta_up > 0.0 && delta_up < 1.0))
    throw InvalidArgument("envelope: delta must lie in (0, 1)");
  FrequencyEnvelope env;
  env.s = s;
  env.delta_dn = delta_dn;
  env.delta_up = delta_up;
  const int n = static_cast<int>(a.size());
  env.c.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
      const double delta = j < k ? delta_dn : delta_up;
      best = std::max(best, std::exp2(-delta * std::abs(j - k)) * a[j]);
    }
    env.c[k] = best;
  }
  return env;
}

FrequencyEnvelope sharp_envelope(const Field& u, double s, double delta_dn,
                                 double delta_up, Profile profile) {
  return envelope_from_shell_norms(shell_norms(u, s, profile), s, delta_dn,
                                   delta_up);
}

FrequencyEnvelope sharp_envelope(const Field& u, double s, double delta,
                                 Profile profile) {
  return sharp_envelope(u, s, delta, delta, profile);
}

double unresolved_shell_mass(const Field& u, double s, Profile profile) {
  const SpectralField F = transform(u);
  const int top = shell_top(u.grid);
  double mass_sq = 0.0;
  for (int k = u.grid.envelope_top() + 1; k <= top; ++k) {
    const double nk = sobolev_norm(lp_project(F, k, profile), s);
    mass_sq += nk * nk;
  }
  return std::sqrt(mass_sq);
}

double tail(const FrequencyEnvelope& env, int h) {
  double sq = 0.0;
  for (int m = std::max(h, 0); m <= env.k_max(); ++m) sq += env.c[m] * env.c[m];
  return std::sqrt(sq);
}

double envelope_l2_distance(const FrequencyEnvelope& a,
                            const FrequencyEnvelope& b) {
  if (a.c.size() != b.c.size() || a.s != b.s || a.delta_dn != b.delta_dn ||
      a.delta_up != b.delta_up)
    throw InvalidArgument(
        "envelope_l2_distance: envelopes must share s, delta and length");
  double sq = 0.0;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    const double d = a.c[i] - b.c[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

PropagationReport propagation_audit(const Trajectory& traj,
                                    const FrequencyEnvelope& env0, int h,
                                    double n_hi, Profile profile) {
  if (traj.states.empty())
    throw InvalidArgument("propagation_audit: trajectory has no states");
  const int top = traj.grid.envelope_top();
  if (env0.k_max() < top)
    throw InvalidArgument("propagation_audit: envelope too short for grid");
  PropagationReport rep;
  rep.shells = top + 1;
  rep.samples = static_cast<int>(traj.states.size());
  rep.shell_ratio.assign(top + 1, 0.0);
  for (const Field& u : traj.states) {
    const std::vector<double> a = shell_norms(u, env0.s, profile);
    for (int k = 0; k <= top; ++k) {
      double floor_k = env0.c[k];
      if (h >= 0 && k > h) floor_k *= std::exp2(-n_hi * (k - h));
      const double r = floor_k > 0.0 ? a[k] / floor_k : 0.0;
      rep.shell_ratio[k] = std::max(rep.shell_ratio[k], r);
    }
  }
  for (double r : rep.shell_ratio) rep.max_ratio = std::max(rep.max_ratio, r);
  return rep;
}

}  // namespace parahyp
