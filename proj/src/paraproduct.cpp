#include "parahyp/paraproduct.hpp"

#include <cmath>

#include "parahyp/kernels.hpp"
#include "parahyp/norms.hpp"

namespace parahyp {

namespace {

// Padded samples of every shell of F: shell_fine[k][c] are the fine-grid
// samples of P_k F. The running prefix sum of these is S_{<m} F, so one pass
// over k yields every low-pass factor the shell sum needs.
std::vector<std::vector<std::vector<double>>> padded_shells(
    const SpectralField& F, Profile profile) {
  const int K = shell_top(F.grid);
  std::vector<std::vector<std::vector<double>>> out(K + 1);
  for (int k = 0; k <= K; ++k)
    out[k] = pad_to_fine(lp_project(F, k, profile)).values;
  return out;
}

}  // namespace

Field para_lowhigh(const Field& f, const Field& g, const ParaConfig& cfg) {
  cfg.validate();
  require_same_grid(f.grid, g.grid, "para_lowhigh");
  const int mf = f.components, mg = g.components;
  if (mf != mg && mf != 1 && mg != 1)
    throw ComponentMismatch(
        "para_lowhigh: components must match or broadcast from 1");
  const int m = std::max(mf, mg);

  const SpectralField Ff = transform(f);
  const SpectralField Fg = transform(g);
  const int K = shell_top(f.grid);
  const GridSpec fine(f.grid.dim, 2 * f.grid.n);
  const std::size_t fine_total = fine.total();

  const auto g_shells = padded_shells(Fg, cfg.profile);
  const auto f_shells = padded_shells(Ff, cfg.profile);

  // Running S_{<m} f in fine samples, advanced as k climbs; the product with
  // each P_k g accumulates on the fine grid so a single truncation at the end
  // keeps the trichotomy complement exact.
  std::vector<std::vector<double>> lowf(
      mf, std::vector<double>(fine_total, 0.0));
  std::vector<std::vector<double>> acc(m,
                                       std::vector<double>(fine_total, 0.0));
  int have = 0;  // shells of f folded into lowf so far: S_{<have}
  for (int k = 0; k <= K; ++k) {
    const int want = k - cfg.gap;
    while (have < want && have <= K) {
      for (int c = 0; c < mf; ++c)
        kernels::active().axpy(1.0, f_shells[have][c].data(), lowf[c].data(),
                               fine_total);
      ++have;
    }
    if (want <= 0) continue;
    for (int c = 0; c < m; ++c)
      kernels::active().mul_add(lowf[mf == 1 ? 0 : c].data(),
                                g_shells[k][mg == 1 ? 0 : c].data(),
                                acc[c].data(), fine_total);
  }

  PaddedSamples p{fine, m, std::move(acc)};
  return inverse_transform(truncate_from_fine(p, f.grid));
}

Field para_highhigh(const Field& f, const Field& g, const ParaConfig& cfg) {
  Field r = dealiased_product(f, g);
  r -= para_lowhigh(f, g, cfg);
  r -= para_lowhigh(g, f, cfg);
  return r;
}

ParaParts para_decompose(const Field& f, const Field& g,
                         const ParaConfig& cfg) {
  ParaParts parts{para_lowhigh(f, g, cfg), para_lowhigh(g, f, cfg),
                  dealiased_product(f, g)};
  parts.high_high -= parts.low_high;
  parts.high_high -= parts.high_low;
  return parts;
}

CommutatorReport commutator_check(const Field& f, const Field& g, int k,
                                  Profile profile) {
  require_same_grid(f.grid, g.grid, "commutator_check");
  if (!shell_resolved(f.grid, k))
    throw InvalidArgument("commutator_check: shell " + std::to_string(k) +
                          " not resolved on this grid");
  const Field fg = dealiased_product(f, g);
  const Field pk_fg = lp_project(fg, k, profile).field;
  const Field f_pkg = dealiased_product(f, lp_project(g, k, profile).field);

  CommutatorReport rep;
  rep.k = k;
  rep.comm_l2 = l2_norm(pk_fg - f_pkg);
  rep.grad_f_linf = control_params(f).B;
  rep.g_l2 = l2_norm(g);
  const double denom = rep.grad_f_linf * rep.g_l2;
  rep.ratio = denom > 0.0 ? std::ldexp(rep.comm_l2, k) / denom : 0.0;
  return rep;
}

}  // namespace parahyp
