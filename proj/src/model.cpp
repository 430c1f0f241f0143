#include "parahyp/model.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "parahyp/kernels.hpp"
#include "parahyp/norms.hpp"
#include "parahyp/spectral.hpp"

namespace parahyp {

namespace {

void require_compatible(const HyperbolicSystem& sys, const Field& u,
                        const char* where) {
  if (u.grid.dim != sys.dim)
    throw InvalidArgument(std::string(where) + ": field dim " +
                          std::to_string(u.grid.dim) + " does not match system '" +
                          sys.name + "' dim " + std::to_string(sys.dim));
  if (u.components != sys.components)
    throw ComponentMismatch(std::string(where) + ": field has " +
                            std::to_string(u.components) +
                            " components, system '" + sys.name + "' expects " +
                            std::to_string(sys.components));
}

// Fine-grid samples of the state and of all its first derivatives.
struct FineState {
  std::vector<std::vector<double>> u;                // m arrays
  std::vector<std::vector<std::vector<double>>> du;  // dim x m arrays
};

FineState fine_state(const SpectralField& F) {
  FineState fs;
  fs.u = pad_to_fine(F).values;
  fs.du.resize(F.grid.dim);
  for (int j = 0; j < F.grid.dim; ++j)
    fs.du[j] = pad_to_fine(derivative(F, j)).values;
  return fs;
}

// Pointwise A^j and G^j on the fine grid. Layout matches the system callback:
// slot (j*m + a)*m + b holds A^j_{ab}, slot (j*m + a)*m + c holds
// G^j_{ac} = sum_b dA^j_{ab}/du_c (d_j u)_b.
struct FineCoeffs {
  std::vector<std::vector<double>> A, G;
};

FineCoeffs eval_fine(const HyperbolicSystem& sys, std::size_t total,
                     const std::vector<std::vector<double>>& state,
                     const std::vector<std::vector<std::vector<double>>>& dstate) {
  const int m = sys.components, dim = sys.dim;
  const std::size_t mats = static_cast<std::size_t>(dim) * m * m;
  FineCoeffs ev;
  ev.A.assign(mats, std::vector<double>(total));
  ev.G.assign(mats, std::vector<double>(total, 0.0));
  std::vector<double> st(m), dir(m, 0.0), amat(mats), jmat(mats);
  for (std::size_t p = 0; p < total; ++p) {
    for (int c = 0; c < m; ++c) st[c] = state[c][p];
    sys.coeff(st.data(), amat.data());
    for (std::size_t i = 0; i < mats; ++i) ev.A[i][p] = amat[i];
    for (int c = 0; c < m; ++c) {
      dir[c] = 1.0;
      sys.coeff_jacobian(st.data(), dir.data(), jmat.data());
      dir[c] = 0.0;
      for (int j = 0; j < dim; ++j)
        for (int a = 0; a < m; ++a) {
          double acc = 0.0;
          for (int b = 0; b < m; ++b)
            acc += jmat[(static_cast<std::size_t>(j) * m + a) * m + b] *
                   dstate[j][b][p];
          ev.G[(static_cast<std::size_t>(j) * m + a) * m + c][p] += acc;
        }
    }
  }
  return ev;
}

// Coarse coefficient fields: fine evaluation truncated once. Every product in
// this translation unit reuses these so the splitting identities close.
struct CoeffFields {
  Field A, G;  // dim*m*m components each
};

CoeffFields coeff_fields(const HyperbolicSystem& sys, const Field& u) {
  const SpectralField Fu = transform(u);
  const GridSpec fine(u.grid.dim, 2 * u.grid.n);
  FineState fs = fine_state(Fu);
  FineCoeffs ev = eval_fine(sys, fine.total(), fs.u, fs.du);
  const int mats = sys.dim * sys.components * sys.components;
  PaddedSamples pa{fine, mats, std::move(ev.A)};
  PaddedSamples pg{fine, mats, std::move(ev.G)};
  return CoeffFields{inverse_transform(truncate_from_fine(pa, u.grid)),
                     inverse_transform(truncate_from_fine(pg, u.grid))};
}

Field component_field(const Field& f, int c) {
  Field out(f.grid, 1);
  out.values[0] = f.values[c];
  return out;
}

// out_a = truncate( sum over j,b of padA[(j,a,b)] * fs.du[j][b]
//                 + sum over j,c of padG[(j,a,c)] * fs.u[c] ), one truncation.
Field matvec_fine(const GridSpec& coarse, int dim, int m,
                  const std::vector<std::vector<double>>& padA,
                  const std::vector<std::vector<double>>* padG,
                  const FineState& fs) {
  const GridSpec fine(coarse.dim, 2 * coarse.n);
  const std::size_t total = fine.total();
  const auto& bk = kernels::active();
  std::vector<std::vector<double>> acc(m, std::vector<double>(total, 0.0));
  for (int j = 0; j < dim; ++j)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        const std::size_t slot = (static_cast<std::size_t>(j) * m + a) * m + b;
        bk.mul_add(padA[slot].data(), fs.du[j][b].data(), acc[a].data(), total);
        if (padG)
          bk.mul_add((*padG)[slot].data(), fs.u[b].data(), acc[a].data(),
                     total);
      }
  PaddedSamples p{fine, m, std::move(acc)};
  return inverse_transform(truncate_from_fine(p, coarse));
}

}  // namespace

Field apply_N(const HyperbolicSystem& sys, const Field& u) {
  require_compatible(sys, u, "apply_N");
  CoeffFields cf = coeff_fields(sys, u);
  const auto padA = pad_to_fine(transform(cf.A)).values;
  FineState fs = fine_state(transform(u));
  return matvec_fine(u.grid, sys.dim, sys.components, padA, nullptr, fs);
}

Field apply_linearized(const HyperbolicSystem& sys, const Field& u,
                       const Field& v) {
  require_compatible(sys, u, "apply_linearized");
  require_compatible(sys, v, "apply_linearized");
  require_same_grid(u.grid, v.grid, "apply_linearized");
  CoeffFields cf = coeff_fields(sys, u);
  const auto padA = pad_to_fine(transform(cf.A)).values;
  const auto padG = pad_to_fine(transform(cf.G)).values;
  FineState fs = fine_state(transform(v));
  return matvec_fine(u.grid, sys.dim, sys.components, padA, &padG, fs);
}

Field apply_paradiff(const HyperbolicSystem& sys, const Field& u,
                     const Field& w, const ParaConfig& cfg) {
  cfg.validate();
  require_compatible(sys, u, "apply_paradiff");
  require_compatible(sys, w, "apply_paradiff");
  require_same_grid(u.grid, w.grid, "apply_paradiff");

  const int m = sys.components, dim = sys.dim;
  const std::size_t mats = static_cast<std::size_t>(dim) * m * m;
  const int K = shell_top(u.grid);
  const GridSpec fine(u.grid.dim, 2 * u.grid.n);
  const std::size_t total = fine.total();
  const auto& bk = kernels::active();

  const SpectralField Fw = transform(w);
  std::vector<std::vector<std::vector<double>>> w_shells(K + 1);
  if (!cfg.drop_zeroth_order)
    for (int k = 0; k <= K; ++k)
      w_shells[k] = pad_to_fine(lp_project(Fw, k, cfg.profile)).values;
  std::vector<std::vector<std::vector<std::vector<double>>>> dw_shells(dim);
  for (int j = 0; j < dim; ++j) {
    const SpectralField Dw = derivative(Fw, j);
    dw_shells[j].resize(K + 1);
    for (int k = 0; k <= K; ++k)
      dw_shells[j][k] = pad_to_fine(lp_project(Dw, k, cfg.profile)).values;
  }

  // Advancing low-frequency coefficient samples. Under coeff_lowpass the low
  // factor is a prefix sum of padded shells of the truncated A and G fields;
  // under the argument quantizations the state prefix is re-fed through the
  // coefficient maps whenever it grows.
  const bool arg_based = cfg.quantization != Quantization::coeff_lowpass;
  std::vector<std::vector<std::vector<double>>> a_shells, g_shells;
  std::vector<std::vector<std::vector<double>>> u_shells;
  std::vector<std::vector<std::vector<std::vector<double>>>> du_shells(dim);
  if (arg_based) {
    const SpectralField Fu = transform(u);
    u_shells.resize(K + 1);
    for (int k = 0; k <= K; ++k)
      u_shells[k] = pad_to_fine(lp_project(Fu, k, cfg.profile)).values;
    for (int j = 0; j < dim; ++j) {
      const SpectralField Du = derivative(Fu, j);
      du_shells[j].resize(K + 1);
      for (int k = 0; k <= K; ++k)
        du_shells[j][k] = pad_to_fine(lp_project(Du, k, cfg.profile)).values;
    }
  } else {
    CoeffFields cf = coeff_fields(sys, u);
    const SpectralField FA = transform(cf.A);
    const SpectralField FG = transform(cf.G);
    a_shells.resize(K + 1);
    g_shells.resize(K + 1);
    for (int k = 0; k <= K; ++k) {
      a_shells[k] = pad_to_fine(lp_project(FA, k, cfg.profile)).values;
      g_shells[k] = pad_to_fine(lp_project(FG, k, cfg.profile)).values;
    }
  }

  FineState low;
  low.u.assign(m, std::vector<double>(total, 0.0));
  low.du.assign(dim, std::vector<std::vector<double>>(
                         m, std::vector<double>(total, 0.0)));
  FineCoeffs ev;
  if (arg_based) ev = eval_fine(sys, total, low.u, low.du);
  std::vector<std::vector<double>> lowA(mats,
                                        std::vector<double>(total, 0.0));
  std::vector<std::vector<double>> lowG(mats,
                                        std::vector<double>(total, 0.0));

  const int half_gap = (cfg.gap + 1) / 2;
  std::vector<std::vector<double>> acc(m, std::vector<double>(total, 0.0));
  int have = 0;
  bool stale = arg_based;  // arg quantizations contribute A(0) below the gap
  for (int k = 0; k <= K; ++k) {
    const int mlow = k - cfg.gap;
    while (have < mlow && have <= K) {
      if (arg_based) {
        for (int c = 0; c < m; ++c)
          bk.axpy(1.0, u_shells[have][c].data(), low.u[c].data(), total);
        for (int j = 0; j < dim; ++j)
          for (int c = 0; c < m; ++c)
            bk.axpy(1.0, du_shells[j][have][c].data(), low.du[j][c].data(),
                    total);
      } else {
        for (std::size_t i = 0; i < mats; ++i) {
          bk.axpy(1.0, a_shells[have][i].data(), lowA[i].data(), total);
          bk.axpy(1.0, g_shells[have][i].data(), lowG[i].data(), total);
        }
      }
      ++have;
      stale = true;
    }
    if (!arg_based && mlow <= 0) continue;
    if (arg_based && stale) {
      ev = eval_fine(sys, total, low.u, low.du);
      stale = false;
    }

    const std::vector<std::vector<double>>* useA = &lowA;
    const std::vector<std::vector<double>>* useG = &lowG;
    std::vector<std::vector<double>> dblA, dblG;
    if (arg_based) {
      useA = &ev.A;
      useG = &ev.G;
      if (cfg.quantization == Quantization::double_lowpass) {
        // Outer low-pass S_{<k-ceil(gap/2)} applied to the evaluated
        // coefficients, through the coarse representation.
        const int m2 = k - half_gap;
        auto outer = [&](const std::vector<std::vector<double>>& src) {
          PaddedSamples p{fine, static_cast<int>(mats), src};
          SpectralField S = truncate_from_fine(p, u.grid);
          S = shell_low_pass(S, m2, cfg.profile);
          return pad_to_fine(S).values;
        };
        dblA = outer(ev.A);
        dblG = outer(ev.G);
        useA = &dblA;
        useG = &dblG;
      }
    }

    for (int j = 0; j < dim; ++j)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          const std::size_t slot =
              (static_cast<std::size_t>(j) * m + a) * m + b;
          bk.mul_add((*useA)[slot].data(), dw_shells[j][k][b].data(),
                     acc[a].data(), total);
          if (!cfg.drop_zeroth_order)
            bk.mul_add((*useG)[slot].data(), w_shells[k][b].data(),
                       acc[a].data(), total);
        }
  }

  PaddedSamples p{fine, m, std::move(acc)};
  return inverse_transform(truncate_from_fine(p, u.grid));
}

Field perturbative_F(const HyperbolicSystem& sys, const Field& u,
                     const ParaConfig& cfg) {
  Field r = apply_N(sys, u);
  r -= apply_paradiff(sys, u, u, cfg);
  return r;
}

Field perturbative_F_displayed(const HyperbolicSystem& sys, const Field& u,
                               const ParaConfig& cfg) {
  cfg.validate();
  require_compatible(sys, u, "perturbative_F_displayed");
  const int m = sys.components, dim = sys.dim;
  CoeffFields cf = coeff_fields(sys, u);
  const SpectralField Fu = transform(u);

  std::vector<Field> du;
  for (int j = 0; j < dim; ++j)
    du.push_back(inverse_transform(derivative(Fu, j)));

  Field out(u.grid, m);
  for (int j = 0; j < dim; ++j)
    for (int a = 0; a < m; ++a) {
      Field row(u.grid, 1);
      for (int b = 0; b < m; ++b) {
        const int slot = (j * m + a) * m + b;
        const Field A_ab = component_field(cf.A, slot);
        const Field G_ab = component_field(cf.G, slot);
        const Field du_b = component_field(du[j], b);
        const Field u_b = component_field(u, b);
        row += para_highhigh(A_ab, du_b, cfg);
        row += para_lowhigh(du_b, A_ab, cfg);
        row -= para_lowhigh(G_ab, u_b, cfg);
      }
      kernels::active().axpy(1.0, row.values[0].data(), out.values[a].data(),
                             u.grid.total());
    }
  return out;
}

LinearizedRemainder linearized_remainder(const HyperbolicSystem& sys,
                                         const Field& u, const Field& v,
                                         const ParaConfig& cfg) {
  cfg.validate();
  require_compatible(sys, u, "linearized_remainder");
  require_compatible(sys, v, "linearized_remainder");
  require_same_grid(u.grid, v.grid, "linearized_remainder");
  const int m = sys.components, dim = sys.dim;
  CoeffFields cf = coeff_fields(sys, u);
  const SpectralField Fv = transform(v);
  std::vector<Field> dv;
  for (int j = 0; j < dim; ++j)
    dv.push_back(inverse_transform(derivative(Fv, j)));

  Field pi(u.grid, m);
  for (int j = 0; j < dim; ++j)
    for (int a = 0; a < m; ++a) {
      Field row(u.grid, 1);
      for (int b = 0; b < m; ++b) {
        const int slot = (j * m + a) * m + b;
        row += para_highhigh(component_field(cf.A, slot),
                             component_field(dv[j], b), cfg);
        row += para_highhigh(component_field(cf.G, slot),
                             component_field(v, b), cfg);
      }
      kernels::active().axpy(1.0, row.values[0].data(), pi.values[a].data(),
                             u.grid.total());
    }

  Field t = apply_linearized(sys, u, v);
  t -= apply_paradiff(sys, u, v, cfg);
  t -= pi;
  return LinearizedRemainder{std::move(pi), std::move(t)};
}

Field linearized_remainder_t_displayed(const HyperbolicSystem& sys,
                                       const Field& u, const Field& v,
                                       const ParaConfig& cfg) {
  cfg.validate();
  require_compatible(sys, u, "linearized_remainder_t_displayed");
  require_compatible(sys, v, "linearized_remainder_t_displayed");
  require_same_grid(u.grid, v.grid, "linearized_remainder_t_displayed");
  const int m = sys.components, dim = sys.dim;
  CoeffFields cf = coeff_fields(sys, u);
  const SpectralField Fv = transform(v);
  std::vector<Field> dv;
  for (int j = 0; j < dim; ++j)
    dv.push_back(inverse_transform(derivative(Fv, j)));

  Field out(u.grid, m);
  for (int j = 0; j < dim; ++j)
    for (int a = 0; a < m; ++a) {
      Field row(u.grid, 1);
      for (int b = 0; b < m; ++b) {
        const int slot = (j * m + a) * m + b;
        row += para_lowhigh(component_field(dv[j], b),
                            component_field(cf.A, slot), cfg);
        row += para_lowhigh(component_field(v, b),
                            component_field(cf.G, slot), cfg);
      }
      kernels::active().axpy(1.0, row.values[0].data(), out.values[a].data(),
                             u.grid.total());
    }
  return out;
}

DifferenceReport F_difference_check(const HyperbolicSystem& sys,
                                    const Field& u, const Field& v,
                                    double sigma, const ParaConfig& cfg) {
  require_same_grid(u.grid, v.grid, "F_difference_check");
  const Field Fu = perturbative_F(sys, u, cfg);
  const Field Fv = perturbative_F(sys, v, cfg);
  const Field dF = Fu - Fv;
  const Field duv = u - v;

  DifferenceReport rep;
  rep.sigma = sigma;
  rep.diff_hsigma = sobolev_norm(dF, sigma);
  rep.diff_l2 = l2_norm(dF);
  rep.u_hs = sobolev_norm(u, sigma);
  rep.v_hs = sobolev_norm(v, sigma);
  rep.b_sum = control_params(u).B + control_params(v).B;
  const double d_hs = sobolev_norm(duv, sigma);
  const double d_linf = linf_norm(duv);
  const double d_l2 = l2_norm(duv);
  rep.rhs_scale = rep.b_sum * (d_hs + d_linf * (rep.u_hs + rep.v_hs));
  rep.ratio = rep.rhs_scale > 0.0 ? rep.diff_hsigma / rep.rhs_scale : 0.0;
  const double l2_den = rep.b_sum * d_l2;
  rep.l2_ratio = l2_den > 0.0 ? rep.diff_l2 / l2_den : 0.0;
  return rep;
}

}  // namespace parahyp
