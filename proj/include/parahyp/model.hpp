#pragma once

#include "parahyp/paraproduct.hpp"
#include "parahyp/system.hpp"

namespace parahyp {

// Right-hand sides associated with a system. Coefficient compositions A^j(u)
// and the zeroth-order fields G^j (contraction of DA^j with d_j u) are
// evaluated pointwise on the dealiasing grid and truncated once; every
// product below reuses those truncated fields, which makes the splitting
// identities
//   apply_N(u)            = apply_paradiff(u, u) + perturbative_F(u)
//   apply_linearized(u,v) = apply_paradiff(u, v) + F_lin_pi + F_lin_t
// hold to round-off rather than merely to dealiasing accuracy.

// sum_j A^j(u) d_j u
Field apply_N(const HyperbolicSystem& sys, const Field& u);

// sum_j [ A^j(u) d_j v + (DA^j(u) v) d_j u ]
Field apply_linearized(const HyperbolicSystem& sys, const Field& u,
                       const Field& v);

// sum_j [ T_{A^j(u)} d_j w + T_{G^j(u)} w ], the low-high part of the
// linearized flow; the second (zeroth-order) term is dropped when
// cfg.drop_zeroth_order is set.
Field apply_paradiff(const HyperbolicSystem& sys, const Field& u,
                     const Field& w, const ParaConfig& cfg);

// Exact complement apply_N(u) - apply_paradiff(u, u).
Field perturbative_F(const HyperbolicSystem& sys, const Field& u,
                     const ParaConfig& cfg);

// Three-term form sum_j [ Pi(A^j, d_j u) + T_{d_j u} A^j - T_{G^j} u ],
// summed entrywise. Coincides with perturbative_F to round-off under
// coeff_lowpass quantization (and for any quantization when the coefficient
// maps are linear); kept as an independent cross-check path.
Field perturbative_F_displayed(const HyperbolicSystem& sys, const Field& u,
                               const ParaConfig& cfg);

struct LinearizedRemainder {
  Field pi_part;  // sum_j [ Pi(A^j, d_j v) + Pi(G^j, v) ], evaluated directly
  Field t_part;   // exact complement: linearized - paradiff - pi_part
};
LinearizedRemainder linearized_remainder(const HyperbolicSystem& sys,
                                         const Field& u, const Field& v,
                                         const ParaConfig& cfg);

// Direct three-term evaluation of the T-part, sum_j [ T_{d_j v} A^j + T_v G^j ];
// cross-check companion of LinearizedRemainder::t_part.
Field linearized_remainder_t_displayed(const HyperbolicSystem& sys,
                                       const Field& u, const Field& v,
                                       const ParaConfig& cfg);

struct DifferenceReport {
  double sigma;
  double diff_hsigma;  // ||F(u) - F(v)||_{H^sigma}
  double diff_l2;      // ||F(u) - F(v)||_{L2}
  double rhs_scale;    // B * ( ||u-v||_{H^sigma} + ||u-v||_Linf (||u||+||v||)_{H^sigma} )
  double ratio;        // diff_hsigma / rhs_scale
  double l2_ratio;     // diff_l2 / ( B * ||u-v||_L2 )
  double u_hs, v_hs;   // H^sigma norms of u and v
  double b_sum;        // B_u + B_v, the B entering both scales
};
// Sizes ||F(u)-F(v)||_{H^sigma} against
//   (B_u+B_v) [ ||u-v||_{H^sigma} + ||u-v||_Linf (||u||_{H^sigma}+||v||_{H^sigma}) ]
// and the L2 difference against (B_u+B_v) ||u-v||_L2.
DifferenceReport F_difference_check(const HyperbolicSystem& sys,
                                    const Field& u, const Field& v,
                                    double sigma, const ParaConfig& cfg);

}  // namespace parahyp
