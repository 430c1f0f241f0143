#pragma once

#include "parahyp/spectral.hpp"

namespace parahyp {

// How the low-frequency coefficient factor is built when the coefficient is a
// composition A(u) (see model ops). For a plain paraproduct of two given
// fields only the coefficient-side filter applies.
//   coeff_lowpass:  S_{<k-gap}( A(u) )
//   arg_lowpass:    A( S_{<k-gap} u )                      (default)
//   double_lowpass: S_{<k-ceil(gap/2)}( A( S_{<k-gap} u ) )
// All three coincide exactly when A is linear in u.
enum class Quantization { coeff_lowpass, arg_lowpass, double_lowpass };

struct ParaConfig {
  int gap = 8;  // octaves the low factor lags each retained shell; >= 2
  Quantization quantization = Quantization::arg_lowpass;
  Profile profile = Profile::sharp;
  bool drop_zeroth_order = false;  // model ops: keep only the principal term

  void validate() const {
    if (gap < 2) throw InvalidArgument("ParaConfig: gap must be >= 2");
  }
};

// T_f g = sum_k ( S_{<k-gap} f ) * ( P_k g ), each summand multiplied on the
// padded grid and accumulated there, so the trichotomy complement below is
// exact to round-off. Scalar f broadcasts across g's components.
Field para_lowhigh(const Field& f, const Field& g, const ParaConfig& cfg);

// Pi(f,g) = fg - T_f g - T_g f: the comparable-frequency remainder, defined
// as the exact complement of the two paraproducts.
Field para_highhigh(const Field& f, const Field& g, const ParaConfig& cfg);

struct ParaParts {
  Field low_high;   // T_f g
  Field high_low;   // T_g f
  Field high_high;  // Pi(f,g)
};
// The three parts sum to dealiased_product(f,g) exactly.
ParaParts para_decompose(const Field& f, const Field& g,
                         const ParaConfig& cfg);

struct CommutatorReport {
  int k;
  double comm_l2;      // || P_k(f g) - f P_k(g) ||_L2
  double grad_f_linf;  // ||grad f||_Linf
  double g_l2;         // ||g||_L2
  double ratio;        // 2^k * comm_l2 / (grad_f_linf * g_l2)
};
// Frequency-localized commutator size; the ratio stays O(1) because moving
// P_k past a smooth factor costs one derivative at scale 2^-k.
CommutatorReport commutator_check(const Field& f, const Field& g, int k,
                                  Profile profile = Profile::sharp);

}  // namespace parahyp
