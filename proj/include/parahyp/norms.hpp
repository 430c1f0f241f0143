#pragma once

#include <functional>

#include "parahyp/spectral.hpp"

namespace parahyp {

// Pointwise-size and gradient-size controls:
//   A = max over grid points of the Euclidean norm across components
//   B = max over grid points of the Euclidean norm of all first spectral
//       derivatives (all components, all axes)
struct ControlPair {
  double A = 0.0;
  double B = 0.0;
};

// ( (2pi)^dim * sum_xi (1+|xi|^2)^s |f_hat(xi)|^2 )^(1/2), summed over
// components; s = 0 reproduces the L2 norm. s is clamped to [-10, 10].
double sobolev_norm(const Field& f, double s);
double sobolev_norm(const SpectralField& F, double s);

double l2_norm(const Field& f);
double l2_norm_component(const Field& f, int c);

// Grid maximum of the pointwise Euclidean norm across components (a lower
// bound of the true sup, spectrally accurate for smooth fields).
double linf_norm(const Field& f);

ControlPair control_params(const Field& f);

struct MoserReport {
  double ratio;    // ||F(f)||_Hs / ||f||_Hs
  double linf;     // ||f||_Linf
  double hs_in;    // ||f||_Hs
  double hs_out;   // ||F(f)||_Hs
};

// Applies the scalar map F pointwise on the dealiasing grid (composition is
// alias-suppressed, then truncated) and reports the H^s amplification.
// F(0) = 0 is the caller's contract; it is not enforced.
MoserReport moser_check(const std::function<double(double)>& F, const Field& f,
                        double s);

}  // namespace parahyp
