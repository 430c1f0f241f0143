#pragma once

#include <vector>

#include "parahyp/field.hpp"

namespace parahyp {

// Frequency cutoff profile used by every projector in the library.
//   sharp:  indicator functions; projector algebra holds exactly.
//   smooth: piecewise-cubic ramp r(t) = 3t^2 - 2t^3 spread over one octave;
//           shells still tile frequency space exactly (telescoping sums).
enum class Profile { sharp, smooth };

SpectralField transform(const Field& f);
Field inverse_transform(const SpectralField& F);

// Exact spectral differentiation along `axis`; the Nyquist mode is zeroed
// (its derivative is not representable with a real sign convention).
Field derivative(const Field& f, int axis);
SpectralField derivative(const SpectralField& F, int axis);

// Dyadic shells: shell 0 holds |xi| <= 1; shell k >= 1 holds
// 2^(k-1) < |xi| <= 2^k (sharp), smoothly feathered across one octave on each
// side for Profile::smooth. Shells k = 0..shell_top(grid) tile the lattice.
int shell_top(const GridSpec& g);
bool shell_resolved(const GridSpec& g, int k);

struct ShellProjection {
  Field field;
  bool resolved;  // false: the shell lies entirely above the lattice; field=0
};
ShellProjection lp_project(const Field& f, int k,
                           Profile profile = Profile::sharp);
SpectralField lp_project(const SpectralField& F, int k,
                         Profile profile = Profile::sharp);

// P_{<lambda}: keeps |xi| < lambda (sharp) or attenuates across
// [lambda/2, lambda] (smooth). Identity once lambda clears the lattice.
Field low_pass(const Field& f, double lambda,
               Profile profile = Profile::sharp);
SpectralField low_pass(const SpectralField& F, double lambda,
                       Profile profile = Profile::sharp);

// Shell-sum low-pass S_{<m} = sum_{j=0}^{m-1} P_j; zero for m <= 0. Sharp
// keeps |xi| <= 2^(m-1); smooth coincides with low_pass at lambda = 2^m
// (one-octave ramp across [2^(m-1), 2^m]).
SpectralField shell_low_pass(const SpectralField& F, int m,
                             Profile profile = Profile::sharp);

// Pointwise product evaluated on a 2x zero-padded grid and truncated back:
// alias-free (exact) for products of resolved modes. f or g may be scalar
// (one component) against a multi-component partner.
Field dealiased_product(const Field& f, const Field& g);

// Shared multiplier tables (values per flat lattice index, cached per grid):
// |xi|^2 and the shell/low-pass weights used by the projectors above.
const std::vector<double>& freq_sq_table(const GridSpec& g);
const std::vector<double>& shell_multiplier(const GridSpec& g, int k,
                                            Profile profile);
std::vector<double> low_pass_multiplier(const GridSpec& g, double lambda,
                                        Profile profile);

// Padded-grid workspace for composing pointwise operations without
// intermediate truncation. fine has 2x points per axis.
struct PaddedSamples {
  GridSpec fine;
  int components;
  std::vector<std::vector<double>> values;  // [component][fine point]
};
PaddedSamples pad_to_fine(const SpectralField& F);
SpectralField truncate_from_fine(const PaddedSamples& p,
                                 const GridSpec& coarse);

// Hermitian-symmetry defect relative to the coefficient mass; a real Field's
// spectrum keeps this below 1e-12 through every operation here.
double hermitian_defect(const SpectralField& F);

}  // namespace parahyp
