#pragma once

#include <cstdint>
#include <random>

#include "parahyp/spectral.hpp"

namespace parahyp {

// Uniform in [0,1) from raw generator draws; the standard distribution
// adapters are implementation-defined and would break cross-vendor
// byte-identical reruns.
inline double rand_u01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::uint64_t fnv1a(const std::string& text);

// One recorded seed drives everything; sub-streams are derived, never shared.
inline std::uint64_t derive_seed(std::uint64_t seed, const std::string& name,
                                 std::uint64_t index = 0) {
  return seed ^ fnv1a(name) ^ (0x9e3779b97f4a7c15ULL * (index + 1));
}

struct RandomFieldSpec {
  double decay = 4.0;     // |coeff(xi)| proportional to (1+|xi|^2)^(-decay/2)
  double amplitude = 1.0;
  int max_shell = -1;     // band cap; -1 = envelope_top(grid)
  bool zero_mean = true;
};

// Random smooth field: deterministic coefficient magnitudes with the
// prescribed polynomial decay, phases uniform from the seed, exact Hermitian
// symmetry (real samples by construction).
Field random_field(const GridSpec& g, int components, std::uint64_t seed,
                   const RandomFieldSpec& spec = {});

// Equal H^s mass in every shell 0..envelope_top: the borderline profile whose
// envelope is flat. Normalized to ||w||_{H^s} = 1.
Field borderline_field(const GridSpec& g, int components, double s,
                       std::uint64_t seed);

Field normalize_linf(const Field& f, double target);
Field normalize_hs(const Field& f, double s, double target);

}  // namespace parahyp
