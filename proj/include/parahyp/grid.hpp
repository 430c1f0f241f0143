#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "parahyp/errors.hpp"

namespace parahyp {

// Periodic grid on [0, 2pi)^dim with the same power-of-two point count per
// axis. Frequencies are the integer lattice; index i along an axis carries
// wavenumber i for i < n/2 and i - n otherwise (the Nyquist mode n/2 is
// stored as -n/2).
struct GridSpec {
  int dim = 1;
  int n = 256;  // points per axis

  GridSpec() = default;
  GridSpec(int dim_, int n_) : dim(dim_), n(n_) {
    if (dim != 1 && dim != 2)
      throw InvalidArgument("GridSpec: dim must be 1 or 2, got " +
                            std::to_string(dim));
    if (n < 16 || !is_pow2(n))
      throw InvalidArgument(
          "GridSpec: points_per_axis must be a power of two >= 16, got " +
          std::to_string(n));
  }

  static bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

  std::size_t total() const {
    return dim == 1 ? static_cast<std::size_t>(n)
                    : static_cast<std::size_t>(n) * n;
  }
  int nyquist() const { return n / 2; }

  // Wavenumber carried by index i along one axis.
  int wavenumber(int i) const { return i < n / 2 ? i : i - n; }

  // Largest |xi| on the resolved lattice (corner mode in 2D).
  double max_freq() const {
    return dim == 1 ? static_cast<double>(nyquist())
                    : std::sqrt(2.0) * nyquist();
  }

  // Smallest K with 2^K >= max_freq(); dyadic shells run k = 0..shell_top.
  int shell_top() const {
    int k = 0;
    while ((1 << k) < max_freq()) ++k;
    return k;
  }

  // Top shell index used for envelope analysis; the octave at the Nyquist
  // frequency is treated as unresolved and reported separately.
  int envelope_top() const {
    int k = 0;
    while ((1 << (k + 1)) < nyquist()) ++k;
    return k;  // 2^(envelope_top+1) == nyquist
  }

  double grid_spacing() const { return 2.0 * M_PI / n; }

  bool operator==(const GridSpec& o) const { return dim == o.dim && n == o.n; }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b,
                              const char* where) {
  if (a != b)
    throw GridMismatch(std::string(where) + ": grids differ (" +
                       std::to_string(a.dim) + "d/" + std::to_string(a.n) +
                       " vs " + std::to_string(b.dim) + "d/" +
                       std::to_string(b.n) + ")");
}

}  // namespace parahyp
