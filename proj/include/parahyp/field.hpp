#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "parahyp/grid.hpp"

namespace parahyp {

// Real multi-component function sampled on the grid. Component c, flat index
// p = iy*n + ix (row-major; 1D uses p = ix).
struct Field {
  GridSpec grid;
  int components = 1;
  std::vector<std::vector<double>> values;  // [component][point]

  Field() = default;
  Field(const GridSpec& g, int m)
      : grid(g),
        components(m),
        values(static_cast<std::size_t>(m),
               std::vector<double>(g.total(), 0.0)) {
    if (m < 1) throw InvalidArgument("Field: components must be >= 1");
  }

  // Samples fn(x, c) (1D) on the grid; x in [0, 2pi).
  static Field from_function(const GridSpec& g, int m,
                             const std::function<double(double, int)>& fn) {
    if (g.dim != 1) throw InvalidArgument("from_function: 1D overload");
    Field f(g, m);
    const double h = g.grid_spacing();
    for (int c = 0; c < m; ++c)
      for (int i = 0; i < g.n; ++i) f.values[c][i] = fn(i * h, c);
    return f;
  }

  // Samples fn(x, y, c) (2D) on the grid.
  static Field from_function2(
      const GridSpec& g, int m,
      const std::function<double(double, double, int)>& fn) {
    if (g.dim != 2) throw InvalidArgument("from_function2: 2D overload");
    Field f(g, m);
    const double h = g.grid_spacing();
    for (int c = 0; c < m; ++c)
      for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
          f.values[c][static_cast<std::size_t>(iy) * g.n + ix] =
              fn(ix * h, iy * h, c);
    return f;
  }

  bool all_finite() const {
    for (const auto& comp : values)
      for (double v : comp)
        if (!std::isfinite(v)) return false;
    return true;
  }
};

// Fourier coefficients G of a Field, stored as series coefficients:
//   f(x) = sum_xi G(xi) exp(i xi . x)
// over the resolved integer lattice, in the same flat index order as Field
// samples (index i along an axis carries wavenumber grid.wavenumber(i)).
// With this normalization ||f||_L2^2 = (2pi)^dim * sum |G|^2.
struct SpectralField {
  GridSpec grid;
  int components = 1;
  std::vector<std::vector<std::complex<double>>> coeff;  // [component][mode]

  SpectralField() = default;
  SpectralField(const GridSpec& g, int m)
      : grid(g),
        components(m),
        coeff(static_cast<std::size_t>(m),
              std::vector<std::complex<double>>(g.total(), {0.0, 0.0})) {
    if (m < 1) throw InvalidArgument("SpectralField: components must be >= 1");
  }
};

// Elementwise field arithmetic (same grid and component count).
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double a, const Field& f);
Field& operator+=(Field& a, const Field& b);
Field& operator-=(Field& a, const Field& b);
void axpy(double a, const Field& x, Field& y);  // y += a*x

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double a, const SpectralField& f);
void axpy(double a, const SpectralField& x, SpectralField& y);

}  // namespace parahyp
