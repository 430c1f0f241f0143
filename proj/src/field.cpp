#include "parahyp/field.hpp"

#include "parahyp/kernels.hpp"

namespace parahyp {

namespace {

void check_shapes(const Field& a, const Field& b, const char* where) {
  require_same_grid(a.grid, b.grid, where);
  if (a.components != b.components)
    throw ComponentMismatch(std::string(where) + ": component counts differ");
}

void check_shapes(const SpectralField& a, const SpectralField& b,
                  const char* where) {
  require_same_grid(a.grid, b.grid, where);
  if (a.components != b.components)
    throw ComponentMismatch(std::string(where) + ": component counts differ");
}

}  // namespace

Field operator+(const Field& a, const Field& b) {
  check_shapes(a, b, "Field+");
  Field r = a;
  r += b;
  return r;
}

Field operator-(const Field& a, const Field& b) {
  check_shapes(a, b, "Field-");
  Field r = a;
  r -= b;
  return r;
}

Field operator*(double a, const Field& f) {
  Field r = f;
  for (auto& comp : r.values)
    for (double& v : comp) v *= a;
  return r;
}

Field& operator+=(Field& a, const Field& b) {
  check_shapes(a, b, "Field+=");
  for (int c = 0; c < a.components; ++c)
    kernels::active().axpy(1.0, b.values[c].data(), a.values[c].data(),
                           b.values[c].size());
  return a;
}

Field& operator-=(Field& a, const Field& b) {
  check_shapes(a, b, "Field-=");
  for (int c = 0; c < a.components; ++c)
    kernels::active().axpy(-1.0, b.values[c].data(), a.values[c].data(),
                           b.values[c].size());
  return a;
}

void axpy(double a, const Field& x, Field& y) {
  check_shapes(x, y, "Field axpy");
  for (int c = 0; c < x.components; ++c)
    kernels::active().axpy(a, x.values[c].data(), y.values[c].data(),
                           x.values[c].size());
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  check_shapes(a, b, "SpectralField+");
  SpectralField r = a;
  for (int c = 0; c < a.components; ++c)
    for (std::size_t i = 0; i < r.coeff[c].size(); ++i)
      r.coeff[c][i] += b.coeff[c][i];
  return r;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  check_shapes(a, b, "SpectralField-");
  SpectralField r = a;
  for (int c = 0; c < a.components; ++c)
    for (std::size_t i = 0; i < r.coeff[c].size(); ++i)
      r.coeff[c][i] -= b.coeff[c][i];
  return r;
}

SpectralField operator*(double a, const SpectralField& f) {
  SpectralField r = f;
  for (auto& comp : r.coeff)
    for (auto& z : comp) z *= a;
  return r;
}

void axpy(double a, const SpectralField& x, SpectralField& y) {
  check_shapes(x, y, "SpectralField axpy");
  for (int c = 0; c < x.components; ++c) {
    // Interleaved complex data is two reals per mode.
    kernels::active().axpy(
        a, reinterpret_cast<const double*>(x.coeff[c].data()),
        reinterpret_cast<double*>(y.coeff[c].data()), 2 * x.coeff[c].size());
  }
  return;
}

}  // namespace parahyp
