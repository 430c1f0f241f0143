#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "parahyp/errors.hpp"

namespace parahyp {

// First-order system u_t = sum_j A^j(u) d_j u with symmetric m x m
// coefficient matrices depending smoothly on the state.
//
// coeff(state, out): writes the dim matrices A^j, axis-major row-major:
//   out[(j*m + a)*m + b] = A^j_{ab}(state)
// coeff_jacobian(state, dir, out): directional derivative DA^j(state)*dir in
// the same layout.
struct HyperbolicSystem {
  std::string name;
  int dim = 1;
  int components = 1;
  std::function<void(const double* state, double* out)> coeff;
  std::function<void(const double* state, const double* dir, double* out)>
      coeff_jacobian;
};

// Checks symmetry of A^j exactly and the Jacobian against finite differences
// (relative tolerance 1e-6 at step 1e-5) on `samples` random states drawn
// from the given seed. Throws InvalidArgument on failure.
void validate_system(const HyperbolicSystem& sys, std::uint64_t seed = 12345,
                     int samples = 1000);

// Registry. Built-ins:
//   burgers   : dim 1, m 1, A(u) = u
//   sym2      : dim 1, m 2, A(u) = [[u1, u2], [u2, -u1]]
//   burgers2d : dim 2, m 1, A1(u) = u, A2(u) = u/2
// register_system validates before inserting; duplicate names rejected.
const HyperbolicSystem& system_registry(const std::string& name);
void register_system(HyperbolicSystem sys);
std::vector<std::string> registered_systems();

}  // namespace parahyp
