#pragma once

#include <stdexcept>
#include <string>

namespace parahyp {

// Base for every error this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

// Two operands live on different grids.
struct GridMismatch : Error {
  using Error::Error;
};

// A field's component count does not match what the operation needs.
struct ComponentMismatch : Error {
  using Error::Error;
};

struct AxisOutOfRange : Error {
  using Error::Error;
};

// A frequency-scale parameter (regularization cutoff, Galerkin shell) does not
// fit below the grid's Nyquist frequency.
struct GridTooCoarse : Error {
  using Error::Error;
};

// Inner integrator step too large for the advection speed on this grid.
struct CflViolation : Error {
  using Error::Error;
};

// Fixed-point iteration distances grew for two consecutive iterations;
// the horizon is too large for contraction.
struct NonContraction : Error {
  using Error::Error;
};

// Non-finite samples, or a tracked norm exceeded its configured ceiling.
struct BlowupDetected : Error {
  explicit BlowupDetected(const std::string& what, double t = -1.0)
      : Error(what), time(t) {}
  double time;  // simulation time at detection, -1 if not applicable
};

}  // namespace parahyp
