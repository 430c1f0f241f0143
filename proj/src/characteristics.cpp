#include <cmath>
#include <limits>

#include "parahyp/solver.hpp"

namespace parahyp {

double CharacteristicsOracle::shock_time(int scan_points) const {
  if (scan_points < 2)
    throw InvalidArgument("shock_time: need at least 2 scan points");
  const double h = 2.0 * M_PI / scan_points;
  double top = 0.0;
  for (int i = 0; i < scan_points; ++i) top = std::max(top, du0(i * h));
  if (!(top > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / top;
}

double CharacteristicsOracle::eval_point(double x, double t) const {
  if (t == 0.0) return u0(x);
  // Solve g(x0) = x0 - t u0(x0) - x = 0; g is strictly increasing before the
  // shock, so Newton from x0 = x converges and bisection is a safe fallback.
  auto g = [&](double x0) { return x0 - t * u0(x0) - x; };
  double x0 = x;
  for (int it = 0; it < 50; ++it) {
    const double gv = g(x0);
    if (std::fabs(gv) <= 1e-12) return u0(x0);
    const double gp = 1.0 - t * du0(x0);
    if (!(gp > 1e-12)) break;
    x0 -= gv / gp;
  }
  double lo = x - 1.0, hi = x + 1.0;
  for (int it = 0; it < 60 && g(lo) > 0.0; ++it) lo -= std::ldexp(1.0, it);
  for (int it = 0; it < 60 && g(hi) < 0.0; ++it) hi += std::ldexp(1.0, it);
  if (g(lo) > 0.0 || g(hi) < 0.0)
    throw InvalidArgument("characteristics: failed to bracket the foot point");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return u0(0.5 * (lo + hi));
}

Field CharacteristicsOracle::evaluate(const GridSpec& g, double t) const {
  if (g.dim != 1)
    throw InvalidArgument("characteristics: 1D scalar oracle only");
  return Field::from_function(
      g, 1, [&](double x, int) { return eval_point(x, t); });
}

}  // namespace parahyp
