#include "parahyp/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "parahyp/kernels.hpp"

namespace parahyp {

namespace {

// (1 + |xi|^2)^s per mode, cached per (grid, s): the solver evaluates the
// same weight every step.
const std::vector<double>& sobolev_weight(const GridSpec& g, double s) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, std::int64_t>,
                  std::shared_ptr<const std::vector<double>>>
      cache;
  std::int64_t sbits;
  std::memcpy(&sbits, &s, sizeof sbits);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({g.dim, g.n, sbits});
  if (it == cache.end()) {
    const auto& fsq = freq_sq_table(g);
    auto tab = std::make_shared<std::vector<double>>(fsq.size());
    for (std::size_t i = 0; i < fsq.size(); ++i)
      (*tab)[i] = std::pow(1.0 + fsq[i], s);
    it = cache.emplace(std::make_tuple(g.dim, g.n, sbits), std::move(tab))
             .first;
  }
  return *it->second;
}

double clamp_s(double s) { return std::clamp(s, -10.0, 10.0); }

double two_pi_pow(int dim) {
  return dim == 1 ? 2.0 * M_PI : 4.0 * M_PI * M_PI;
}

}  // namespace

double sobolev_norm(const SpectralField& F, double s) {
  const auto& w = sobolev_weight(F.grid, clamp_s(s));
  double acc = 0.0;
  for (int c = 0; c < F.components; ++c)
    acc += kernels::active().weighted_mode_energy(
        w.data(), reinterpret_cast<const double*>(F.coeff[c].data()),
        F.coeff[c].size());
  return std::sqrt(two_pi_pow(F.grid.dim) * acc);
}

double sobolev_norm(const Field& f, double s) {
  return sobolev_norm(transform(f), s);
}

double l2_norm(const Field& f) {
  // Parseval on samples directly: mean of squares times (2pi)^dim.
  double acc = 0.0;
  for (int c = 0; c < f.components; ++c)
    acc += kernels::active().sum_sq(f.values[c].data(), f.values[c].size());
  return std::sqrt(two_pi_pow(f.grid.dim) * acc /
                   static_cast<double>(f.grid.total()));
}

double l2_norm_component(const Field& f, int c) {
  if (c < 0 || c >= f.components)
    throw ComponentMismatch("l2_norm_component: no such component");
  const double acc =
      kernels::active().sum_sq(f.values[c].data(), f.values[c].size());
  return std::sqrt(two_pi_pow(f.grid.dim) * acc /
                   static_cast<double>(f.grid.total()));
}

double linf_norm(const Field& f) {
  const std::size_t total = f.grid.total();
  if (f.components == 1)
    return kernels::active().max_abs(f.values[0].data(), total);
  if (f.components == 2)
    return std::sqrt(kernels::active().max_sum_sq2(f.values[0].data(),
                                                   f.values[1].data(), total));
  double m = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    double v = 0.0;
    for (int c = 0; c < f.components; ++c)
      v += f.values[c][i] * f.values[c][i];
    m = std::max(m, v);
  }
  return std::sqrt(m);
}

ControlPair control_params(const Field& f) {
  ControlPair cp;
  cp.A = linf_norm(f);

  // All first derivatives, every component and axis, as one long list of
  // sample arrays; B is the grid max of their pointwise Euclidean norm.
  const SpectralField F = transform(f);
  std::vector<std::vector<double>> grads;
  grads.reserve(static_cast<std::size_t>(f.components) * f.grid.dim);
  for (int axis = 0; axis < f.grid.dim; ++axis) {
    const Field d = inverse_transform(derivative(F, axis));
    for (int c = 0; c < f.components; ++c) grads.push_back(d.values[c]);
  }
  const std::size_t total = f.grid.total();
  if (grads.size() == 1) {
    cp.B = kernels::active().max_abs(grads[0].data(), total);
  } else if (grads.size() == 2) {
    cp.B = std::sqrt(
        kernels::active().max_sum_sq2(grads[0].data(), grads[1].data(), total));
  } else {
    double m = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      double v = 0.0;
      for (const auto& gcol : grads) v += gcol[i] * gcol[i];
      m = std::max(m, v);
    }
    cp.B = std::sqrt(m);
  }
  return cp;
}

MoserReport moser_check(const std::function<double(double)>& F, const Field& f,
                        double s) {
  if (s < 0.0) throw InvalidArgument("moser_check: s must be >= 0");
  PaddedSamples p = pad_to_fine(transform(f));
  for (int c = 0; c < p.components; ++c)
    for (double& v : p.values[c]) v = F(v);
  const Field composed = inverse_transform(truncate_from_fine(p, f.grid));
  MoserReport rep;
  rep.hs_in = sobolev_norm(f, s);
  rep.hs_out = sobolev_norm(composed, s);
  rep.linf = linf_norm(f);
  rep.ratio = rep.hs_in > 0.0 ? rep.hs_out / rep.hs_in : 0.0;
  return rep;
}

}  // namespace parahyp
