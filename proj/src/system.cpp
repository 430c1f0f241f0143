#include "parahyp/system.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <random>

#include "parahyp/random_fields.hpp"

namespace parahyp {

namespace {

HyperbolicSystem make_burgers() {
  HyperbolicSystem sys;
  sys.name = "burgers";
  sys.dim = 1;
  sys.components = 1;
  sys.coeff = [](const double* state, double* out) { out[0] = state[0]; };
  sys.coeff_jacobian = [](const double*, const double* dir, double* out) {
    out[0] = dir[0];
  };
  return sys;
}

HyperbolicSystem make_sym2() {
  HyperbolicSystem sys;
  sys.name = "sym2";
  sys.dim = 1;
  sys.components = 2;
  sys.coeff = [](const double* state, double* out) {
    out[0] = state[0];
    out[1] = state[1];
    out[2] = state[1];
    out[3] = -state[0];
  };
  sys.coeff_jacobian = [](const double*, const double* dir, double* out) {
    out[0] = dir[0];
    out[1] = dir[1];
    out[2] = dir[1];
    out[3] = -dir[0];
  };
  return sys;
}

HyperbolicSystem make_burgers2d() {
  HyperbolicSystem sys;
  sys.name = "burgers2d";
  sys.dim = 2;
  sys.components = 1;
  sys.coeff = [](const double* state, double* out) {
    out[0] = state[0];
    out[1] = 0.5 * state[0];
  };
  sys.coeff_jacobian = [](const double*, const double* dir, double* out) {
    out[0] = dir[0];
    out[1] = 0.5 * dir[0];
  };
  return sys;
}

std::map<std::string, HyperbolicSystem>& registry_map() {
  static std::map<std::string, HyperbolicSystem> reg = [] {
    std::map<std::string, HyperbolicSystem> r;
    for (auto&& sys : {make_burgers(), make_sym2(), make_burgers2d()})
      r.emplace(sys.name, sys);
    return r;
  }();
  return reg;
}

std::mutex& registry_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

void validate_system(const HyperbolicSystem& sys, std::uint64_t seed,
                     int samples) {
  if (sys.name.empty()) throw InvalidArgument("system: empty name");
  if (sys.dim != 1 && sys.dim != 2)
    throw InvalidArgument("system " + sys.name + ": dim must be 1 or 2");
  if (sys.components < 1)
    throw InvalidArgument("system " + sys.name + ": components must be >= 1");
  if (!sys.coeff || !sys.coeff_jacobian)
    throw InvalidArgument("system " + sys.name +
                          ": coeff and coeff_jacobian must both be set");

  const int m = sys.components;
  const std::size_t mat = static_cast<std::size_t>(sys.dim) * m * m;
  std::vector<double> state(m), dir(m), a(mat), ap(mat), am(mat), jac(mat);
  std::mt19937_64 gen(seed);
  const double step = 1e-5;
  for (int trial = 0; trial < samples; ++trial) {
    for (int c = 0; c < m; ++c) state[c] = 4.0 * rand_u01(gen) - 2.0;
    for (int c = 0; c < m; ++c) dir[c] = 2.0 * rand_u01(gen) - 1.0;

    sys.coeff(state.data(), a.data());
    for (int j = 0; j < sys.dim; ++j)
      for (int r = 0; r < m; ++r)
        for (int c = r + 1; c < m; ++c)
          if (a[(static_cast<std::size_t>(j) * m + r) * m + c] !=
              a[(static_cast<std::size_t>(j) * m + c) * m + r])
            throw InvalidArgument("system " + sys.name + ": A^" +
                                  std::to_string(j) + " not symmetric");

    sys.coeff_jacobian(state.data(), dir.data(), jac.data());
    std::vector<double> sp(state), sm(state);
    for (int c = 0; c < m; ++c) {
      sp[c] += step * dir[c];
      sm[c] -= step * dir[c];
    }
    sys.coeff(sp.data(), ap.data());
    sys.coeff(sm.data(), am.data());
    for (std::size_t i = 0; i < mat; ++i) {
      const double fd = (ap[i] - am[i]) / (2.0 * step);
      const double scale = std::max({1.0, std::fabs(fd), std::fabs(jac[i])});
      if (std::fabs(fd - jac[i]) > 1e-6 * scale)
        throw InvalidArgument("system " + sys.name +
                              ": coeff_jacobian disagrees with finite "
                              "differences at entry " +
                              std::to_string(i));
    }
  }
}

const HyperbolicSystem& system_registry(const std::string& name) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& reg = registry_map();
  auto it = reg.find(name);
  if (it == reg.end())
    throw InvalidArgument("unknown system '" + name + "'");
  return it->second;
}

void register_system(HyperbolicSystem sys) {
  validate_system(sys);
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& reg = registry_map();
  if (reg.count(sys.name))
    throw InvalidArgument("system '" + sys.name + "' already registered");
  reg.emplace(sys.name, std::move(sys));
}

std::vector<std::string> registered_systems() {
  std::lock_guard<std::mutex> lock(registry_mutex());
  std::vector<std::string> names;
  for (const auto& kv : registry_map()) names.push_back(kv.first);
  return names;
}

}  // namespace parahyp
