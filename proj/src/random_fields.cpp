#include "parahyp/random_fields.hpp"

#include <cmath>

#include "parahyp/norms.hpp"

namespace parahyp {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

std::size_t mirror_index(const GridSpec& g, std::size_t p) {
  const int n = g.n;
  if (g.dim == 1) return static_cast<std::size_t>((n - static_cast<int>(p)) % n);
  const int iy = static_cast<int>(p) / n, ix = static_cast<int>(p) % n;
  return static_cast<std::size_t>((n - iy) % n) * n +
         static_cast<std::size_t>((n - ix) % n);
}

bool touches_nyquist(const GridSpec& g, std::size_t p) {
  const int n = g.n;
  if (g.dim == 1) return static_cast<int>(p) == n / 2;
  const int iy = static_cast<int>(p) / n, ix = static_cast<int>(p) % n;
  return ix == n / 2 || iy == n / 2;
}

}  // namespace

Field random_field(const GridSpec& g, int components, std::uint64_t seed,
                   const RandomFieldSpec& spec) {
  if (components < 1)
    throw InvalidArgument("random_field: components must be >= 1");
  if (!(spec.amplitude > 0.0))
    throw InvalidArgument("random_field: amplitude must be > 0");
  const int cap = spec.max_shell >= 0 ? spec.max_shell : g.envelope_top();
  const double band = std::ldexp(1.0, cap);
  const std::vector<double>& fsq = freq_sq_table(g);
  const std::size_t total = g.total();

  SpectralField F(g, components);
  std::mt19937_64 gen(seed);
  const double tau = 2.0 * M_PI;
  for (int c = 0; c < components; ++c)
    for (std::size_t p = 0; p < total; ++p) {
      const std::size_t q = mirror_index(g, p);
      if (q < p) continue;  // conjugate partner already visited
      if (touches_nyquist(g, p)) continue;
      if (fsq[p] > band * band) continue;
      if (spec.zero_mean && fsq[p] == 0.0) continue;
      const double mag =
          spec.amplitude * std::pow(1.0 + fsq[p], -0.5 * spec.decay);
      if (p == q) {
        F.coeff[c][p] = {rand_u01(gen) < 0.5 ? -mag : mag, 0.0};
      } else {
        const double phase = tau * rand_u01(gen);
        const std::complex<double> z = std::polar(mag, phase);
        F.coeff[c][p] = z;
        F.coeff[c][q] = std::conj(z);
      }
    }
  return inverse_transform(F);
}

Field borderline_field(const GridSpec& g, int components, double s,
                       std::uint64_t seed) {
  if (components < 1)
    throw InvalidArgument("borderline_field: components must be >= 1");
  const int top = g.envelope_top();
  const std::vector<double>& fsq = freq_sq_table(g);
  const std::size_t total = g.total();
  const double tau = 2.0 * M_PI;
  const double d_factor = std::pow(tau, g.dim);

  SpectralField F(g, components);
  std::mt19937_64 gen(seed);
  // Unit-magnitude random phases per canonical mode, then each dyadic shell
  // is rescaled to carry exactly 1/(top+1) of the squared H^s mass.
  std::vector<double> shell_mass(top + 1, 0.0);
  std::vector<int> shell_of(total, -1);
  for (std::size_t p = 0; p < total; ++p) {
    if (touches_nyquist(g, p)) continue;
    const double r = std::sqrt(fsq[p]);
    if (r == 0.0) continue;
    int k = 0;
    while (std::ldexp(1.0, k) < r) ++k;  // shell k: 2^(k-1) < |xi| <= 2^k
    if (k > top) continue;
    shell_of[p] = k;
  }
  for (int c = 0; c < components; ++c)
    for (std::size_t p = 0; p < total; ++p) {
      if (shell_of[p] < 0) continue;
      const std::size_t q = mirror_index(g, p);
      if (q < p) continue;
      if (p == q) {
        F.coeff[c][p] = {rand_u01(gen) < 0.5 ? -1.0 : 1.0, 0.0};
      } else {
        const std::complex<double> z = std::polar(1.0, tau * rand_u01(gen));
        F.coeff[c][p] = z;
        F.coeff[c][q] = std::conj(z);
      }
    }
  for (std::size_t p = 0; p < total; ++p) {
    if (shell_of[p] < 0) continue;
    double msq = 0.0;
    for (int c = 0; c < components; ++c) msq += std::norm(F.coeff[c][p]);
    shell_mass[shell_of[p]] += d_factor * std::pow(1.0 + fsq[p], s) * msq;
  }
  const double target = 1.0 / (top + 1);
  for (std::size_t p = 0; p < total; ++p) {
    if (shell_of[p] < 0) continue;
    const double mass = shell_mass[shell_of[p]];
    if (!(mass > 0.0))
      throw InvalidArgument("borderline_field: empty dyadic shell");
    const double scale = std::sqrt(target / mass);
    for (int c = 0; c < components; ++c) F.coeff[c][p] *= scale;
  }
  return inverse_transform(F);
}

Field normalize_linf(const Field& f, double target) {
  const double cur = linf_norm(f);
  if (!(cur > 0.0)) throw InvalidArgument("normalize_linf: zero field");
  return (target / cur) * f;
}

Field normalize_hs(const Field& f, double s, double target) {
  const double cur = sobolev_norm(f, s);
  if (!(cur > 0.0)) throw InvalidArgument("normalize_hs: zero field");
  return (target / cur) * f;
}

}  // namespace parahyp
