#include "parahyp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "parahyp/fft.hpp"
#include "parahyp/kernels.hpp"

namespace parahyp {

namespace {

using cplx = std::complex<double>;

// ---- multi-dimensional transforms on flat complex buffers ----------------

void fft_all_axes(const GridSpec& g, cplx* a, bool forward, bool unscaled) {
  const auto plan = fft_plan(g.n);
  auto run = [&](cplx* p) {
    if (forward)
      fft_forward(*plan, p);
    else if (unscaled)
      fft_inverse_unscaled(*plan, p);
    else
      fft_inverse(*plan, p);
  };
  if (g.dim == 1) {
    run(a);
    return;
  }
  // Rows (contiguous), then columns through a gather buffer.
  for (int iy = 0; iy < g.n; ++iy) run(a + static_cast<std::size_t>(iy) * g.n);
  std::vector<cplx> col(g.n);
  for (int ix = 0; ix < g.n; ++ix) {
    for (int iy = 0; iy < g.n; ++iy)
      col[iy] = a[static_cast<std::size_t>(iy) * g.n + ix];
    run(col.data());
    for (int iy = 0; iy < g.n; ++iy)
      a[static_cast<std::size_t>(iy) * g.n + ix] = col[iy];
  }
}

// ---- cached per-grid tables ----------------------------------------------

struct TableKey {
  int dim, n, k, kind;  // kind: 0 shell sharp, 1 shell smooth,
                        //       2 shell-sum sharp, 3 shell-sum smooth
  bool operator<(const TableKey& o) const {
    return std::tie(dim, n, k, kind) < std::tie(o.dim, o.n, o.k, o.kind);
  }
};

double cubic_ramp(double t) {  // 0 -> 0, 1 -> 1, C1 at both ends
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * (3.0 - 2.0 * t);
}

// chi_k: 1 on |xi| <= 2^k, cubic descent to 0 across one octave.
double chi(double absxi, int k) {
  const double edge = static_cast<double>(1 << k);
  if (absxi <= edge) return 1.0;
  if (absxi >= 2.0 * edge) return 0.0;
  return 1.0 - cubic_ramp(absxi / edge - 1.0);
}

double shell_weight(double fsq, int k, Profile profile) {
  if (profile == Profile::sharp) {
    if (k == 0) return fsq <= 1.0 ? 1.0 : 0.0;
    const double lo = std::pow(4.0, k - 1), hi = std::pow(4.0, k);
    return (fsq > lo && fsq <= hi) ? 1.0 : 0.0;
  }
  const double absxi = std::sqrt(fsq);
  if (k == 0) return chi(absxi, 0);
  return chi(absxi, k) - chi(absxi, k - 1);
}

double shell_sum_weight(double fsq, int m, Profile profile) {
  if (m <= 0) return 0.0;
  if (profile == Profile::sharp) return fsq <= std::pow(4.0, m - 1) ? 1.0 : 0.0;
  return chi(std::sqrt(fsq), m - 1);
}

const std::vector<double>& cached_table(const GridSpec& g, int k, int kind) {
  static std::mutex mu;
  static std::map<TableKey, std::shared_ptr<const std::vector<double>>> cache;
  const TableKey key{g.dim, g.n, k, kind};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const auto& fsq = freq_sq_table(g);
    auto tab = std::make_shared<std::vector<double>>(g.total());
    const Profile prof = (kind % 2 == 0) ? Profile::sharp : Profile::smooth;
    for (std::size_t i = 0; i < fsq.size(); ++i)
      (*tab)[i] = kind < 2 ? shell_weight(fsq[i], k, prof)
                           : shell_sum_weight(fsq[i], k, prof);
    it = cache.emplace(key, std::move(tab)).first;
  }
  return *it->second;
}

SpectralField apply_table(const SpectralField& F,
                          const std::vector<double>& tab) {
  SpectralField r = F;
  for (int c = 0; c < r.components; ++c)
    kernels::active().apply_multiplier(
        tab.data(), reinterpret_cast<double*>(r.coeff[c].data()),
        r.coeff[c].size());
  return r;
}

// Fine-lattice target indices and weights of one coarse mode along one axis:
// the coarse Nyquist mode splits evenly between +n/2 and -n/2.
struct AxisMap {
  int idx[2];
  double w[2];
  int count;
};

AxisMap axis_pad_map(int i, int n) {
  const int fine_n = 2 * n;
  if (i == n / 2) return {{n / 2, fine_n - n / 2}, {0.5, 0.5}, 2};
  const int k = i < n / 2 ? i : i - n;
  return {{k >= 0 ? k : fine_n + k, 0}, {1.0, 0.0}, 1};
}

}  // namespace

// ---- transforms ------------------------------------------------------------

SpectralField transform(const Field& f) {
  SpectralField F(f.grid, f.components);
  const std::size_t total = f.grid.total();
  const double scale = 1.0 / static_cast<double>(total);
  std::vector<cplx> buf(total);
  for (int c = 0; c < f.components; ++c) {
    for (std::size_t i = 0; i < total; ++i) buf[i] = {f.values[c][i], 0.0};
    fft_all_axes(f.grid, buf.data(), /*forward=*/true, false);
    for (std::size_t i = 0; i < total; ++i) F.coeff[c][i] = buf[i] * scale;
  }
  return F;
}

Field inverse_transform(const SpectralField& F) {
  Field f(F.grid, F.components);
  const std::size_t total = F.grid.total();
  std::vector<cplx> buf(total);
  for (int c = 0; c < F.components; ++c) {
    buf = F.coeff[c];
    fft_all_axes(F.grid, buf.data(), /*forward=*/false, /*unscaled=*/true);
    for (std::size_t i = 0; i < total; ++i) f.values[c][i] = buf[i].real();
  }
  return f;
}

// ---- derivative ------------------------------------------------------------

SpectralField derivative(const SpectralField& F, int axis) {
  if (axis < 0 || axis >= F.grid.dim)
    throw AxisOutOfRange("derivative: axis " + std::to_string(axis) +
                         " on a " + std::to_string(F.grid.dim) + "D grid");
  SpectralField r = F;
  const int n = F.grid.n;
  auto rotate = [&](cplx& z, int k) {
    z = cplx(-k * z.imag(), k * z.real());  // z *= i k
  };
  for (int c = 0; c < F.components; ++c) {
    if (F.grid.dim == 1) {
      for (int i = 0; i < n; ++i) {
        if (i == n / 2) {
          r.coeff[c][i] = 0.0;  // Nyquist mode has no real-odd derivative
          continue;
        }
        rotate(r.coeff[c][i], F.grid.wavenumber(i));
      }
    } else {
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          const int i = axis == 0 ? ix : iy;
          cplx& z = r.coeff[c][static_cast<std::size_t>(iy) * n + ix];
          if (i == n / 2) {
            z = 0.0;
            continue;
          }
          rotate(z, F.grid.wavenumber(i));
        }
    }
  }
  return r;
}

Field derivative(const Field& f, int axis) {
  return inverse_transform(derivative(transform(f), axis));
}

// ---- projectors ------------------------------------------------------------

int shell_top(const GridSpec& g) { return g.shell_top(); }

bool shell_resolved(const GridSpec& g, int k) {
  return k >= 0 && k <= g.shell_top();
}

const std::vector<double>& freq_sq_table(const GridSpec& g) {
  static std::mutex mu;
  static std::map<std::pair<int, int>,
                  std::shared_ptr<const std::vector<double>>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({g.dim, g.n});
  if (it == cache.end()) {
    auto tab = std::make_shared<std::vector<double>>(g.total());
    if (g.dim == 1) {
      for (int i = 0; i < g.n; ++i) {
        const double k = g.wavenumber(i);
        (*tab)[i] = k * k;
      }
    } else {
      for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
          const double kx = g.wavenumber(ix), ky = g.wavenumber(iy);
          (*tab)[static_cast<std::size_t>(iy) * g.n + ix] = kx * kx + ky * ky;
        }
    }
    it = cache.emplace(std::make_pair(g.dim, g.n), std::move(tab)).first;
  }
  return *it->second;
}

const std::vector<double>& shell_multiplier(const GridSpec& g, int k,
                                            Profile profile) {
  return cached_table(g, k, profile == Profile::sharp ? 0 : 1);
}

std::vector<double> low_pass_multiplier(const GridSpec& g, double lambda,
                                        Profile profile) {
  const auto& fsq = freq_sq_table(g);
  std::vector<double> tab(fsq.size());
  if (profile == Profile::sharp) {
    const double l2 = lambda * lambda;
    for (std::size_t i = 0; i < fsq.size(); ++i)
      tab[i] = fsq[i] < l2 ? 1.0 : 0.0;
  } else {
    const double half = lambda / 2.0;
    for (std::size_t i = 0; i < fsq.size(); ++i) {
      const double a = std::sqrt(fsq[i]);
      tab[i] = a <= half  ? 1.0
               : a >= lambda ? 0.0
                             : 1.0 - cubic_ramp(a / half - 1.0);
    }
  }
  return tab;
}

SpectralField lp_project(const SpectralField& F, int k, Profile profile) {
  if (k < 0) throw InvalidArgument("lp_project: shell index must be >= 0");
  if (!shell_resolved(F.grid, k)) return SpectralField(F.grid, F.components);
  return apply_table(F, shell_multiplier(F.grid, k, profile));
}

ShellProjection lp_project(const Field& f, int k, Profile profile) {
  if (k < 0) throw InvalidArgument("lp_project: shell index must be >= 0");
  if (!shell_resolved(f.grid, k))
    return {Field(f.grid, f.components), false};
  return {inverse_transform(lp_project(transform(f), k, profile)), true};
}

SpectralField low_pass(const SpectralField& F, double lambda,
                       Profile profile) {
  if (lambda <= 0.0) throw InvalidArgument("low_pass: cutoff must be > 0");
  const auto tab = low_pass_multiplier(F.grid, lambda, profile);
  return apply_table(F, tab);
}

Field low_pass(const Field& f, double lambda, Profile profile) {
  return inverse_transform(low_pass(transform(f), lambda, profile));
}

SpectralField shell_low_pass(const SpectralField& F, int m, Profile profile) {
  if (m <= 0) return SpectralField(F.grid, F.components);
  if (m > F.grid.shell_top()) return F;
  return apply_table(F, cached_table(F.grid, m,
                                     profile == Profile::sharp ? 2 : 3));
}

// ---- padding and dealiased products ----------------------------------------

PaddedSamples pad_to_fine(const SpectralField& F) {
  const GridSpec& g = F.grid;
  const GridSpec fine(g.dim, 2 * g.n);
  PaddedSamples out{fine, F.components, {}};
  out.values.assign(F.components, std::vector<double>(fine.total(), 0.0));
  std::vector<cplx> buf(fine.total());
  for (int c = 0; c < F.components; ++c) {
    std::fill(buf.begin(), buf.end(), cplx{0.0, 0.0});
    if (g.dim == 1) {
      for (int i = 0; i < g.n; ++i) {
        const AxisMap mp = axis_pad_map(i, g.n);
        for (int t = 0; t < mp.count; ++t)
          buf[mp.idx[t]] += mp.w[t] * F.coeff[c][i];
      }
    } else {
      for (int iy = 0; iy < g.n; ++iy) {
        const AxisMap my = axis_pad_map(iy, g.n);
        for (int ix = 0; ix < g.n; ++ix) {
          const AxisMap mx = axis_pad_map(ix, g.n);
          const cplx v = F.coeff[c][static_cast<std::size_t>(iy) * g.n + ix];
          for (int ty = 0; ty < my.count; ++ty)
            for (int tx = 0; tx < mx.count; ++tx)
              buf[static_cast<std::size_t>(my.idx[ty]) * fine.n + mx.idx[tx]] +=
                  my.w[ty] * mx.w[tx] * v;
        }
      }
    }
    fft_all_axes(fine, buf.data(), /*forward=*/false, /*unscaled=*/true);
    for (std::size_t i = 0; i < fine.total(); ++i)
      out.values[c][i] = buf[i].real();
  }
  return out;
}

SpectralField truncate_from_fine(const PaddedSamples& p,
                                 const GridSpec& coarse) {
  if (p.fine.n != 2 * coarse.n || p.fine.dim != coarse.dim)
    throw GridMismatch("truncate_from_fine: padded grid is not 2x the target");
  SpectralField F(coarse, p.components);
  const std::size_t fine_total = p.fine.total();
  const double scale = 1.0 / static_cast<double>(fine_total);
  std::vector<cplx> buf(fine_total);
  for (int c = 0; c < p.components; ++c) {
    for (std::size_t i = 0; i < fine_total; ++i)
      buf[i] = {p.values[c][i], 0.0};
    fft_all_axes(p.fine, buf.data(), /*forward=*/true, false);
    if (coarse.dim == 1) {
      for (int i = 0; i < coarse.n; ++i) {
        const AxisMap mp = axis_pad_map(i, coarse.n);
        cplx acc = 0.0;  // refold: fine +-Nyquist both alias onto coarse -n/2
        for (int t = 0; t < mp.count; ++t) acc += buf[mp.idx[t]];
        F.coeff[c][i] = acc * scale;
      }
    } else {
      for (int iy = 0; iy < coarse.n; ++iy) {
        const AxisMap my = axis_pad_map(iy, coarse.n);
        for (int ix = 0; ix < coarse.n; ++ix) {
          const AxisMap mx = axis_pad_map(ix, coarse.n);
          cplx acc = 0.0;
          for (int ty = 0; ty < my.count; ++ty)
            for (int tx = 0; tx < mx.count; ++tx)
              acc += buf[static_cast<std::size_t>(my.idx[ty]) * p.fine.n +
                         mx.idx[tx]];
          F.coeff[c][static_cast<std::size_t>(iy) * coarse.n + ix] =
              acc * scale;
        }
      }
    }
  }
  return F;
}

Field dealiased_product(const Field& f, const Field& g) {
  require_same_grid(f.grid, g.grid, "dealiased_product");
  const int mf = f.components, mg = g.components;
  if (mf != mg && mf != 1 && mg != 1)
    throw ComponentMismatch(
        "dealiased_product: components must match or broadcast from 1");
  const int m = std::max(mf, mg);

  const PaddedSamples pf = pad_to_fine(transform(f));
  const PaddedSamples pg = pad_to_fine(transform(g));
  PaddedSamples prod{pf.fine, m, {}};
  prod.values.assign(m, std::vector<double>(pf.fine.total()));
  for (int c = 0; c < m; ++c)
    kernels::active().mul(pf.values[mf == 1 ? 0 : c].data(),
                          pg.values[mg == 1 ? 0 : c].data(),
                          prod.values[c].data(), pf.fine.total());
  return inverse_transform(truncate_from_fine(prod, f.grid));
}

double hermitian_defect(const SpectralField& F) {
  const GridSpec& g = F.grid;
  double worst = 0.0;
  auto mirror = [&](int i) { return i == 0 ? 0 : g.n - i; };
  for (int c = 0; c < F.components; ++c) {
    double num = 0.0, den = 0.0;
    if (g.dim == 1) {
      for (int i = 0; i < g.n; ++i) {
        const cplx d = F.coeff[c][i] - std::conj(F.coeff[c][mirror(i)]);
        num += std::norm(d);
        den += std::norm(F.coeff[c][i]);
      }
    } else {
      for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
          const cplx z = F.coeff[c][static_cast<std::size_t>(iy) * g.n + ix];
          const cplx zm =
              F.coeff[c][static_cast<std::size_t>(mirror(iy)) * g.n +
                         mirror(ix)];
          num += std::norm(z - std::conj(zm));
          den += std::norm(z);
        }
    }
    if (den > 0.0) worst = std::max(worst, std::sqrt(num / den));
  }
  return worst;
}

}  // namespace parahyp
