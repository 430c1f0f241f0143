#include "parahyp/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "parahyp/errors.hpp"

namespace parahyp {

FftPlan::FftPlan(int n_) : n(n_) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw InvalidArgument("FftPlan: length must be a power of two >= 2");

  bitrev.resize(n);
  int log2n = 0;
  while ((1 << log2n) < n) ++log2n;
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (int b = 0; b < log2n; ++b) r |= ((i >> b) & 1) << (log2n - 1 - b);
    bitrev[i] = r;
  }

  // Stage-major twiddles: stage with half-size h contributes h factors
  // exp(-i pi j / h), j = 0..h-1. Total n-1 entries.
  twiddle.reserve(n - 1);
  for (int h = 1; h < n; h *= 2)
    for (int j = 0; j < h; ++j) {
      const double ang = -M_PI * j / h;
      twiddle.emplace_back(std::cos(ang), std::sin(ang));
    }
}

std::shared_ptr<const FftPlan> fft_plan(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const FftPlan>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto plan = std::make_shared<const FftPlan>(n);
  cache.emplace(n, plan);
  return plan;
}

namespace {

// conj=false: forward butterflies; conj=true: inverse (twiddles conjugated).
template <bool conj>
void butterflies(const FftPlan& plan, std::complex<double>* a) {
  const int n = plan.n;
  for (int i = 0; i < n; ++i) {
    const int r = plan.bitrev[i];
    if (i < r) std::swap(a[i], a[r]);
  }
  const std::complex<double>* tw = plan.twiddle.data();
  for (int h = 1; h < n; h *= 2) {
    for (int base = 0; base < n; base += 2 * h) {
      for (int j = 0; j < h; ++j) {
        const double wr = tw[j].real();
        const double wi = conj ? -tw[j].imag() : tw[j].imag();
        std::complex<double>& lo = a[base + j];
        std::complex<double>& hi = a[base + j + h];
        // Manual complex product: keeps the loop free of library-call
        // complex semantics in the hot path.
        const double tr = wr * hi.real() - wi * hi.imag();
        const double ti = wr * hi.imag() + wi * hi.real();
        hi = {lo.real() - tr, lo.imag() - ti};
        lo = {lo.real() + tr, lo.imag() + ti};
      }
    }
    tw += h;
  }
}

}  // namespace

void fft_forward(const FftPlan& plan, std::complex<double>* a) {
  butterflies<false>(plan, a);
}

void fft_inverse(const FftPlan& plan, std::complex<double>* a) {
  butterflies<true>(plan, a);
  const double scale = 1.0 / plan.n;
  for (int i = 0; i < plan.n; ++i) a[i] *= scale;
}

void fft_inverse_unscaled(const FftPlan& plan, std::complex<double>* a) {
  butterflies<true>(plan, a);
}

}  // namespace parahyp
