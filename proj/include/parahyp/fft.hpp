#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace parahyp {

// Immutable radix-2 plan (bit-reversal permutation + per-stage twiddles),
// shareable across threads. Plans are cached per size for the process
// lifetime; execution mutates only caller-owned buffers.
struct FftPlan {
  int n;
  std::vector<int> bitrev;
  std::vector<std::complex<double>> twiddle;  // stage-major, forward sign

  explicit FftPlan(int n_);
};

std::shared_ptr<const FftPlan> fft_plan(int n);

// In-place transforms on length-n complex data.
//   forward:  X[k] = sum_j x[j] exp(-2 pi i j k / n)      (no scaling)
//   inverse:  x[j] = (1/n) sum_k X[k] exp(+2 pi i j k / n)
void fft_forward(const FftPlan& plan, std::complex<double>* a);
void fft_inverse(const FftPlan& plan, std::complex<double>* a);
// Conjugate butterflies without the 1/n scale: evaluates a Fourier series
// sum_k G_k exp(+2 pi i j k / n) directly from series coefficients.
void fft_inverse_unscaled(const FftPlan& plan, std::complex<double>* a);

}  // namespace parahyp
