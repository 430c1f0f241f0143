#include "parahyp/kernels.hpp"

#include <cstdlib>

namespace parahyp::kernels {
namespace {

const Backend* detect() {
  if (const char* env = std::getenv("PARAHYP_KERNELS")) {
    if (const Backend* b = by_name(env)) return b;
    // Unknown or unavailable name: fall through to autodetection rather than
    // fail a whole run over an env var typo.
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return &avx2_backend();
#endif
#if defined(__aarch64__)
  return &neon_backend();
#endif
  return &scalar_backend();
}

}  // namespace

const Backend& active() {
  static const Backend* chosen = detect();
  return *chosen;
}

const Backend* by_name(const std::string& name) {
  if (name == "scalar") return &scalar_backend();
#if defined(__x86_64__) || defined(_M_X64)
  if (name == "avx2" && __builtin_cpu_supports("avx2")) return &avx2_backend();
#endif
#if defined(__aarch64__)
  if (name == "neon") return &neon_backend();
#endif
  return nullptr;
}

}  // namespace parahyp::kernels
