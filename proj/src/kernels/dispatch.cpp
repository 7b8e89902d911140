#include <atomic>
#include <cstdlib>
#include <cstring>

#include "irlc/kernels.hpp"

namespace irlc::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("IRLC_FORCE_SCALAR"); env && std::strcmp(env, "0") != 0)
    return Isa::scalar;
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_available()) return;
  current().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

PairSums weighted_cdot(const double* w, const CVecSoA& a, const CVecSoA& b, std::size_t n) {
  return active_isa() == Isa::avx2 ? avx2::weighted_cdot(w, a, b, n)
                                   : scalar::weighted_cdot(w, a, b, n);
}

double weighted_dot(const double* a, const double* b, std::size_t n) {
  return active_isa() == Isa::avx2 ? avx2::weighted_dot(a, b, n) : scalar::weighted_dot(a, b, n);
}

}  // namespace irlc::kernels
