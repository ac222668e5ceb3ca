#include "diraclab/simd/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <cstring>

namespace dlab::simd {

namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("DIRACLAB_SIMD");
      env != nullptr && std::strcmp(env, "scalar") == 0)
    return Isa::scalar;
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool avx2_available() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

void force_isa(Isa isa) noexcept {
  if (isa == Isa::avx2 && !avx2_available()) isa = Isa::scalar;
  current().store(isa, std::memory_order_relaxed);
}

double weighted_dot(std::span<const double> w, std::span<const double> x,
                    std::span<const double> y) {
  assert(w.size() == x.size() && x.size() == y.size());
  return active_isa() == Isa::avx2
             ? avx2::weighted_dot(w.data(), x.data(), y.data(), w.size())
             : scalar::weighted_dot(w.data(), x.data(), y.data(), w.size());
}

double dot(std::span<const double> w, std::span<const double> x) {
  assert(w.size() == x.size());
  return active_isa() == Isa::avx2 ? avx2::dot(w.data(), x.data(), w.size())
                                   : scalar::dot(w.data(), x.data(), w.size());
}

void three_term_step(std::span<double> out, std::span<const double> prev,
                     std::span<const double> prev2, std::span<const double> x,
                     double a, double b, double c) {
  assert(out.size() == prev.size() && prev.size() == prev2.size() &&
         prev.size() == x.size());
  if (active_isa() == Isa::avx2)
    avx2::three_term_step(out.data(), prev.data(), prev2.data(), x.data(), a, b,
                          c, out.size());
  else
    scalar::three_term_step(out.data(), prev.data(), prev2.data(), x.data(), a,
                            b, c, out.size());
}

void hadamard(std::span<double> out, std::span<const double> x,
              std::span<const double> y) {
  assert(out.size() == x.size() && x.size() == y.size());
  if (active_isa() == Isa::avx2)
    avx2::hadamard(out.data(), x.data(), y.data(), out.size());
  else
    scalar::hadamard(out.data(), x.data(), y.data(), out.size());
}

}  // namespace dlab::simd
