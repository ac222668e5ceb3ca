#pragma once

// Data-parallel inner loops shared by the spectral assembly and the
// Wigner recurrences. Every kernel has a scalar reference version and an
// AVX2/FMA version; the public entry points dispatch at runtime.
//
// Set DIRACLAB_SIMD=scalar in the environment to force the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace dlab::simd {

enum class Isa { scalar, avx2 };

/// True when the running CPU supports AVX2 and FMA and the AVX2 kernels
/// were compiled in.
bool avx2_available() noexcept;

/// The instruction set the dispatching entry points currently use.
Isa active_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;

/// Override the dispatch choice (tests only). Requesting avx2 on a CPU
/// without it falls back to scalar.
void force_isa(Isa isa) noexcept;

// sum_i w[i] * x[i] * y[i]
double weighted_dot(std::span<const double> w, std::span<const double> x,
                    std::span<const double> y);

// sum_i w[i] * x[i]
double dot(std::span<const double> w, std::span<const double> x);

// out[i] = (a * x[i] + b) * prev[i] - c * prev2[i]
void three_term_step(std::span<double> out, std::span<const double> prev,
                     std::span<const double> prev2, std::span<const double> x,
                     double a, double b, double c);

// out[i] = x[i] * y[i]
void hadamard(std::span<double> out, std::span<const double> x,
              std::span<const double> y);

namespace scalar {
double weighted_dot(const double* w, const double* x, const double* y,
                    std::size_t n) noexcept;
double dot(const double* w, const double* x, std::size_t n) noexcept;
void three_term_step(double* out, const double* prev, const double* prev2,
                     const double* x, double a, double b, double c,
                     std::size_t n) noexcept;
void hadamard(double* out, const double* x, const double* y,
              std::size_t n) noexcept;
}  // namespace scalar

namespace avx2 {
double weighted_dot(const double* w, const double* x, const double* y,
                    std::size_t n) noexcept;
double dot(const double* w, const double* x, std::size_t n) noexcept;
void three_term_step(double* out, const double* prev, const double* prev2,
                     const double* x, double a, double b, double c,
                     std::size_t n) noexcept;
void hadamard(double* out, const double* x, const double* y,
              std::size_t n) noexcept;
}  // namespace avx2

}  // namespace dlab::simd
