#include "diraclab/simd/kernels.hpp"

namespace dlab::simd::scalar {

double weighted_dot(const double* w, const double* x, const double* y,
                    std::size_t n) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * x[i] * y[i];
  return acc;
}

double dot(const double* w, const double* x, std::size_t n) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * x[i];
  return acc;
}

void three_term_step(double* out, const double* prev, const double* prev2,
                     const double* x, double a, double b, double c,
                     std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = (a * x[i] + b) * prev[i] - c * prev2[i];
}

void hadamard(double* out, const double* x, const double* y,
              std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

}  // namespace dlab::simd::scalar
