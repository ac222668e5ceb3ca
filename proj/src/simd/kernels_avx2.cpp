#include "diraclab/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define DLAB_HAVE_AVX2_TU 1
#define DLAB_AVX2 __attribute__((target("avx2,fma")))
#endif

namespace dlab::simd::avx2 {

#ifdef DLAB_HAVE_AVX2_TU

namespace {
DLAB_AVX2 inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}
}  // namespace

DLAB_AVX2 double weighted_dot(const double* w, const double* x,
                              const double* y, std::size_t n) noexcept {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d p0 = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i));
    __m256d p1 =
        _mm256_mul_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(x + i + 4));
    acc0 = _mm256_fmadd_pd(p0, _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(p1, _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d p = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i));
    acc0 = _mm256_fmadd_pd(p, _mm256_loadu_pd(y + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += w[i] * x[i] * y[i];
  return acc;
}

DLAB_AVX2 double dot(const double* w, const double* x, std::size_t n) noexcept {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i + 4),
                           _mm256_loadu_pd(x + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i), acc0);
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += w[i] * x[i];
  return acc;
}

DLAB_AVX2 void three_term_step(double* out, const double* prev,
                               const double* prev2, const double* x, double a,
                               double b, double c, std::size_t n) noexcept {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d coef = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vb);
    __m256d t = _mm256_mul_pd(vc, _mm256_loadu_pd(prev2 + i));
    _mm256_storeu_pd(out + i,
                     _mm256_fmsub_pd(coef, _mm256_loadu_pd(prev + i), t));
  }
  for (; i < n; ++i) out[i] = (a * x[i] + b) * prev[i] - c * prev2[i];
}

DLAB_AVX2 void hadamard(double* out, const double* x, const double* y,
                        std::size_t n) noexcept {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i,
                     _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) out[i] = x[i] * y[i];
}

#else

// Non-x86 builds: the AVX2 entry points alias the reference kernels and
// avx2_available() reports false, so they are never selected.
double weighted_dot(const double* w, const double* x, const double* y,
                    std::size_t n) noexcept {
  return scalar::weighted_dot(w, x, y, n);
}
double dot(const double* w, const double* x, std::size_t n) noexcept {
  return scalar::dot(w, x, n);
}
void three_term_step(double* out, const double* prev, const double* prev2,
                     const double* x, double a, double b, double c,
                     std::size_t n) noexcept {
  scalar::three_term_step(out, prev, prev2, x, a, b, c, n);
}
void hadamard(double* out, const double* x, const double* y,
              std::size_t n) noexcept {
  scalar::hadamard(out, x, y, n);
}

#endif

}  // namespace dlab::simd::avx2
