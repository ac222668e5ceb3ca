#include "diraclab/spectral/wigner.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

#include "diraclab/errors.hpp"
#include "diraclab/simd/kernels.hpp"

namespace dlab::spectral {

namespace {

// d^j_{m,a} at j = |m| in closed form (first index at its extreme value).
double seed_value(int two_m, int two_a, double beta) {
  const int two_j = std::abs(two_m);
  const int jpa = (two_j + two_a) / 2;  // j + a
  const int jma = (two_j - two_a) / 2;  // j - a
  const double log_binom =
      std::lgamma(two_j + 1.0) - std::lgamma(jpa + 1.0) - std::lgamma(jma + 1.0);
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  double value;
  if (two_m > 0 || two_j == 0) {
    value = std::exp(0.5 * log_binom) * std::pow(c, jpa) * std::pow(s, jma);
    if (jma % 2 != 0) value = -value;
  } else {
    value = std::exp(0.5 * log_binom) * std::pow(c, jma) * std::pow(s, jpa);
  }
  return value;
}

}  // namespace

Eigen::MatrixXd wigner_d_ladder(int two_m, int two_mp, int two_j_max,
                                std::span<const double> beta) {
  if (std::abs(two_m) < std::abs(two_mp))
    throw PreconditionError("wigner_d_ladder: requires |m| >= |m'|");
  if ((two_m - two_mp) % 2 != 0 || (two_j_max - two_m) % 2 != 0)
    throw PreconditionError("wigner_d_ladder: inconsistent half-integer parity");
  const int two_j_min = std::abs(two_m);
  if (two_j_max < two_j_min)
    throw PreconditionError("wigner_d_ladder: j_max below |m|");

  const int rows = (two_j_max - two_j_min) / 2 + 1;
  const auto n = static_cast<Eigen::Index>(beta.size());
  // Row-major so each j level is contiguous for the SIMD recurrence.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> d(rows, n);

  std::vector<double> cosb(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cosb[i] = std::cos(beta[i]);
    d(0, i) = seed_value(two_m, two_mp, beta[i]);
  }
  if (rows == 1) return d;

  const double m = 0.5 * two_m, mp = 0.5 * two_mp;
  std::vector<double> zeros(n, 0.0);
  for (int r = 0; r + 1 < rows; ++r) {
    const double j = 0.5 * two_j_min + r;
    const double jp = j + 1.0;
    const double norm = std::sqrt((jp * jp - m * m) * (jp * jp - mp * mp));
    std::span<double> out(&d(r + 1, 0), n);
    std::span<const double> prev(&d(r, 0), n);
    std::span<const double> prev2 =
        r > 0 ? std::span<const double>(&d(r - 1, 0), n) : std::span<const double>(zeros);
    if (j == 0.0) {
      // Only reached for m = m' = 0: d^1_{00} = cos(beta).
      simd::three_term_step(out, prev, prev2, cosb, 1.0, 0.0, 0.0);
      continue;
    }
    const double a = jp * (2.0 * j + 1.0) / norm;
    const double b = -a * m * mp / (j * jp);
    const double c = jp * std::sqrt((j * j - m * m) * (j * j - mp * mp)) / (j * norm);
    simd::three_term_step(out, prev, prev2, cosb, a, b, c);
  }
  return d;
}

}  // namespace dlab::spectral
