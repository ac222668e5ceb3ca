#pragma once

// Wigner small-d by the explicit factorial sum, in long double.

#include <algorithm>
#include <cmath>

namespace oracle {

inline long double lfact(int n) { return std::lgamma(static_cast<long double>(n) + 1); }

// d^j_{a,b}(beta) with doubled quantum numbers:
//   sum_s (-1)^{a-b+s} sqrt((j+a)!(j-a)!(j+b)!(j-b)!)
//         / ((j+b-s)! s! (a-b+s)! (j-a-s)!) cos^{2j+b-a-2s} sin^{a-b+2s}
inline double wigner_d(int two_j, int two_a, int two_b, double beta) {
  const int jpa = (two_j + two_a) / 2, jma = (two_j - two_a) / 2;
  const int jpb = (two_j + two_b) / 2, jmb = (two_j - two_b) / 2;
  const int amb = (two_a - two_b) / 2;
  const long double c = std::cos(static_cast<long double>(beta) / 2);
  const long double s = std::sin(static_cast<long double>(beta) / 2);
  const long double pre = 0.5L * (lfact(jpa) + lfact(jma) + lfact(jpb) + lfact(jmb));
  long double sum = 0;
  for (int k = std::max(0, -amb); k <= std::min(jpb, jma); ++k) {
    const long double logden = lfact(jpb - k) + lfact(k) + lfact(amb + k) + lfact(jma - k);
    const long double term = std::exp(pre - logden) * std::pow(c, jpb + jma - 2 * k) *
                             std::pow(s, amb + 2 * k);
    sum += ((amb + k) % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum);
}

}  // namespace oracle
