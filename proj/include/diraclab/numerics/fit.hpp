#pragma once

#include <span>
#include <vector>

namespace dlab::num {

/// Least-squares fit of y against sum_k c_k x^{p_k}.
struct PowerFit {
  std::vector<int> powers;
  std::vector<double> coefficients;
  std::vector<double> std_errors;  // from the residual variance
  double residual_rms = 0.0;
  double max_abs_residual = 0.0;

  double coefficient(int power) const;
  double std_error(int power) const;
  double evaluate(double x) const;
};

PowerFit fit_powers(std::span<const double> x, std::span<const double> y,
                    std::span<const int> powers);

/// Slope of log|y| against log|x| by least squares.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// n equally spaced values from a to b inclusive.
std::vector<double> linspace(double a, double b, int n);

}  // namespace dlab::num
