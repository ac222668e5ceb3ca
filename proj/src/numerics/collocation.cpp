#include "diraclab/numerics/collocation.hpp"

#include <cmath>
#include <numbers>

#include "diraclab/errors.hpp"

namespace dlab::num {

CosineCollocation::CosineCollocation(int n) : n_(n) {
  if (n < 4) throw PreconditionError("CosineCollocation: need at least 4 nodes");
  constexpr double pi = std::numbers::pi;
  nodes_.resize(n);
  for (int j = 0; j < n; ++j) nodes_[j] = (j + 0.5) * pi / n;

  Eigen::MatrixXd c(n, n), c1(n, n), c2(n, n), analysis(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const double ct = std::cos(k * nodes_[j]), st = std::sin(k * nodes_[j]);
      c(j, k) = ct;
      c1(j, k) = -k * st;
      c2(j, k) = -double(k) * k * ct;
      analysis(k, j) = ct * (k == 0 ? 1.0 / n : 2.0 / n);
    }
  d1_ = c1 * analysis;
  d2_ = c2 * analysis;

  sine_weights_.resize(n);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int k = 1; k <= n / 2; ++k)
      s += std::cos(2.0 * k * nodes_[j]) / (4.0 * k * k - 1.0);
    sine_weights_[j] = 2.0 / n * (1.0 - 2.0 * s);
  }
}

Eigen::VectorXd CosineCollocation::coefficients(std::span<const double> values) const {
  if (static_cast<int>(values.size()) != n_)
    throw PreconditionError("CosineCollocation: value count mismatch");
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n_);
  for (int k = 0; k < n_; ++k) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += values[j] * std::cos(k * nodes_[j]);
    a[k] = s * (k == 0 ? 1.0 / n_ : 2.0 / n_);
  }
  return a;
}

double CosineCollocation::evaluate(const Eigen::VectorXd& coeffs, double t) const {
  double s = 0.0;
  for (int k = 0; k < coeffs.size(); ++k) s += coeffs[k] * std::cos(k * t);
  return s;
}

double CosineCollocation::evaluate_derivative(const Eigen::VectorXd& coeffs,
                                              double t) const {
  double s = 0.0;
  for (int k = 1; k < coeffs.size(); ++k) s -= k * coeffs[k] * std::sin(k * t);
  return s;
}

double CosineCollocation::evaluate_second_derivative(const Eigen::VectorXd& coeffs,
                                                     double t) const {
  double s = 0.0;
  for (int k = 1; k < coeffs.size(); ++k) s -= double(k) * k * coeffs[k] * std::cos(k * t);
  return s;
}

}  // namespace dlab::num
