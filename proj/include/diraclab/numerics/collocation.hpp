#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace dlab::num {

/// Even cosine-series collocation on t in [0, pi] at the interior nodes
/// t_j = (j + 1/2) pi / N. Axisymmetric smooth functions on the sphere are
/// smooth even functions of the polar angle, so this basis resolves them
/// spectrally without pole singularities.
class CosineCollocation {
 public:
  explicit CosineCollocation(int n);

  int size() const { return n_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const Eigen::MatrixXd& d1() const { return d1_; }
  const Eigen::MatrixXd& d2() const { return d2_; }

  /// Fejer weights: sum_j W_j g(t_j) ~ integral_0^pi g(t) sin(t) dt.
  const std::vector<double>& sine_weights() const { return sine_weights_; }

  Eigen::VectorXd coefficients(std::span<const double> values) const;
  double evaluate(const Eigen::VectorXd& coeffs, double t) const;
  double evaluate_derivative(const Eigen::VectorXd& coeffs, double t) const;
  double evaluate_second_derivative(const Eigen::VectorXd& coeffs, double t) const;

 private:
  int n_;
  std::vector<double> nodes_;
  std::vector<double> sine_weights_;
  Eigen::MatrixXd d1_, d2_;
};

}  // namespace dlab::num
