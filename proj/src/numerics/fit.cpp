#include "diraclab/numerics/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "diraclab/errors.hpp"

namespace dlab::num {

double PowerFit::coefficient(int power) const {
  for (std::size_t k = 0; k < powers.size(); ++k)
    if (powers[k] == power) return coefficients[k];
  throw PreconditionError("PowerFit: power not in ansatz");
}

double PowerFit::std_error(int power) const {
  for (std::size_t k = 0; k < powers.size(); ++k)
    if (powers[k] == power) return std_errors[k];
  throw PreconditionError("PowerFit: power not in ansatz");
}

double PowerFit::evaluate(double x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < powers.size(); ++k)
    s += coefficients[k] * std::pow(x, powers[k]);
  return s;
}

PowerFit fit_powers(std::span<const double> x, std::span<const double> y,
                    std::span<const int> powers) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const auto p = static_cast<Eigen::Index>(powers.size());
  if (n != static_cast<Eigen::Index>(y.size()) || n < p || p == 0)
    throw PreconditionError("fit_powers: need at least as many samples as terms");

  // Column scaling keeps the Vandermonde-like system well conditioned.
  Eigen::MatrixXd a(n, p);
  Eigen::VectorXd b(n), scale(p);
  for (Eigen::Index k = 0; k < p; ++k) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      a(i, k) = std::pow(x[i], powers[k]);
      s = std::max(s, std::abs(a(i, k)));
    }
    scale[k] = s > 0 ? s : 1.0;
    a.col(k) /= scale[k];
  }
  for (Eigen::Index i = 0; i < n; ++i) b[i] = y[i];

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::VectorXd c = qr.solve(b);
  const Eigen::VectorXd r = a * c - b;

  PowerFit fit;
  fit.powers.assign(powers.begin(), powers.end());
  fit.coefficients.resize(p);
  fit.std_errors.resize(p);
  fit.residual_rms = std::sqrt(r.squaredNorm() / n);
  fit.max_abs_residual = r.cwiseAbs().maxCoeff();

  const double dof = static_cast<double>(std::max<Eigen::Index>(n - p, 1));
  const double sigma2 = r.squaredNorm() / dof;
  const Eigen::MatrixXd cov = (a.transpose() * a).inverse() * sigma2;
  for (Eigen::Index k = 0; k < p; ++k) {
    fit.coefficients[k] = c[k] / scale[k];
    fit.std_errors[k] = std::sqrt(std::max(cov(k, k), 0.0)) / scale[k];
  }
  return fit;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw PreconditionError("loglog_slope: need two or more samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(std::abs(x[i])), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw PreconditionError("linspace: n must be >= 1");
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace dlab::num
