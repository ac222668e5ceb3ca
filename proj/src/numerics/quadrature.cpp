#include "diraclab/numerics/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "diraclab/errors.hpp"

namespace dlab::num {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("gauss_legendre: n must be >= 1");
  GaussRule rule;
  if (n == 1) {
    rule.nodes = {0.0};
    rule.weights = {2.0};
    return rule;
  }
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Returns (P_n(x), P_n'(x)).
  auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussRule gauss_legendre(int n, double a, double b) {
  GaussRule rule = gauss_legendre(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int points_per_panel, double max_panel) {
  if (a == b) return 0.0;
  const int panels =
      std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / max_panel)));
  static thread_local GaussRule cached;
  if (static_cast<int>(cached.nodes.size()) != points_per_panel)
    cached = gauss_legendre(points_per_panel);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    double part = 0.0;
    for (int i = 0; i < points_per_panel; ++i)
      part += cached.weights[i] * f(mid + 0.5 * h * cached.nodes[i]);
    sum += 0.5 * h * part;
  }
  return sum;
}

double SphereGrid::phi(int p) const {
  return 2.0 * std::numbers::pi * p / n_phi;
}

double SphereGrid::area_weight(int i) const {
  return weight[i] * 2.0 * std::numbers::pi / n_phi;
}

SphereGrid make_sphere_grid(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1)
    throw PreconditionError("make_sphere_grid: node counts must be positive");
  const GaussRule rule = gauss_legendre(n_theta);
  SphereGrid grid;
  grid.n_phi = n_phi;
  grid.cos_theta.resize(n_theta);
  grid.theta.resize(n_theta);
  grid.weight.resize(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    const int src = n_theta - 1 - i;  // north first
    grid.cos_theta[i] = rule.nodes[src];
    grid.theta[i] = std::acos(rule.nodes[src]);
    grid.weight[i] = rule.weights[src];
  }
  return grid;
}

BarycentricInterpolant::BarycentricInterpolant(std::vector<double> nodes,
                                               std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (nodes_.size() != values_.size() || nodes_.empty())
    throw PreconditionError("BarycentricInterpolant: size mismatch");
  const std::size_t n = nodes_.size();
  weights_.assign(n, 1.0);
  // Log-scaled products keep the weights finite for a few hundred nodes.
  std::vector<double> logw(n, 0.0);
  std::vector<int> sign(n, 1);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = nodes_[j] - nodes_[k];
      logw[j] -= std::log(std::abs(d));
      if (d < 0) sign[j] = -sign[j];
    }
  double shift = logw[0];
  for (double l : logw) shift = std::max(shift, l);
  for (std::size_t j = 0; j < n; ++j)
    weights_[j] = sign[j] * std::exp(logw[j] - shift);
}

double BarycentricInterpolant::operator()(double x) const {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double d = x - nodes_[j];
    if (d == 0.0) return values_[j];
    const double t = weights_[j] / d;
    num += t * values_[j];
    den += t;
  }
  return num / den;
}

}  // namespace dlab::num
