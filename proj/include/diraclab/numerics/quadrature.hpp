#pragma once

#include <functional>
#include <vector>

namespace dlab::num {

struct GaussRule {
  std::vector<double> nodes;    // ascending in [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of
/// degree <= 2n - 1.
GaussRule gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre integral of `f` over [a, b] split into panels
/// no longer than `max_panel`.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int points_per_panel = 24, double max_panel = 0.25);

/// Product grid on the unit sphere: Gauss-Legendre in cos(theta) times a
/// uniform azimuth grid. Theta is ordered north to south (cos descending).
struct SphereGrid {
  std::vector<double> cos_theta;
  std::vector<double> theta;
  std::vector<double> weight;  // Gauss weights in cos(theta)
  int n_phi = 1;

  int n_theta() const { return static_cast<int>(theta.size()); }
  double phi(int p) const;
  /// Weight of node (i, p) for integrals against the round area form.
  double area_weight(int i) const;
};

SphereGrid make_sphere_grid(int n_theta, int n_phi);

/// Barycentric Lagrange interpolation through arbitrary distinct nodes.
class BarycentricInterpolant {
 public:
  BarycentricInterpolant() = default;
  BarycentricInterpolant(std::vector<double> nodes, std::vector<double> values);
  double operator()(double x) const;
  const std::vector<double>& nodes() const { return nodes_; }

 private:
  std::vector<double> nodes_, values_, weights_;
};

}  // namespace dlab::num
