#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "diraclab/numerics/quadrature.hpp"

namespace dlab::spectral {

struct NodalSamples;

/// A metric e^{2u} g_round on the 2-sphere, held as the conformal exponent
/// u(theta, phi). Axisymmetric metrics depend on theta only and unlock the
/// block-diagonal fast paths of the spectral solver.
class ConformalSphereMetric {
 public:
  using AxisymmetricField = std::function<double(double theta)>;
  using Field = std::function<double(double theta, double phi)>;

  /// Round sphere of the given radius (u = ln radius).
  static ConformalSphereMetric round(double radius = 1.0);
  static ConformalSphereMetric axisymmetric(AxisymmetricField u, std::string label = "axisymmetric");
  static ConformalSphereMetric general(Field u, std::string label = "general");
  /// Interpolates nodal samples on a Gauss-Legendre x uniform-azimuth grid.
  static ConformalSphereMetric from_samples(const NodalSamples& samples);

  double u(double theta, double phi = 0.0) const;
  bool is_axisymmetric() const { return axisymmetric_; }
  /// True only for metrics built by round(); such metrics are exactly constant.
  bool is_constant() const { return constant_; }
  const std::string& label() const { return label_; }

  /// u at every node of grid, theta-major. Axisymmetric metrics are
  /// evaluated once per theta row.
  std::vector<double> sample(const num::SphereGrid& grid) const;

  /// Total area of e^{2u} g_round.
  double area(int n_theta = 160) const;

  /// Gauss curvature K = e^{-2u} (1 - Laplacian u) at the grid nodes
  /// (theta-major), with the round Laplacian applied spectrally.
  std::vector<double> gauss_curvature(const num::SphereGrid& grid) const;

  /// Pullback by the rotation R: u_R(w) = u(R^T w). Never axisymmetric.
  ConformalSphereMetric rotated(const Eigen::Matrix3d& rotation) const;

  /// Pullback by the conformal boost sigma -> sigma + a in the Mercator
  /// coordinate sigma = ln tan(theta / 2). The result is isometric to *this.
  ConformalSphereMetric mobius_boost(double a) const;

 private:
  ConformalSphereMetric() = default;

  std::shared_ptr<const Field> field_;
  bool axisymmetric_ = false;
  bool constant_ = false;
  std::string label_;
};

/// Round Laplacian of samples on a Gauss-Legendre grid, by spherical
/// harmonic analysis and synthesis (bands up to n_theta - 1 and the
/// azimuthal Nyquist limit).
std::vector<double> round_laplacian(const num::SphereGrid& grid,
                                    const std::vector<double>& samples);

}  // namespace dlab::spectral
