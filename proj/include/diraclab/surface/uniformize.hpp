#pragma once

#include <Eigen/Dense>

#include "diraclab/spectral/conformal_metric.hpp"
#include "diraclab/surface/embedded_surface.hpp"

namespace dlab::surface {

/// Isothermal data of an axisymmetric metric f(t)^2 dt^2 + h(t)^2 dphi^2.
/// s(t) = integral_{pi/2}^t f/h is held as ln tan(t/2) plus a cosine series.
class IsothermalCoordinate {
 public:
  IsothermalCoordinate(std::function<double(double)> f, std::function<double(double)> h,
                       int max_modes = 1024);
  double s(double t) const;
  double ds(double t) const;
  /// The t with s(t) = sigma.
  double invert(double sigma) const;
  int modes() const { return static_cast<int>(sine_.size()); }
  double h(double t) const { return h_(t); }

 private:
  std::function<double(double)> f_, h_;
  Eigen::VectorXd sine_;  // g(t) = f/h - 1/sin t = sum_k sine_[k-1] sin(k t)
  double offset_ = 0;     // makes s(pi/2) = 0
};

struct UniformizationResult {
  spectral::ConformalSphereMetric metric;
  double gauge = 0;          // s0: the equator theta = pi/2 maps to s = s0
  double area_residual = 0;  // |area(e^{2u} round) - area(surface)| / area(surface)
  int modes = 0;
};

/// Conformal exponent u with e^{2u} g_round isometric to the induced
/// metric: u(theta) = ln(h(t) / sin theta) where s(t) = ln tan(theta/2) + s0.
UniformizationResult uniformize_axisymmetric(const EmbeddedSurface& surface, double gauge = 0.0);

/// Same for an abstract axisymmetric metric f^2 dt^2 + h^2 dphi^2 on t in [0, pi].
UniformizationResult uniformize_axisymmetric(std::function<double(double)> f,
                                             std::function<double(double)> h, double area,
                                             double gauge = 0.0, std::string label = "metric");

}  // namespace dlab::surface
