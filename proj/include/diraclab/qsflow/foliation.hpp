#pragma once

#include <Eigen/Dense>

#include "diraclab/numerics/collocation.hpp"
#include "diraclab/surface/embedded_surface.hpp"

namespace dlab::qsflow {

/// Parallel surfaces Sigma_rho = {X + rho N} of a convex axisymmetric
/// surface in R^3, sampled at the cosine collocation nodes of the
/// meridian parameter t.
class ExteriorFoliation {
 public:
  /// Throws PreconditionError for non-Euclidean or non-convex bases.
  ExteriorFoliation(surface::EmbeddedSurface base, int nodes);

  /// Geometry of Sigma_rho at the nodes. The metric is
  /// f^2 dt^2 + (eta sin t)^2 dphi^2.
  struct Level {
    double rho = 0;
    Eigen::VectorXd f, eta, k1, k2, H, K;
    Eigen::VectorXd area_weight;  // sum_j area_weight_j g_j = integral of g over Sigma_rho
    Eigen::MatrixXd laplacian;    // Laplace-Beltrami on axisymmetric functions
  };
  Level level(double rho) const;

  /// Pointwise geometry of Sigma_rho at an arbitrary meridian parameter.
  struct Point {
    double f = 0, h = 0, k1 = 0, k2 = 0, H = 0, K = 0;
  };
  Point at(double rho, double t) const;

  int size() const { return coll_.size(); }
  const num::CosineCollocation& collocation() const { return coll_; }
  const surface::EmbeddedSurface& base() const { return base_; }
  double diameter() const { return diameter_; }

 private:
  surface::EmbeddedSurface base_;
  num::CosineCollocation coll_;
  Eigen::VectorXd f_, eta_, k1_, k2_;
  Eigen::VectorXd df_, deta_, dk1_, dk2_;
  double diameter_ = 0;
};

}  // namespace dlab::qsflow
