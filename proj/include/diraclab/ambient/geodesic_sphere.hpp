#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "diraclab/ambient/chart.hpp"
#include "diraclab/numerics/quadrature.hpp"
#include "diraclab/spectral/conformal_metric.hpp"
#include "diraclab/spectral/dirac_spectrum.hpp"

namespace dlab::ambient {

struct SphereSampleOptions {
  int n_theta = 24;
  int n_phi = 48;
  int steps = 64;  // RK4 steps per geodesic
};

/// Induced data of a sphere parametrized by directions (theta, phi) about a
/// polar axis: gamma is the induced metric in those coordinates.
struct GeodesicSphereSample {
  Vec3 center = Vec3::Zero();
  Vec3 axis = Vec3::UnitZ();
  double radius = 0;
  num::SphereGrid grid;
  std::vector<Eigen::Matrix2d> gamma;  // theta-major
  std::vector<double> H;
  double area = 0;
  double total_mean_curvature = 0;
  double min_jacobi_ratio = 0;  // min over the grid of det(gamma) / (sin^2 theta r^4)
  std::optional<double> beta;   // (1/2) integral of the tangential trace of sigma
  /// Induced metric at any direction, recomputed on demand.
  std::function<Eigen::Matrix2d(double theta, double phi)> metric_at;
};

/// End point and velocity after unit-speed geodesic flow for time r.
struct GeodesicEnd {
  Vec3 x, v;
};
GeodesicEnd shoot_geodesic(const AmbientChart& chart, const Vec3& p, const Vec3& v, double r,
                           int steps);

/// Unit direction (for g at p) of the Euclidean unit vector w.
Vec3 unit_direction(const AmbientChart& chart, const Vec3& p, const Vec3& w);

/// exp_p of the sphere of radius r, with Jacobi fields integrated along
/// each geodesic. The polar axis defaults to p / |p| (z when p = 0), the
/// symmetry axis of the spherically symmetric charts.
/// Throws ResolutionError (radius too large) when the Jacobi determinant
/// degenerates and NumericalError on non-finite integration.
GeodesicSphereSample geodesic_sphere(ChartPtr chart, const Vec3& p, double r,
                                     const SphereSampleOptions& options = {},
                                     std::optional<Vec3> axis = std::nullopt);

/// The coordinate sphere |x| = r. Throws DomainError inside the excluded
/// region and PreconditionError for charts that are not asymptotically flat.
GeodesicSphereSample coordinate_sphere(ChartPtr chart, double r,
                                       const SphereSampleOptions& options = {});

/// Conformal exponent over the round sphere for the sample's induced
/// metric: directly when gamma is conformal to round in the direction
/// coordinates, by uniformization when it is diagonal and axisymmetric.
/// Other metrics throw PreconditionError.
spectral::ConformalSphereMetric sphere_conformal_metric(const GeodesicSphereSample& sample);

double sphere_lambda1(const GeodesicSphereSample& sample,
                      const spectral::SpectrumOptions& options = {});

}  // namespace dlab::ambient
