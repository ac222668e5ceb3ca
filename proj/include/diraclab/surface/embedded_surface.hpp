#pragma once

#include <functional>
#include <string>

#include "diraclab/surface/profile.hpp"

namespace dlab::surface {

enum class AmbientKind { euclidean, hyperbolic };

/// Geometry of the surface along the meridian at parameter t. The induced
/// metric is f^2 dt^2 + h^2 dphi^2.
struct SurfacePoint {
  double t = 0;
  double f = 0, h = 0;
  double k1 = 0, k2 = 0;  // meridian and parallel principal curvatures
  double H0 = 0;          // k1 + k2, outward normal
  double K = 0;           // intrinsic Gauss curvature
  double r = 0;           // distance from the origin o
};

/// An axisymmetric surface in R^3, or in hyperbolic space of curvature
/// -kappa^2 as the image of a Euclidean profile under exp_o (the profile's
/// polar coordinates become geodesic polar coordinates about o).
class EmbeddedSurface {
 public:
  static EmbeddedSurface euclidean(ProfilePtr profile);
  static EmbeddedSurface hyperbolic(ProfilePtr profile, double kappa);
  static EmbeddedSurface hyperbolic_geodesic_sphere(double r, double kappa);

  AmbientKind ambient() const { return kind_; }
  double kappa() const { return kappa_; }
  const Profile& profile() const { return *profile_; }
  ProfilePtr profile_ptr() const { return profile_; }
  std::string label() const;

  SurfacePoint at(double t) const;

  /// integral of g over the surface; g sees the meridian data only.
  double integrate(const std::function<double(const SurfacePoint&)>& g) const;
  double area() const;
  double total_mean_curvature() const;
  double mean_curvature_squared_integral() const;
  double min_mean_curvature() const;
  double max_mean_curvature() const;
  bool is_convex() const;

  void set_quadrature_nodes(int n) { n_quad_ = n; }
  int quadrature_nodes() const { return n_quad_; }

 private:
  EmbeddedSurface(AmbientKind kind, ProfilePtr profile, double kappa);

  AmbientKind kind_;
  ProfilePtr profile_;
  double kappa_ = 0;
  int n_quad_ = 192;
};

double total_mean_curvature(const EmbeddedSurface& s);

struct WeightedIntegrals {
  double cosh_area = 0;  // integral of cosh(kappa r)
  double cosh_H0 = 0;    // integral of H0 cosh(kappa r)
};

/// Throws PreconditionError for Euclidean surfaces.
WeightedIntegrals weighted_mean_curvature_integrals(const EmbeddedSurface& s);

/// Distance from o = (0, 0, 0, 1/kappa) of the hyperboloid point at
/// geodesic polar radius r, through the Lorentz inner product.
double hyperboloid_distance_from_origin(double r, double kappa);

}  // namespace dlab::surface
