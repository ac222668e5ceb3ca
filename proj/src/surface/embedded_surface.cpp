#include "diraclab/surface/embedded_surface.hpp"

#include <cmath>
#include <numbers>

#include "diraclab/errors.hpp"
#include "diraclab/numerics/quadrature.hpp"

namespace dlab::surface {

namespace {

constexpr double kPi = std::numbers::pi;

SurfacePoint euclidean_point(const ProfileJet& j, double t) {
  SurfacePoint p;
  p.t = t;
  p.f = std::hypot(j.drho, j.dz);
  p.h = j.rho;
  p.k1 = -(j.drho * j.d2z - j.dz * j.d2rho) / (p.f * p.f * p.f);
  p.k2 = p.h > 1e-13 * p.f ? -j.dz / (p.f * p.h) : p.k1;
  p.H0 = p.k1 + p.k2;
  p.K = p.k1 * p.k2;
  p.r = std::hypot(j.rho, j.z);
  return p;
}

SurfacePoint hyperbolic_point(const ProfileJet& j, double t, double kappa) {
  const double r = std::hypot(j.rho, j.z);
  if (!(r > 0)) throw GeometryError("hyperbolic surface passes through the origin o");
  const double r1 = (j.rho * j.drho + j.z * j.dz) / r;
  const double r2 = (j.drho * j.drho + j.rho * j.d2rho + j.dz * j.dz + j.z * j.d2z - r1 * r1) / r;
  const double th = std::atan2(j.rho, j.z);
  const double th1 = (j.z * j.drho - j.rho * j.dz) / (r * r);
  const double th2 = (j.z * j.d2rho - j.rho * j.d2z) / (r * r) - 2 * r1 * th1 / r;

  const double S = std::sinh(kappa * r) / kappa;
  const double dS = std::cosh(kappa * r);

  SurfacePoint p;
  p.t = t;
  p.f = std::sqrt(r1 * r1 + S * S * th1 * th1);
  p.h = S * std::sin(th);
  const double Nr = S * th1 / p.f;
  const double Nth = -r1 / (S * p.f);
  const double ar = r2 - S * dS * th1 * th1;
  const double ath = th2 + 2 * (dS / S) * r1 * th1;
  p.k1 = -(ar * Nr + S * S * ath * Nth) / (p.f * p.f);
  p.k2 = std::sin(th) > 1e-13 ? Nr * dS / S + Nth * std::cos(th) / std::sin(th) : p.k1;
  p.H0 = p.k1 + p.k2;
  p.K = p.k1 * p.k2 - kappa * kappa;
  p.r = hyperboloid_distance_from_origin(r, kappa);
  return p;
}

}  // namespace

double hyperboloid_distance_from_origin(double r, double kappa) {
  // X = (sinh(kr)/k w, cosh(kr)/k) and o = (0, 0, 0, 1/k) on the hyperboloid
  // <X, X> = -1/k^2. Then <X - o, X - o> = (4/k^2) sinh^2(k d / 2).
  const double S = std::sinh(kappa * r) / kappa;
  const double c1 = 2.0 * std::pow(std::sinh(0.5 * kappa * r), 2) / kappa;  // (cosh - 1)/k
  const double q = S * S - c1 * c1;
  return 2.0 / kappa * std::asinh(0.5 * kappa * std::sqrt(std::max(q, 0.0)));
}

EmbeddedSurface::EmbeddedSurface(AmbientKind kind, ProfilePtr profile, double kappa)
    : kind_(kind), profile_(std::move(profile)), kappa_(kappa) {
  if (!profile_) throw PreconditionError("surface needs a profile");
  for (int i = 1; i < 64; ++i) {
    const SurfacePoint p = at(kPi * i / 64);
    if (!(p.h > 0) || !(p.f > 0) || !std::isfinite(p.H0))
      throw GeometryError("degenerate profile: surface pinches or leaves the half plane");
  }
}

EmbeddedSurface EmbeddedSurface::euclidean(ProfilePtr profile) {
  return EmbeddedSurface(AmbientKind::euclidean, std::move(profile), 0.0);
}

EmbeddedSurface EmbeddedSurface::hyperbolic(ProfilePtr profile, double kappa) {
  if (!(kappa > 0) || !std::isfinite(kappa))
    throw PreconditionError("hyperbolic ambient needs kappa > 0");
  return EmbeddedSurface(AmbientKind::hyperbolic, std::move(profile), kappa);
}

EmbeddedSurface EmbeddedSurface::hyperbolic_geodesic_sphere(double r, double kappa) {
  return hyperbolic(sphere_profile(r), kappa);
}

std::string EmbeddedSurface::label() const {
  if (kind_ == AmbientKind::euclidean) return profile_->label();
  return profile_->label() + " in H3(kappa=" + std::to_string(kappa_) + ")";
}

SurfacePoint EmbeddedSurface::at(double t) const {
  const ProfileJet j = profile_->jet(t);
  return kind_ == AmbientKind::euclidean ? euclidean_point(j, t) : hyperbolic_point(j, t, kappa_);
}

double EmbeddedSurface::integrate(const std::function<double(const SurfacePoint&)>& g) const {
  const num::GaussRule rule = num::gauss_legendre(n_quad_, 0.0, kPi);
  double s = 0.0;
  for (int i = 0; i < n_quad_; ++i) {
    const SurfacePoint p = at(rule.nodes[i]);
    s += rule.weights[i] * g(p) * p.f * p.h;
  }
  return 2.0 * kPi * s;
}

double EmbeddedSurface::area() const {
  return integrate([](const SurfacePoint&) { return 1.0; });
}

double EmbeddedSurface::total_mean_curvature() const {
  return integrate([](const SurfacePoint& p) { return p.H0; });
}

double EmbeddedSurface::mean_curvature_squared_integral() const {
  return integrate([](const SurfacePoint& p) { return p.H0 * p.H0; });
}

double EmbeddedSurface::min_mean_curvature() const {
  double m = at(0.0).H0;
  for (int i = 1; i <= 512; ++i) m = std::min(m, at(kPi * i / 512).H0);
  return m;
}

double EmbeddedSurface::max_mean_curvature() const {
  double m = at(0.0).H0;
  for (int i = 1; i <= 512; ++i) m = std::max(m, at(kPi * i / 512).H0);
  return m;
}

bool EmbeddedSurface::is_convex() const {
  for (int i = 0; i <= 512; ++i) {
    const SurfacePoint p = at(kPi * i / 512);
    if (!(p.k1 > 0) || !(p.k2 > 0)) return false;
  }
  return true;
}

double total_mean_curvature(const EmbeddedSurface& s) { return s.total_mean_curvature(); }

WeightedIntegrals weighted_mean_curvature_integrals(const EmbeddedSurface& s) {
  if (s.ambient() != AmbientKind::hyperbolic)
    throw PreconditionError("weighted mean curvature integrals need a hyperbolic ambient");
  const double k = s.kappa();
  WeightedIntegrals w;
  w.cosh_area = s.integrate([k](const SurfacePoint& p) { return std::cosh(k * p.r); });
  w.cosh_H0 = s.integrate([k](const SurfacePoint& p) { return p.H0 * std::cosh(k * p.r); });
  return w;
}

}  // namespace dlab::surface
