#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace dlab::surface {

/// Position and first two derivatives of a generating curve (rho(t), z(t))
/// at the parameter t in [0, pi]; t = 0 is the north pole.
struct ProfileJet {
  double rho = 0, z = 0;
  double drho = 0, dz = 0;
  double d2rho = 0, d2z = 0;
};

/// Generating curve of an axisymmetric closed surface. The curve lies in
/// the half plane rho >= 0, meets the axis at t = 0 and t = pi, and is
/// traversed from north to south so that the outward normal is
/// (-z', rho') / |X'|.
class Profile {
 public:
  virtual ~Profile() = default;
  virtual ProfileJet jet(double t) const = 0;
  virtual std::string label() const = 0;
  /// Largest Euclidean distance between two points of the surface.
  double diameter() const;
};

using ProfilePtr = std::shared_ptr<const Profile>;

ProfilePtr sphere_profile(double r);
ProfilePtr ellipsoid_profile(double a, double c);

/// Radial profile R(theta) about a center on the axis, held as a cosine
/// series. Points (rho_i, z_i) are ordered north to south; the curve must
/// be star-shaped about the midpoint of its axial extent.
ProfilePtr radial_profile_from_samples(const std::vector<double>& rho,
                                       const std::vector<double>& z, int modes = 128);

/// Two whitespace-separated columns "rho z" per line; '#' starts a comment.
ProfilePtr load_profile(const std::filesystem::path& path);

/// The same curve scaled by `factor` about the origin.
ProfilePtr scaled(ProfilePtr base, double factor);

/// The same curve under the parameter change t -> t + eps sin(2t); |eps| < 1/2.
ProfilePtr reparametrized(ProfilePtr base, double eps);

}  // namespace dlab::surface
