#include "diraclab/surface/profile.hpp"

#include <boost/math/interpolators/barycentric_rational.hpp>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "diraclab/errors.hpp"
#include "diraclab/numerics/collocation.hpp"

namespace dlab::surface {

namespace {

constexpr double kPi = std::numbers::pi;

class SphereProfile final : public Profile {
 public:
  explicit SphereProfile(double r) : r_(r) {}
  ProfileJet jet(double t) const override {
    const double s = std::sin(t), c = std::cos(t);
    return {r_ * s, r_ * c, r_ * c, -r_ * s, -r_ * s, -r_ * c};
  }
  std::string label() const override { return "sphere(r=" + std::to_string(r_) + ")"; }

 private:
  double r_;
};

class EllipsoidProfile final : public Profile {
 public:
  EllipsoidProfile(double a, double c) : a_(a), c_(c) {}
  ProfileJet jet(double t) const override {
    const double s = std::sin(t), c = std::cos(t);
    return {a_ * s, c_ * c, a_ * c, -c_ * s, -a_ * s, -c_ * c};
  }
  std::string label() const override {
    return "ellipsoid(a=" + std::to_string(a_) + ",c=" + std::to_string(c_) + ")";
  }

 private:
  double a_, c_;
};

class RadialProfile final : public Profile {
 public:
  RadialProfile(Eigen::VectorXd coeffs, double z_center, int n)
      : coll_(n), coeffs_(std::move(coeffs)), zc_(z_center) {}
  ProfileJet jet(double t) const override {
    const double R = coll_.evaluate(coeffs_, t);
    const double R1 = coll_.evaluate_derivative(coeffs_, t);
    const double R2 = coll_.evaluate_second_derivative(coeffs_, t);
    const double s = std::sin(t), c = std::cos(t);
    return {R * s,
            zc_ + R * c,
            R1 * s + R * c,
            R1 * c - R * s,
            R2 * s + 2 * R1 * c - R * s,
            R2 * c - 2 * R1 * s - R * c};
  }
  std::string label() const override { return "profile(radial)"; }

 private:
  num::CosineCollocation coll_;
  Eigen::VectorXd coeffs_;
  double zc_;
};

class ScaledProfile final : public Profile {
 public:
  ScaledProfile(ProfilePtr base, double k) : base_(std::move(base)), k_(k) {}
  ProfileJet jet(double t) const override {
    ProfileJet j = base_->jet(t);
    for (double* v : {&j.rho, &j.z, &j.drho, &j.dz, &j.d2rho, &j.d2z}) *v *= k_;
    return j;
  }
  std::string label() const override {
    return base_->label() + "*" + std::to_string(k_);
  }

 private:
  ProfilePtr base_;
  double k_;
};

class ReparametrizedProfile final : public Profile {
 public:
  ReparametrizedProfile(ProfilePtr base, double eps) : base_(std::move(base)), eps_(eps) {}
  ProfileJet jet(double t) const override {
    const double tau = t + eps_ * std::sin(2 * t);
    const double d1 = 1 + 2 * eps_ * std::cos(2 * t);
    const double d2 = -4 * eps_ * std::sin(2 * t);
    const ProfileJet b = base_->jet(tau);
    return {b.rho,
            b.z,
            b.drho * d1,
            b.dz * d1,
            b.d2rho * d1 * d1 + b.drho * d2,
            b.d2z * d1 * d1 + b.dz * d2};
  }
  std::string label() const override { return base_->label() + "|reparam"; }

 private:
  ProfilePtr base_;
  double eps_;
};

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw GeometryError(std::string(what) + " must be positive and finite");
}

}  // namespace

double Profile::diameter() const {
  constexpr int n = 257;
  std::vector<ProfileJet> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = jet(kPi * i / (n - 1));
  double d = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      d = std::max(d, std::hypot(pts[i].rho + pts[j].rho, pts[i].z - pts[j].z));
  return d;
}

ProfilePtr sphere_profile(double r) {
  require_positive(r, "sphere radius");
  return std::make_shared<SphereProfile>(r);
}

ProfilePtr ellipsoid_profile(double a, double c) {
  require_positive(a, "ellipsoid axis a");
  require_positive(c, "ellipsoid axis c");
  return std::make_shared<EllipsoidProfile>(a, c);
}

ProfilePtr radial_profile_from_samples(const std::vector<double>& rho,
                                       const std::vector<double>& z, int modes) {
  const std::size_t n = rho.size();
  if (n != z.size() || n < 8) throw GeometryError("profile needs at least 8 (rho, z) samples");
  const double zc = 0.5 * (z.front() + z.back());
  const double scale = std::abs(z.front() - z.back());
  require_positive(scale, "profile axial extent");
  if (std::abs(rho.front()) > 1e-8 * scale || std::abs(rho.back()) > 1e-8 * scale)
    throw GeometryError("profile is not closed: endpoints must lie on the axis");

  std::vector<double> theta(n), R(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rho[i] < -1e-8 * scale) throw GeometryError("profile leaves the half plane rho >= 0");
    theta[i] = std::atan2(std::max(rho[i], 0.0), z[i] - zc);
    R[i] = std::hypot(rho[i], z[i] - zc);
    require_positive(R[i], "profile distance from its center");
    if (i > 0 && !(theta[i] > theta[i - 1]))
      throw GeometryError("profile self-intersects or is not star-shaped about its axial midpoint");
  }
  theta.front() = 0.0;
  theta.back() = kPi;

  // Even reflection across both poles so the interpolant sees a smooth
  // periodic function of theta.
  std::vector<double> x, y;
  for (std::size_t i = n - 1; i >= 1; --i) {
    x.push_back(-theta[i]);
    y.push_back(R[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    x.push_back(theta[i]);
    y.push_back(R[i]);
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    x.push_back(2 * kPi - theta[i]);
    y.push_back(R[i]);
  }
  boost::math::barycentric_rational<double> interp(x.begin(), x.end(), y.begin(), 3);

  num::CosineCollocation coll(modes);
  std::vector<double> values(modes);
  for (int j = 0; j < modes; ++j) values[j] = interp(coll.nodes()[j]);
  return std::make_shared<RadialProfile>(coll.coefficients(values), zc, modes);
}

ProfilePtr load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open profile file " + path.string());
  std::vector<double> rho, z;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double a, b;
    if (!(ls >> a)) continue;
    if (!(ls >> b))
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected two columns");
    std::string rest;
    if (ls >> rest)
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": trailing text");
    rho.push_back(a);
    z.push_back(b);
  }
  return radial_profile_from_samples(rho, z);
}

ProfilePtr scaled(ProfilePtr base, double factor) {
  require_positive(factor, "scale factor");
  return std::make_shared<ScaledProfile>(std::move(base), factor);
}

ProfilePtr reparametrized(ProfilePtr base, double eps) {
  if (!(std::abs(eps) < 0.5)) throw PreconditionError("reparametrization needs |eps| < 1/2");
  return std::make_shared<ReparametrizedProfile>(std::move(base), eps);
}

}  // namespace dlab::surface
