#include "diraclab/surface/uniformize.hpp"

#include <cmath>
#include <numbers>

#include "diraclab/errors.hpp"

namespace dlab::surface {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd sine_coefficients(const std::function<double(double)>& g, int n) {
  std::vector<double> v(n);
  for (int j = 0; j < n; ++j) v[j] = g((j + 0.5) * kPi / n);
  Eigen::VectorXd b(n);
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += v[j] * std::sin(k * (j + 0.5) * kPi / n);
    b[k - 1] = s * (k == n ? 1.0 / n : 2.0 / n);
  }
  return b;
}

}  // namespace

IsothermalCoordinate::IsothermalCoordinate(std::function<double(double)> f,
                                           std::function<double(double)> h, int max_modes)
    : f_(std::move(f)), h_(std::move(h)) {
  const auto g = [this](double t) {
    const double hv = h_(t);
    if (!(hv > 0) || !std::isfinite(hv))
      throw GeometryError("degenerate profile: h vanishes away from the poles");
    return f_(t) / hv - 1.0 / std::sin(t);
  };
  for (int n = 64;; n *= 2) {
    sine_ = sine_coefficients(g, n);
    const double scale = sine_.cwiseAbs().maxCoeff() + 1.0;
    const double tail = sine_.tail(n / 4).cwiseAbs().maxCoeff();
    if (tail < 1e-14 * scale) break;
    if (2 * n > max_modes) break;
  }
  offset_ = 0.0;
  offset_ = -s(0.5 * kPi);
}

double IsothermalCoordinate::s(double t) const {
  double G = 0.0;
  for (int k = 1; k <= sine_.size(); ++k) G -= sine_[k - 1] * std::cos(k * t) / k;
  return std::log(std::tan(0.5 * t)) + G + offset_;
}

double IsothermalCoordinate::ds(double t) const {
  double g = 0.0;
  for (int k = 1; k <= sine_.size(); ++k) g += sine_[k - 1] * std::sin(k * t);
  return 1.0 / std::sin(t) + g;
}

double IsothermalCoordinate::invert(double sigma) const {
  double lo = 0.0, hi = kPi;
  double t = 2.0 * std::atan(std::exp(sigma));
  for (int it = 0; it < 200; ++it) {
    const double r = s(t) - sigma;
    if (r > 0) hi = t; else lo = t;
    double next = t - r / ds(t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 4e-16 * std::max(t, 1e-300)) return next;
    t = next;
    if (hi - lo < 1e-300) break;
  }
  return t;
}

UniformizationResult uniformize_axisymmetric(std::function<double(double)> f,
                                             std::function<double(double)> h, double area,
                                             double gauge, std::string label) {
  auto iso = std::make_shared<IsothermalCoordinate>(std::move(f), std::move(h));
  auto u = [iso, gauge](double theta) {
    theta = std::clamp(theta, 1e-9, kPi - 1e-9);
    const double t = iso->invert(std::log(std::tan(0.5 * theta)) + gauge);
    return std::log(iso->h(t) / std::sin(theta));
  };
  UniformizationResult r{spectral::ConformalSphereMetric::axisymmetric(u, std::move(label)), gauge,
                         0.0, iso->modes()};
  r.area_residual = std::abs(r.metric.area() - area) / area;
  return r;
}

UniformizationResult uniformize_axisymmetric(const EmbeddedSurface& surface, double gauge) {
  return uniformize_axisymmetric(
      [s = surface](double t) { return s.at(t).f; }, [s = surface](double t) { return s.at(t).h; },
      surface.area(), gauge, "uniformized " + surface.label());
}

}  // namespace dlab::surface
