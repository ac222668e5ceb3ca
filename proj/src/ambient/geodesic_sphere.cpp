#include "diraclab/ambient/geodesic_sphere.hpp"

#include <cmath>
#include <numbers>

#include "diraclab/ambient/curvature.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/surface/uniformize.hpp"

namespace dlab::ambient {

namespace {

constexpr double kPi = std::numbers::pi;

using State = Eigen::Matrix<double, 18, 1>;  // x, v, J1, P1, J2, P2

Vec3 quad(const Mat3 (&G)[3], const Vec3& a, const Vec3& b) {
  return {a.dot(G[0] * b), a.dot(G[1] * b), a.dot(G[2] * b)};
}

Vec3 quad(const std::array<Mat3, 3>& G, const Vec3& a, const Vec3& b) {
  return {a.dot(G[0] * b), a.dot(G[1] * b), a.dot(G[2] * b)};
}

State rhs(const AmbientChart& chart, const State& s, bool jacobi) {
  const Vec3 x = s.segment<3>(0), v = s.segment<3>(3);
  if (!chart.in_domain(x)) throw DomainError("geodesic left the chart domain");
  const Connection c = connection_from_jet(chart.jet(x), jacobi);
  State d = State::Zero();
  d.segment<3>(0) = v;
  d.segment<3>(3) = -quad(c.Gamma, v, v);
  if (!jacobi) return d;
  for (int a = 0; a < 2; ++a) {
    const Vec3 J = s.segment<3>(6 + 6 * a), P = s.segment<3>(9 + 6 * a);
    Mat3 dG[3];
    for (int k = 0; k < 3; ++k) {
      dG[k].setZero();
      for (int m = 0; m < 3; ++m) dG[k] += J[m] * c.dGamma[m][k];
    }
    d.segment<3>(6 + 6 * a) = P;
    d.segment<3>(9 + 6 * a) = -quad(dG, v, v) - 2.0 * quad(c.Gamma, v, P);
  }
  return d;
}

State integrate(const AmbientChart& chart, State s, double r, int steps, bool jacobi) {
  if (steps < 1) throw PreconditionError("geodesic integration needs at least one step");
  const double h = r / steps;
  for (int n = 0; n < steps; ++n) {
    const State k1 = rhs(chart, s, jacobi);
    const State k2 = rhs(chart, s + 0.5 * h * k1, jacobi);
    const State k3 = rhs(chart, s + 0.5 * h * k2, jacobi);
    const State k4 = rhs(chart, s + h * k3, jacobi);
    s += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (!s.allFinite()) throw NumericalError("geodesic integration produced non-finite values");
  return s;
}

Mat3 frame_about(const Vec3& axis) {
  const Vec3 a = axis.normalized();
  const Vec3 trial = std::abs(a.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 e1 = (trial - trial.dot(a) * a).normalized();
  Mat3 Q;
  Q.col(0) = e1;
  Q.col(1) = a.cross(e1);
  Q.col(2) = a;
  return Q;
}

struct DirectionJet {
  Vec3 w, dtheta, dphi;
};

DirectionJet directions(const Mat3& Q, double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta), sp = std::sin(phi), cp = std::cos(phi);
  return {Q * Vec3(st * cp, st * sp, ct), Q * Vec3(ct * cp, ct * sp, -st),
          Q * Vec3(-st * sp, st * cp, 0.0)};
}

struct PointData {
  Eigen::Matrix2d gamma;
  double H = 0;
  double tangential_sigma = 0;  // gamma^{ab} sigma(d_a x, d_b x)
};

PointData geodesic_point(const AmbientChart& chart, const Vec3& p, const Mat3& B, const Mat3& Q,
                         double r, int steps, double theta, double phi) {
  const DirectionJet dj = directions(Q, theta, phi);
  State s = State::Zero();
  s.segment<3>(0) = p;
  s.segment<3>(3) = B * dj.w;
  s.segment<3>(9) = B * dj.dtheta;
  s.segment<3>(15) = B * dj.dphi;
  s = integrate(chart, s, r, steps, true);

  const Vec3 x = s.segment<3>(0), v = s.segment<3>(3);
  const MetricJet jet = chart.jet(x);
  const Connection c = connection_from_jet(jet, false);
  Vec3 J[2], DJ[2];
  for (int a = 0; a < 2; ++a) {
    J[a] = s.segment<3>(6 + 6 * a);
    DJ[a] = s.segment<3>(9 + 6 * a) + quad(c.Gamma, v, J[a]);
  }
  PointData out;
  Eigen::Matrix2d dgamma;
  const Mat3 sigma = jet.g - Mat3::Identity();
  Eigen::Matrix2d sig;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      out.gamma(a, b) = J[a].dot(jet.g * J[b]);
      dgamma(a, b) = DJ[a].dot(jet.g * J[b]) + J[a].dot(jet.g * DJ[b]);
      sig(a, b) = J[a].dot(sigma * J[b]);
    }
  const Eigen::Matrix2d inv = out.gamma.inverse();
  out.H = 0.5 * (inv.cwiseProduct(dgamma)).sum();
  out.tangential_sigma = (inv.cwiseProduct(sig)).sum();
  return out;
}

PointData coordinate_point(const AmbientChart& chart, double r, double theta, double phi) {
  const DirectionJet dj = directions(Mat3::Identity(), theta, phi);
  const Vec3 x = r * dj.w;
  if (!chart.in_domain(x)) throw DomainError("coordinate sphere meets the excluded region");
  const MetricJet jet = chart.jet(x);
  const Connection c = connection_from_jet(jet, false);
  const Vec3 X[2] = {r * dj.dtheta, r * dj.dphi};
  PointData out;
  const Mat3 sigma = jet.g - Mat3::Identity();
  Eigen::Matrix2d sig;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      out.gamma(a, b) = X[a].dot(jet.g * X[b]);
      sig(a, b) = X[a].dot(sigma * X[b]);
    }
  out.tangential_sigma = (out.gamma.inverse().cwiseProduct(sig)).sum();

  // Level set of F = |x|.
  const Vec3 dF = dj.w;
  Mat3 hess = (Mat3::Identity() - dj.w * dj.w.transpose()) / r;
  for (int k = 0; k < 3; ++k) hess -= dF[k] * c.Gamma[k];
  const double n = std::sqrt(dF.dot(c.g_inv * dF));
  const Vec3 nu = c.g_inv * dF / n;
  out.H = ((c.g_inv.cwiseProduct(hess)).sum() - nu.dot(hess * nu)) / n;
  return out;
}

template <class Eval>
GeodesicSphereSample assemble(const Eval& eval, double r, const SphereSampleOptions& o,
                              bool with_beta) {
  GeodesicSphereSample out;
  out.radius = r;
  out.grid = num::make_sphere_grid(o.n_theta, o.n_phi);
  const auto& grid = out.grid;
  out.gamma.resize(static_cast<std::size_t>(grid.n_theta()) * grid.n_phi);
  out.H.resize(out.gamma.size());
  out.min_jacobi_ratio = INFINITY;
  double beta = 0.0;
  for (int i = 0; i < grid.n_theta(); ++i) {
    const double st = std::sin(grid.theta[i]);
    for (int p = 0; p < grid.n_phi; ++p) {
      const PointData d = eval(grid.theta[i], grid.phi(p));
      const std::size_t q = static_cast<std::size_t>(i) * grid.n_phi + p;
      out.gamma[q] = d.gamma;
      out.H[q] = d.H;
      const double det = d.gamma.determinant();
      out.min_jacobi_ratio = std::min(out.min_jacobi_ratio, det / (st * st * std::pow(r, 4)));
      const double dS = grid.area_weight(i) * std::sqrt(std::max(det, 0.0)) / st;
      out.area += dS;
      out.total_mean_curvature += dS * d.H;
      beta += 0.5 * dS * d.tangential_sigma;
    }
  }
  if (with_beta) out.beta = beta;
  return out;
}

}  // namespace

GeodesicEnd shoot_geodesic(const AmbientChart& chart, const Vec3& p, const Vec3& v, double r,
                           int steps) {
  State s = State::Zero();
  s.segment<3>(0) = p;
  s.segment<3>(3) = v;
  s = integrate(chart, s, r, steps, false);
  return {s.segment<3>(0), s.segment<3>(3)};
}

Vec3 unit_direction(const AmbientChart& chart, const Vec3& p, const Vec3& w) {
  const Mat3 g = chart.metric(p);
  return w / std::sqrt(w.dot(g * w));
}

GeodesicSphereSample geodesic_sphere(ChartPtr chart, const Vec3& p, double r,
                                     const SphereSampleOptions& options, std::optional<Vec3> axis) {
  if (!(r > 0)) throw PreconditionError("geodesic_sphere: radius must be positive");
  if (!chart->in_domain(p)) throw DomainError("geodesic_sphere: center outside the chart domain");
  const Vec3 ax = axis ? axis->normalized() : (p.norm() > 0 ? Vec3(p.normalized()) : Vec3::UnitZ());
  const Mat3 Q = frame_about(ax);
  const Mat3 B = Eigen::SelfAdjointEigenSolver<Mat3>(chart->metric(p)).operatorInverseSqrt();
  const int steps = options.steps;
  const auto eval = [chart, p, B, Q, r, steps](double theta, double phi) {
    return geodesic_point(*chart, p, B, Q, r, steps, theta, phi);
  };
  GeodesicSphereSample out = assemble(eval, r, options, chart->asymptotically_flat());
  out.center = p;
  out.axis = ax;
  if (!(out.min_jacobi_ratio >= 1e-8))
    throw ResolutionError("geodesic_sphere: Jacobi determinant degenerates (radius too large)");
  out.metric_at = [eval](double theta, double phi) { return eval(theta, phi).gamma; };
  return out;
}

GeodesicSphereSample coordinate_sphere(ChartPtr chart, double r,
                                       const SphereSampleOptions& options) {
  if (!chart->asymptotically_flat())
    throw PreconditionError("coordinate_sphere: chart is not asymptotically flat");
  if (!(r > 0)) throw PreconditionError("coordinate_sphere: radius must be positive");
  const auto eval = [chart, r](double theta, double phi) {
    return coordinate_point(*chart, r, theta, phi);
  };
  GeodesicSphereSample out = assemble(eval, r, options, true);
  out.metric_at = [eval](double theta, double phi) { return eval(theta, phi).gamma; };
  return out;
}

spectral::ConformalSphereMetric sphere_conformal_metric(const GeodesicSphereSample& s) {
  const auto& grid = s.grid;
  double conformal_defect = 0, diagonal_defect = 0, azimuthal_spread = 0;
  double gmin = INFINITY, gmax = 0;
  for (int i = 0; i < grid.n_theta(); ++i) {
    const double st = std::sin(grid.theta[i]);
    const Eigen::Matrix2d& g0 = s.gamma[static_cast<std::size_t>(i) * grid.n_phi];
    for (int p = 0; p < grid.n_phi; ++p) {
      const Eigen::Matrix2d& g = s.gamma[static_cast<std::size_t>(i) * grid.n_phi + p];
      diagonal_defect = std::max(diagonal_defect, std::abs(g(0, 1)) / (st * g(0, 0)));
      conformal_defect = std::max(conformal_defect, std::abs(g(1, 1) / (st * st * g(0, 0)) - 1.0));
      azimuthal_spread = std::max(azimuthal_spread, std::abs(g(0, 0) - g0(0, 0)) / g0(0, 0));
      azimuthal_spread = std::max(azimuthal_spread, std::abs(g(1, 1) - g0(1, 1)) / g0(1, 1));
      gmin = std::min(gmin, g(0, 0));
      gmax = std::max(gmax, g(0, 0));
    }
  }
  constexpr double tol = 1e-9;
  const auto metric_at = s.metric_at;
  if (diagonal_defect < tol && conformal_defect < tol) {
    if ((gmax - gmin) < 1e-11 * gmax) return spectral::ConformalSphereMetric::round(std::sqrt(0.5 * (gmin + gmax)));
    if (azimuthal_spread < tol)
      return spectral::ConformalSphereMetric::axisymmetric(
          [metric_at](double theta) { return 0.5 * std::log(metric_at(theta, 0.0)(0, 0)); },
          "conformal induced metric");
    return spectral::ConformalSphereMetric::general(
        [metric_at](double theta, double phi) {
          return 0.5 * std::log(metric_at(theta, phi)(0, 0));
        },
        "conformal induced metric");
  }
  if (diagonal_defect < tol && azimuthal_spread < tol) {
    return surface::uniformize_axisymmetric(
               [metric_at](double t) { return std::sqrt(metric_at(t, 0.0)(0, 0)); },
               [metric_at](double t) { return std::sqrt(metric_at(t, 0.0)(1, 1)); }, s.area, 0.0,
               "uniformized induced metric")
        .metric;
  }
  throw PreconditionError(
      "induced metric is neither conformal to round nor axisymmetric; uniformization unsupported");
}

double sphere_lambda1(const GeodesicSphereSample& sample, const spectral::SpectrumOptions& options) {
  return spectral::conformal_dirac_spectrum(sphere_conformal_metric(sample), options).lambda1;
}

}  // namespace dlab::ambient
