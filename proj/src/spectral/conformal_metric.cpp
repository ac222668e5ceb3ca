#include "diraclab/spectral/conformal_metric.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "diraclab/errors.hpp"
#include "diraclab/spectral/sample_io.hpp"
#include "diraclab/spectral/wigner.hpp"

namespace dlab::spectral {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

ConformalSphereMetric ConformalSphereMetric::round(double radius) {
  if (!(radius > 0)) throw PreconditionError("round metric: radius must be positive");
  const double u0 = std::log(radius);
  ConformalSphereMetric m;
  m.field_ = std::make_shared<const Field>([u0](double, double) { return u0; });
  m.axisymmetric_ = true;
  m.constant_ = true;
  m.label_ = "round(r=" + std::to_string(radius) + ")";
  return m;
}

ConformalSphereMetric ConformalSphereMetric::axisymmetric(AxisymmetricField u,
                                                          std::string label) {
  ConformalSphereMetric m;
  m.field_ = std::make_shared<const Field>(
      [u = std::move(u)](double theta, double) { return u(theta); });
  m.axisymmetric_ = true;
  m.label_ = std::move(label);
  return m;
}

ConformalSphereMetric ConformalSphereMetric::general(Field u, std::string label) {
  ConformalSphereMetric m;
  m.field_ = std::make_shared<const Field>(std::move(u));
  m.label_ = std::move(label);
  return m;
}

ConformalSphereMetric ConformalSphereMetric::from_samples(const NodalSamples& s) {
  const num::SphereGrid grid = s.grid();
  if (s.n_phi == 1) {
    auto interp = std::make_shared<num::BarycentricInterpolant>(grid.cos_theta, s.values);
    return axisymmetric([interp](double theta) { return (*interp)(std::cos(theta)); },
                        "samples(axisymmetric)");
  }
  // Spherical harmonic analysis on the Gauss grid; synthesis per point.
  const int nt = grid.n_theta(), np = grid.n_phi;
  const int lmax = nt - 1;
  const int mmax = std::min(lmax, (np - 1) / 2);
  auto coeffs = std::make_shared<std::vector<std::vector<std::complex<double>>>>(2 * mmax + 1);
  for (int m = -mmax; m <= mmax; ++m) {
    std::vector<std::complex<double>> fm(nt, 0.0);
    for (int i = 0; i < nt; ++i) {
      for (int p = 0; p < np; ++p) fm[i] += s.values[i * np + p] * std::polar(1.0, -m * grid.phi(p));
      fm[i] *= 2.0 * kPi / np;
    }
    const Eigen::MatrixXd d = wigner_d_ladder(2 * m, 0, 2 * lmax, grid.theta);
    auto& a = (*coeffs)[m + mmax];
    a.assign(d.rows(), 0.0);
    for (int row = 0; row < d.rows(); ++row) {
      const int l = std::abs(m) + row;
      const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi));
      for (int i = 0; i < nt; ++i) a[row] += grid.weight[i] * norm * d(row, i) * fm[i];
    }
  }
  return general(
      [coeffs, lmax, mmax](double theta, double phi) {
        const double beta[1] = {theta};
        std::complex<double> v = 0.0;
        for (int m = -mmax; m <= mmax; ++m) {
          const Eigen::MatrixXd d = wigner_d_ladder(2 * m, 0, 2 * lmax, beta);
          const auto& a = (*coeffs)[m + mmax];
          std::complex<double> col = 0.0;
          for (int row = 0; row < d.rows(); ++row) {
            const int l = std::abs(m) + row;
            col += a[row] * std::sqrt((2.0 * l + 1.0) / (4.0 * kPi)) * d(row, 0);
          }
          v += col * std::polar(1.0, m * phi);
        }
        return v.real();
      },
      "samples");
}

double ConformalSphereMetric::u(double theta, double phi) const {
  return (*field_)(theta, phi);
}

std::vector<double> ConformalSphereMetric::sample(const num::SphereGrid& grid) const {
  std::vector<double> out(static_cast<std::size_t>(grid.n_theta()) * grid.n_phi);
  for (int i = 0; i < grid.n_theta(); ++i) {
    if (axisymmetric_) {
      const double v = u(grid.theta[i]);
      for (int p = 0; p < grid.n_phi; ++p) out[i * grid.n_phi + p] = v;
    } else {
      for (int p = 0; p < grid.n_phi; ++p) out[i * grid.n_phi + p] = u(grid.theta[i], grid.phi(p));
    }
  }
  return out;
}

double ConformalSphereMetric::area(int n_theta) const {
  const num::SphereGrid grid = num::make_sphere_grid(n_theta, axisymmetric_ ? 1 : 2 * n_theta);
  const std::vector<double> v = sample(grid);
  double a = 0.0;
  for (int i = 0; i < grid.n_theta(); ++i)
    for (int p = 0; p < grid.n_phi; ++p)
      a += grid.area_weight(i) * std::exp(2.0 * v[i * grid.n_phi + p]);
  return a;
}

std::vector<double> round_laplacian(const num::SphereGrid& grid,
                                    const std::vector<double>& samples) {
  const int nt = grid.n_theta(), np = grid.n_phi;
  if (samples.size() != static_cast<std::size_t>(nt) * np)
    throw ResolutionError("round_laplacian: sample count does not match grid");
  const int lmax = nt - 1;
  const int mmax = std::min(lmax, (np - 1) / 2);

  // Azimuthal Fourier coefficients per theta row.
  std::vector<std::vector<std::complex<double>>> fm(2 * mmax + 1,
                                                    std::vector<std::complex<double>>(nt));
  for (int m = -mmax; m <= mmax; ++m)
    for (int i = 0; i < nt; ++i) {
      std::complex<double> c = 0.0;
      for (int p = 0; p < np; ++p)
        c += samples[i * np + p] * std::polar(1.0, -m * grid.phi(p));
      fm[m + mmax][i] = c * (2.0 * kPi / np);
    }

  std::vector<std::complex<double>> out(static_cast<std::size_t>(nt) * np, 0.0);
  for (int m = -mmax; m <= mmax; ++m) {
    const Eigen::MatrixXd d = wigner_d_ladder(2 * m, 0, 2 * lmax, grid.theta);
    std::vector<std::complex<double>> synth(nt, 0.0);
    for (int row = 0; row < d.rows(); ++row) {
      const int l = std::abs(m) + row;
      const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi));
      std::complex<double> a = 0.0;
      for (int i = 0; i < nt; ++i) a += grid.weight[i] * norm * d(row, i) * fm[m + mmax][i];
      const double eig = -double(l) * (l + 1);
      for (int i = 0; i < nt; ++i) synth[i] += eig * a * norm * d(row, i);
    }
    for (int i = 0; i < nt; ++i)
      for (int p = 0; p < np; ++p) out[i * np + p] += synth[i] * std::polar(1.0, m * grid.phi(p));
  }
  std::vector<double> real(out.size());
  for (std::size_t q = 0; q < out.size(); ++q) real[q] = out[q].real();
  return real;
}

std::vector<double> ConformalSphereMetric::gauss_curvature(const num::SphereGrid& grid) const {
  const std::vector<double> v = sample(grid);
  const std::vector<double> lap = round_laplacian(grid, v);
  std::vector<double> k(v.size());
  for (std::size_t q = 0; q < v.size(); ++q) k[q] = std::exp(-2.0 * v[q]) * (1.0 - lap[q]);
  return k;
}

ConformalSphereMetric ConformalSphereMetric::rotated(const Eigen::Matrix3d& rotation) const {
  const Eigen::Matrix3d inv = rotation.transpose();
  auto base = field_;
  return general(
      [base, inv](double theta, double phi) {
        const Eigen::Vector3d w(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                                std::cos(theta));
        const Eigen::Vector3d v = inv * w;
        const double th = std::acos(std::clamp(v.z(), -1.0, 1.0));
        const double ph = std::atan2(v.y(), v.x());
        return (*base)(th, ph);
      },
      label_ + "|rotated");
}

ConformalSphereMetric ConformalSphereMetric::mobius_boost(double a) const {
  auto base = field_;
  Field boosted = [base, a](double theta, double phi) {
    // tan(theta'/2) = e^a tan(theta/2); sin(theta') / sin(theta) computed
    // in a form that stays finite at the poles.
    const double t = std::tan(0.5 * theta);
    const double tp = std::exp(a) * t;
    const double theta_p = 2.0 * std::atan(tp);
    const double ratio = std::exp(a) * (1.0 + t * t) / (1.0 + tp * tp);
    return (*base)(theta_p, phi) + std::log(ratio);
  };
  ConformalSphereMetric m = axisymmetric_ ? axisymmetric([boosted](double th) { return boosted(th, 0.0); })
                                          : general(boosted);
  m.label_ = label_ + "|boost(" + std::to_string(a) + ")";
  return m;
}

}  // namespace dlab::spectral
