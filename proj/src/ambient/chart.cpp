#include "diraclab/ambient/chart.hpp"

#include <cmath>

#include "diraclab/errors.hpp"
#include "diraclab/numerics/finite_difference.hpp"

namespace dlab::ambient {

double AmbientChart::fd_step(const Vec3& x) const { return 2e-3 * std::max(1.0, x.norm()); }

MetricJet AmbientChart::jet(const Vec3& x) const {
  const double h = fd_step(x);
  const auto g = [this](const Vec3& y) { return metric(y); };
  MetricJet j;
  j.g = metric(x);
  for (int k = 0; k < 3; ++k) {
    j.dg[k] = num::fd_first(g, x, k, h);
    for (int l = 0; l <= k; ++l) {
      j.d2g[k][l] = num::fd_second(g, x, k, l, h);
      j.d2g[l][k] = j.d2g[k][l];
    }
  }
  return j;
}

Mat3 ConformallyFlatChart::metric(const Vec3& x) const {
  return std::exp(2.0 * phi(x).phi) * Mat3::Identity();
}

MetricJet ConformallyFlatChart::jet(const Vec3& x) const {
  const PhiJet p = phi(x);
  const double e = std::exp(2.0 * p.phi);
  MetricJet j;
  j.g = e * Mat3::Identity();
  for (int k = 0; k < 3; ++k) {
    j.dg[k] = 2.0 * e * p.grad[k] * Mat3::Identity();
    for (int l = 0; l < 3; ++l)
      j.d2g[k][l] = e * (4.0 * p.grad[k] * p.grad[l] + 2.0 * p.hess(k, l)) * Mat3::Identity();
  }
  return j;
}

std::optional<double> ConformallyFlatChart::scalar_curvature(const Vec3& x) const {
  const PhiJet p = phi(x);
  return -std::exp(-2.0 * p.phi) * (4.0 * p.hess.trace() + 2.0 * p.grad.squaredNorm());
}

namespace {

class EuclideanChart final : public ConformallyFlatChart {
 public:
  ChartKind kind() const override { return ChartKind::euclidean; }
  std::string label() const override { return "euclidean"; }
  bool in_domain(const Vec3&) const override { return true; }
  PhiJet phi(const Vec3&) const override { return {}; }
  std::optional<double> mass() const override { return 0.0; }
  bool asymptotically_flat() const override { return true; }
};

class SchwarzschildChart final : public ConformallyFlatChart {
 public:
  explicit SchwarzschildChart(double m) : m_(m) {}
  ChartKind kind() const override { return ChartKind::schwarzschild; }
  std::string label() const override { return "schwarzschild(m=" + std::to_string(m_) + ")"; }
  bool in_domain(const Vec3& x) const override { return x.norm() > 0.5 * std::abs(m_); }
  PhiJet phi(const Vec3& x) const override {
    if (!in_domain(x)) throw DomainError("schwarzschild chart: point inside |x| <= m/2");
    const double r = x.norm();
    const double psi = 1.0 + m_ / (2.0 * r);
    const Vec3 dpsi = -m_ / (2.0 * r * r * r) * x;
    const Mat3 hpsi =
        -0.5 * m_ * (Mat3::Identity() / (r * r * r) - 3.0 * x * x.transpose() / std::pow(r, 5));
    PhiJet p;
    p.phi = 2.0 * std::log(psi);
    p.grad = 2.0 * dpsi / psi;
    p.hess = 2.0 * (hpsi / psi - dpsi * dpsi.transpose() / (psi * psi));
    return p;
  }
  std::optional<double> mass() const override { return m_; }
  bool asymptotically_flat() const override { return true; }

 private:
  double m_;
};

class SpaceFormChart final : public ConformallyFlatChart {
 public:
  explicit SpaceFormChart(double k) : k_(k) {}
  ChartKind kind() const override { return ChartKind::space_form; }
  std::string label() const override { return "spaceform(k=" + std::to_string(k_) + ")"; }
  bool in_domain(const Vec3& x) const override { return 1.0 + 0.25 * k_ * x.squaredNorm() > 0; }
  PhiJet phi(const Vec3& x) const override {
    if (!in_domain(x)) throw DomainError("space form chart: point outside the stereographic ball");
    const double w = 1.0 + 0.25 * k_ * x.squaredNorm();
    PhiJet p;
    p.phi = -std::log(w);
    p.grad = -0.5 * k_ / w * x;
    p.hess = -0.5 * k_ / w * Mat3::Identity() + 0.25 * k_ * k_ / (w * w) * x * x.transpose();
    return p;
  }
  bool asymptotically_flat() const override { return false; }

 private:
  double k_;
};

class PerturbedChart final : public AmbientChart {
 public:
  explicit PerturbedChart(const PerturbationSpec& spec) : spec_(spec) {
    for (int c = 0; c < 6; ++c) exprs_[c] = num::Expression::parse(spec.components[c]);
    if (!(spec.decay_rate > 0.5))
      throw PreconditionError("perturbed chart: decay rate tau must exceed 1/2");
    check_decay();
  }
  ChartKind kind() const override { return ChartKind::perturbed; }
  std::string label() const override { return "perturbed(tau=" + std::to_string(spec_.decay_rate) + ")"; }
  bool in_domain(const Vec3& x) const override {
    const Mat3 g = raw(x);
    if (!g.allFinite()) return false;
    return Eigen::LLT<Mat3>(g).info() == Eigen::Success;
  }
  Mat3 metric(const Vec3& x) const override {
    const Mat3 g = raw(x);
    if (!g.allFinite()) throw DomainError("perturbed chart: metric not finite at the point");
    return g;
  }
  std::optional<double> mass() const override { return spec_.mass; }
  bool asymptotically_flat() const override { return true; }

 private:
  Mat3 raw(const Vec3& x) const {
    static constexpr int idx[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
    Mat3 g = Mat3::Identity();
    for (int c = 0; c < 6; ++c) {
      const double v = exprs_[c](x[0], x[1], x[2]);
      g(idx[c][0], idx[c][1]) += v;
      if (idx[c][0] != idx[c][1]) g(idx[c][1], idx[c][0]) += v;
    }
    return g;
  }

  // Observed decay between |x| = 1e3 and 1e4 must not be slower than tau.
  void check_decay() const {
    double s1 = 0, s2 = 0;
    for (const Vec3& w : {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1), Vec3(1, 1, 1).normalized(),
                         Vec3(1, -2, 0.5).normalized()}) {
      s1 = std::max(s1, sigma(1e3 * w).cwiseAbs().maxCoeff());
      s2 = std::max(s2, sigma(1e4 * w).cwiseAbs().maxCoeff());
    }
    if (!std::isfinite(s1) || !std::isfinite(s2))
      throw PreconditionError("perturbed chart: sigma is not finite far out");
    if (s1 < 1e-300) return;
    const double observed = std::log10(s1 / std::max(s2, 1e-300));
    if (observed < spec_.decay_rate - 0.1)
      throw PreconditionError("perturbed chart: sigma decays like |x|^-" + std::to_string(observed) +
                              ", slower than the declared tau");
  }

  PerturbationSpec spec_;
  std::array<num::Expression, 6> exprs_;
};

}  // namespace

ChartPtr euclidean_chart() { return std::make_shared<EuclideanChart>(); }

ChartPtr schwarzschild_chart(double m) {
  if (!std::isfinite(m)) throw PreconditionError("schwarzschild mass must be finite");
  return std::make_shared<SchwarzschildChart>(m);
}

ChartPtr space_form_chart(double k) {
  if (!std::isfinite(k)) throw PreconditionError("space form curvature must be finite");
  return std::make_shared<SpaceFormChart>(k);
}

ChartPtr perturbed_chart(const PerturbationSpec& spec) {
  return std::make_shared<PerturbedChart>(spec);
}

}  // namespace dlab::ambient
