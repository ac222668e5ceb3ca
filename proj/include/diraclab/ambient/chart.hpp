#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <optional>
#include <string>

#include "diraclab/numerics/expression.hpp"

namespace dlab::ambient {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// g and its first two coordinate derivatives at a point:
/// dg[k](i, j) = d_k g_ij, d2g[k][l](i, j) = d_k d_l g_ij.
struct MetricJet {
  Mat3 g = Mat3::Identity();
  std::array<Mat3, 3> dg{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
  std::array<std::array<Mat3, 3>, 3> d2g{};
};

enum class ChartKind { euclidean, schwarzschild, space_form, perturbed };

/// An explicit Riemannian metric on (a domain of) R^3. Implementations are
/// immutable after construction and safe to share across threads.
class AmbientChart {
 public:
  virtual ~AmbientChart() = default;
  virtual ChartKind kind() const = 0;
  virtual std::string label() const = 0;
  virtual bool in_domain(const Vec3& x) const = 0;
  virtual Mat3 metric(const Vec3& x) const = 0;
  /// Closed form where available, fourth-order finite differences otherwise.
  virtual MetricJet jet(const Vec3& x) const;
  virtual bool closed_form_jet() const { return false; }
  /// Closed-form scalar curvature when the chart provides one.
  virtual std::optional<double> scalar_curvature(const Vec3&) const { return std::nullopt; }
  /// ADM mass when known in closed form.
  virtual std::optional<double> mass() const { return std::nullopt; }
  virtual bool asymptotically_flat() const = 0;
  /// sigma_ij = g_ij - delta_ij.
  Mat3 sigma(const Vec3& x) const { return metric(x) - Mat3::Identity(); }
  /// Finite-difference step used by the default jet at x.
  double fd_step(const Vec3& x) const;
};

using ChartPtr = std::shared_ptr<const AmbientChart>;

/// g = e^{2 phi} delta with closed-form derivatives of phi.
class ConformallyFlatChart : public AmbientChart {
 public:
  struct PhiJet {
    double phi = 0;
    Vec3 grad = Vec3::Zero();
    Mat3 hess = Mat3::Zero();
  };
  virtual PhiJet phi(const Vec3& x) const = 0;

  Mat3 metric(const Vec3& x) const override;
  MetricJet jet(const Vec3& x) const override;
  bool closed_form_jet() const override { return true; }
  /// R = -e^{-2 phi} (4 Laplacian phi + 2 |grad phi|^2).
  std::optional<double> scalar_curvature(const Vec3& x) const override;
};

ChartPtr euclidean_chart();
/// (1 + m / 2|x|)^4 delta on |x| > m / 2.
ChartPtr schwarzschild_chart(double m);
/// Stereographic chart (1 + k|x|^2/4)^{-2} delta of constant sectional curvature k.
ChartPtr space_form_chart(double k);

/// delta + sigma with sigma_ij given by closed-form expressions.
struct PerturbationSpec {
  std::array<std::string, 6> components{"0", "0", "0", "0", "0", "0"};  // xx xy xz yy yz zz
  double decay_rate = 1.0;                                            // tau
  std::optional<double> mass;
};
ChartPtr perturbed_chart(const PerturbationSpec& spec);

}  // namespace dlab::ambient
