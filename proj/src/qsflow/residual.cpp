#include "diraclab/qsflow/residual.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "diraclab/ambient/curvature.hpp"
#include "diraclab/numerics/finite_difference.hpp"

namespace dlab::qsflow {

double quasi_spherical_scalar_curvature(const ExteriorFoliation& fol, const UField& u, double rho,
                                        double t, double h_rho, double h_t) {
  // Coordinates (xi, t, phi) with rho = a xi so one difference step serves
  // both directions; the scalar curvature does not see the rescaling.
  const double a = h_rho / h_t;
  const auto g = [&](const ambient::Vec3& y) {
    const double r = a * y[0];
    const ExteriorFoliation::Point p = fol.at(r, y[1]);
    const double uv = u(r, y[1]);
    ambient::Mat3 m = ambient::Mat3::Zero();
    m(0, 0) = a * a * uv * uv;
    m(1, 1) = p.f * p.f;
    m(2, 2) = p.h * p.h;
    return m;
  };
  const ambient::Vec3 x(rho / a, t, 0.0);
  ambient::MetricJet jet;
  jet.g = g(x);
  for (int k = 0; k < 3; ++k) {
    jet.dg[k] = num::fd_first(g, x, k, h_t);
    for (int l = 0; l <= k; ++l) jet.d2g[k][l] = jet.d2g[l][k] = num::fd_second(g, x, k, l, h_t);
  }
  return ambient::ricci_from_jet(jet).second;
}

std::vector<double> default_probe_angles() {
  std::vector<double> ts;
  for (double s : {0.2, 0.35, 0.5, 0.65, 0.8}) ts.push_back(s * std::numbers::pi);
  return ts;
}

double max_residual(const ExteriorFoliation& fol, const UField& u, std::span<const double> rhos,
                    std::span<const double> ts) {
  double m = 0.0;
  for (double rho : rhos)
    for (double t : ts) {
      const double h = 1e-3 * (1.0 + rho);
      m = std::max(m, std::abs(quasi_spherical_scalar_curvature(fol, u, rho, t, h)));
    }
  return m;
}

UField local_flow_field(const ExteriorFoliation& fol, const FlowResult& flow, double rho0) {
  const auto& traj = flow.trajectory;
  const int n = static_cast<int>(traj.size());
  const int width = std::min(6, n);
  const auto it = std::lower_bound(traj.begin(), traj.end(), rho0,
                                   [](const QSFlowState& s, double r) { return s.rho < r; });
  int first = static_cast<int>(it - traj.begin()) - width / 2;
  first = std::clamp(first, 0, n - width);

  std::vector<double> nodes(width);
  std::vector<Eigen::VectorXd> coeffs(width);
  for (int l = 0; l < width; ++l) {
    nodes[l] = traj[first + l].rho;
    const Eigen::VectorXd& v = traj[first + l].u;
    coeffs[l] = fol.collocation().coefficients(std::span<const double>(v.data(), v.size()));
  }
  const num::CosineCollocation* coll = &fol.collocation();
  return [nodes, coeffs, coll](double rho, double t) {
    double s = 0.0;
    for (std::size_t l = 0; l < nodes.size(); ++l) {
      double w = 1.0;
      for (std::size_t m = 0; m < nodes.size(); ++m)
        if (m != l) w *= (rho - nodes[m]) / (nodes[l] - nodes[m]);
      s += w * coll->evaluate(coeffs[l], t);
    }
    return s;
  };
}

double flow_residual(const ExteriorFoliation& fol, const FlowResult& flow, double rho0,
                     std::span<const double> ts) {
  const auto& traj = flow.trajectory;
  const auto it = std::lower_bound(traj.begin(), traj.end(), rho0,
                                   [](const QSFlowState& s, double r) { return s.rho < r; });
  const std::size_t i = std::min<std::size_t>(it - traj.begin(), traj.size() - 1);
  double spacing = 0.0;
  if (i + 1 < traj.size()) spacing = traj[i + 1].rho - traj[i].rho;
  if (i > 0) spacing = spacing > 0 ? std::min(spacing, traj[i].rho - traj[i - 1].rho)
                                   : traj[i].rho - traj[i - 1].rho;
  // The interpolant is a quintic in rho, which the stencils differentiate exactly.
  const double h_rho = 0.25 * spacing;
  const UField u = local_flow_field(fol, flow, rho0);
  // Stay inside the stencil at the start of the flow.
  const double rho = std::max(rho0, traj.front().rho + 2 * h_rho);
  double m = 0.0;
  for (double t : ts)
    m = std::max(m, std::abs(quasi_spherical_scalar_curvature(fol, u, rho, t, h_rho)));
  return m;
}

void attach_residuals(const ExteriorFoliation& fol, FlowResult& flow) {
  if (flow.trajectory.size() < 2) return;
  const std::vector<double> ts = default_probe_angles();
  for (QSFlowState& s : flow.trajectory) s.residual = flow_residual(fol, flow, s.rho, ts);
}

}  // namespace dlab::qsflow
