#pragma once

#include "diraclab/ambient/chart.hpp"

namespace dlab::ambient {

/// Christoffel symbols Gamma[k](i, j) = Gamma^k_ij and, optionally, their
/// derivatives dGamma[m][k](i, j) = d_m Gamma^k_ij.
struct Connection {
  Mat3 g_inv;
  std::array<Mat3, 3> Gamma;
  std::array<std::array<Mat3, 3>, 3> dGamma;
};

Connection connection_from_jet(const MetricJet& jet, bool with_derivative = true);

struct CurvatureInvariants {
  double R = 0;
  Mat3 Ric = Mat3::Zero();
  double ric_squared = 0;  // |Ric|^2
  double E_squared = 0;    // |Ric - (R/3) g|^2 = |Ric|^2 - R^2/3
  double laplacian_R = 0;
  double laplacian_R_error = 0;  // Richardson estimate
  double L = 0;                  // (9/4) R^2 + 2 |Ric|^2 + 9 Laplacian R
};

/// Ricci tensor and scalar curvature from a metric jet.
std::pair<Mat3, double> ricci_from_jet(const MetricJet& jet);

/// Scalar curvature at x: closed form when the chart has one, else from the jet.
double scalar_curvature(const AmbientChart& chart, const Vec3& x);

/// Throws DomainError outside the chart and NumericalError when the
/// derivatives are not finite or the Richardson check fails.
CurvatureInvariants curvature_at(const AmbientChart& chart, const Vec3& p);

}  // namespace dlab::ambient
