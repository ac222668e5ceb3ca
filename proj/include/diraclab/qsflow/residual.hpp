#pragma once

#include <functional>
#include <span>

#include "diraclab/qsflow/flow.hpp"

namespace dlab::qsflow {

using UField = std::function<double(double rho, double t)>;

/// Scalar curvature of u^2 drho^2 + gamma_rho at (rho, t), from fourth-order
/// finite differences of the metric in the coordinates (rho, t, phi).
/// `h_rho` and `h_t` are the difference steps along rho and t.
double quasi_spherical_scalar_curvature(const ExteriorFoliation& foliation, const UField& u,
                                        double rho, double t, double h_rho, double h_t = 2e-3);

/// Interior meridian probes used by the residual diagnostics.
std::vector<double> default_probe_angles();

/// max |R(g_u)| over rhos x ts for a closed-form u.
double max_residual(const ExteriorFoliation& foliation, const UField& u,
                    std::span<const double> rhos, std::span<const double> ts);

/// u near rho0 from a computed flow: six-point Lagrange interpolation in rho
/// over the stored levels nearest rho0, cosine series in t.
UField local_flow_field(const ExteriorFoliation& foliation, const FlowResult& flow, double rho0);

/// max |R(g_u)| at rho0 over the probe angles for a computed flow.
double flow_residual(const ExteriorFoliation& foliation, const FlowResult& flow, double rho0,
                     std::span<const double> ts);

/// Fills QSFlowState::residual for every state of the trajectory.
void attach_residuals(const ExteriorFoliation& foliation, FlowResult& flow);

}  // namespace dlab::qsflow
