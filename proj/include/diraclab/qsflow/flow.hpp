#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <vector>

#include "diraclab/qsflow/foliation.hpp"

namespace dlab::qsflow {

struct FlowOptions {
  double rho_max = 0;         // 0: 50 * base diameter
  double step_rel = 0.0025;    // d rho = step_rel * (rho + diameter / 2)
  double max_change = 0.02;   // largest accepted relative change of u per step
  double newton_tol = 1e-13;
  int max_newton = 30;
  double monotone_tol = 1e-8; // allowed increase of Q per step
  double tail_fraction = 0.1; // fit Q = Q_inf + a/rho + b/rho^2 on [tail_fraction * rho_max, rho_max]
  int max_steps = 200000;
};

struct QSFlowState {
  double rho = 0;
  Eigen::VectorXd u;  // at the collocation nodes
  double Q = 0;
  double min_u = 0, max_u = 0;
  double residual = std::numeric_limits<double>::quiet_NaN();
};

struct FlowResult {
  std::vector<QSFlowState> trajectory;
  double rho_max = 0;
  double Q_inf = 0;
  double mass = 0;           // Q_inf / (8 pi)
  double tail_slope = 0;     // a in Q = Q_inf + a / rho + b / rho^2
  double tail_rms = 0;
  double max_deviation = 0;  // max |u - 1| along the flow
  int rejected_steps = 0;
};

/// Q = integral over Sigma_rho of H (1 - 1/u).
double monotone_quantity(const ExteriorFoliation::Level& level, const Eigen::VectorXd& u);

/// Right-hand side of H u_rho = u^2 Laplacian u + K (u - u^3).
Eigen::VectorXd flow_rhs(const ExteriorFoliation::Level& level, const Eigen::VectorXd& u);

/// Marches the scalar-flat quasi-spherical equation from u(., 0) = u0 with
/// implicit trapezoidal steps. Throws FlowError when u leaves (0, 1e6) or
/// Q increases by more than monotone_tol in one step.
FlowResult run_flow(const ExteriorFoliation& foliation, const std::function<double(double t)>& u0,
                    const FlowOptions& options = {});

}  // namespace dlab::qsflow
