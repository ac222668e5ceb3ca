#include "diraclab/qsflow/flow.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "diraclab/errors.hpp"
#include "diraclab/numerics/fit.hpp"

namespace dlab::qsflow {

namespace {

struct StepOutcome {
  bool ok = false;
  Eigen::VectorXd u;
};

StepOutcome trapezoidal_step(const ExteriorFoliation& fol, const Eigen::VectorXd& u, double rho,
                             double dr, const FlowOptions& o) {
  const ExteriorFoliation::Level now = fol.level(rho);
  const ExteriorFoliation::Level next = fol.level(rho + dr);
  const Eigen::VectorXd Fn = flow_rhs(now, u);
  const int n = static_cast<int>(u.size());
  Eigen::VectorXd v = u + dr * Fn;
  for (int it = 0; it < o.max_newton; ++it) {
    if (!v.allFinite() || v.minCoeff() <= 0) return {};
    const Eigen::VectorXd lap = next.laplacian * v;
    const Eigen::VectorXd F = flow_rhs(next, v);
    const Eigen::VectorXd G = v - u - 0.5 * dr * (Fn + F);
    Eigen::MatrixXd J = (v.cwiseAbs2().cwiseQuotient(next.H)).asDiagonal() * next.laplacian;
    for (int j = 0; j < n; ++j)
      J(j, j) += (2.0 * v[j] * lap[j] + next.K[j] * (1.0 - 3.0 * v[j] * v[j])) / next.H[j];
    const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - 0.5 * dr * J;
    const Eigen::VectorXd delta = A.partialPivLu().solve(G);
    v -= delta;
    if (delta.lpNorm<Eigen::Infinity>() <= o.newton_tol * std::max(1.0, v.lpNorm<Eigen::Infinity>()))
      return {v.allFinite() && v.minCoeff() > 0, v};
  }
  return {};
}

}  // namespace

double monotone_quantity(const ExteriorFoliation::Level& level, const Eigen::VectorXd& u) {
  double q = 0.0;
  for (int j = 0; j < u.size(); ++j) q += level.area_weight[j] * level.H[j] * (1.0 - 1.0 / u[j]);
  return q;
}

Eigen::VectorXd flow_rhs(const ExteriorFoliation::Level& level, const Eigen::VectorXd& u) {
  const Eigen::VectorXd lap = level.laplacian * u;
  Eigen::VectorXd out(u.size());
  for (int j = 0; j < u.size(); ++j)
    out[j] = (u[j] * u[j] * lap[j] + level.K[j] * (u[j] - u[j] * u[j] * u[j])) / level.H[j];
  return out;
}

FlowResult run_flow(const ExteriorFoliation& fol, const std::function<double(double)>& u0,
                    const FlowOptions& o) {
  FlowResult res;
  res.rho_max = o.rho_max > 0 ? o.rho_max : 50.0 * fol.diameter();
  const double scale = 0.5 * fol.diameter();

  Eigen::VectorXd u(fol.size());
  for (int j = 0; j < fol.size(); ++j) {
    u[j] = u0(fol.collocation().nodes()[j]);
    if (!(u[j] > 0) || !std::isfinite(u[j]))
      throw PreconditionError("initial data u0 must be positive and finite");
  }
  const auto record = [&](double rho, const Eigen::VectorXd& v) {
    QSFlowState s;
    s.rho = rho;
    s.u = v;
    s.Q = monotone_quantity(fol.level(rho), v);
    s.min_u = v.minCoeff();
    s.max_u = v.maxCoeff();
    res.max_deviation = std::max(res.max_deviation, (v.array() - 1.0).abs().maxCoeff());
    res.trajectory.push_back(std::move(s));
  };
  record(0.0, u);

  double rho = 0.0;
  double dr = o.step_rel * scale;
  for (int step = 0; rho < res.rho_max; ++step) {
    if (step >= o.max_steps) throw FlowError("flow exceeded the step budget");
    dr = std::min({dr, o.step_rel * (rho + scale), res.rho_max - rho});
    StepOutcome out = trapezoidal_step(fol, u, rho, dr, o);
    const bool small_change =
        out.ok && (out.u - u).lpNorm<Eigen::Infinity>() <= o.max_change * u.lpNorm<Eigen::Infinity>();
    if (!small_change) {
      ++res.rejected_steps;
      dr *= 0.5;
      if (dr < 1e-12 * scale) {
        std::ostringstream msg;
        msg << "flow failure at rho = " << rho << ": u degenerates (min u = " << u.minCoeff()
            << ", max u = " << u.maxCoeff() << ")";
        throw FlowError(msg.str());
      }
      continue;
    }
    rho = (res.rho_max - rho - dr < 1e-12 * res.rho_max) ? res.rho_max : rho + dr;
    u = out.u;
    if (u.maxCoeff() > 1e6) throw FlowError("flow failure: u blows up");
    const double q_prev = res.trajectory.back().Q;
    record(rho, u);
    if (res.trajectory.back().Q > q_prev + o.monotone_tol) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "consistency failure: Q increased from " << q_prev << " to "
          << res.trajectory.back().Q << " at rho = " << rho;
      throw FlowError(msg.str());
    }
    dr *= 2.0;  // let the step grow back toward the relative target
  }

  std::vector<double> x, y;
  for (const QSFlowState& s : res.trajectory)
    if (s.rho >= o.tail_fraction * res.rho_max) {
      x.push_back(s.rho);
      y.push_back(s.Q);
    }
  if (x.size() < 4) throw FlowError("too few accepted steps in the tail window for the mass fit");
  const int powers[] = {0, -1, -2};
  const num::PowerFit fit = num::fit_powers(x, y, powers);
  res.Q_inf = fit.coefficient(0);
  res.tail_slope = fit.coefficient(-1);
  res.tail_rms = fit.residual_rms;
  res.mass = res.Q_inf / (8.0 * std::numbers::pi);
  return res;
}

}  // namespace dlab::qsflow
