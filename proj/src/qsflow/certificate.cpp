#include "diraclab/qsflow/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "diraclab/errors.hpp"

namespace dlab::qsflow {

using harness::make_record;
using harness::relative_tolerance;

std::function<double(double)> certificate_initial_data(const surface::EmbeddedSurface& base,
                                                      double lambda1) {
  return [base, lambda1](double t) { return base.at(t).H0 / (2 * lambda1); };
}

Theorem1Certificate theorem1_certificate(const ExteriorFoliation& fol,
                                         const spectral::DiracSpectrumResult& spectrum,
                                         const FlowResult& flow, double tol) {
  if (flow.trajectory.empty()) throw PreconditionError("certificate: empty trajectory");
  const surface::EmbeddedSurface& base = fol.base();
  const double l1 = spectrum.lambda1;
  const QSFlowState& first = flow.trajectory.front();
  if (first.rho != 0.0) throw PreconditionError("certificate: flow does not start at rho = 0");

  const ExteriorFoliation::Level lev0 = fol.level(0.0);
  double herz = 0, dev = 0;
  for (int j = 0; j < fol.size(); ++j) {
    const double want = lev0.H[j] / (2 * l1);
    dev = std::max(dev, std::abs(first.u[j] - want) / want);
    herz = std::max(herz, lev0.H[j] / (2 * first.u[j]));
  }
  if (dev > 1e-10)
    throw PreconditionError("certificate: u0 differs from H0/(2 lambda1) by " +
                            std::to_string(dev));

  Theorem1Certificate c;
  c.lambda1 = l1;
  c.total_mean_curvature = base.total_mean_curvature();
  c.area = base.area();
  c.thm1_lhs = l1;
  c.thm1_rhs = c.total_mean_curvature / (2 * c.area);
  c.slack = c.thm1_rhs - c.thm1_lhs;
  c.Q0 = first.Q;
  c.mass = flow.mass;
  c.herzlich_H_over_2 = herz;

  const std::string in = base.label();
  auto& R = c.records;
  R.push_back(make_record("thm1.upper_bound", in, c.thm1_lhs, c.thm1_rhs,
                          relative_tolerance(tol, c.thm1_lhs, c.thm1_rhs), "spectral",
                          "surface"));

  // Q(0) = int H0 - 2 lambda1 |Sigma|, both ways
  const double q0_closed = c.total_mean_curvature - 2 * l1 * c.area;
  {
    auto r = make_record("thm1.Q0_identity", in, std::abs(c.Q0 - q0_closed), 0.0,
                         relative_tolerance(tol, c.total_mean_curvature, 0.0), "qsflow",
                         "surface+spectral");
    R.push_back(r);
  }

  double worst_step = -INFINITY, worst_from_start = -INFINITY, q_min = first.Q;
  for (std::size_t i = 1; i < flow.trajectory.size(); ++i) {
    const double q = flow.trajectory[i].Q;
    worst_step = std::max(worst_step, q - flow.trajectory[i - 1].Q);
    worst_from_start = std::max(worst_from_start, q - c.Q0);
    q_min = std::min(q_min, q);
  }
  if (flow.trajectory.size() > 1) {
    R.push_back(make_record("qsflow.monotone_step", in, worst_step, 0.0, 1e-8, "qsflow",
                            "zero"));
    R.push_back(make_record("thm1.Q0_ge_Q", in, c.Q0 + worst_from_start, c.Q0, tol, "qsflow",
                            "qsflow"));
  }
  const double eight_pi_m = 8 * std::numbers::pi * c.mass;
  R.push_back(make_record("thm1.Q_ge_8pi_mass", in, eight_pi_m, q_min, tol, "qsflow tail fit",
                          "qsflow"));
  R.push_back(make_record("thm1.mass_nonnegative", in, -eight_pi_m, 0.0, tol, "zero",
                          "qsflow tail fit"));
  R.push_back(make_record("herzlich.boundary_H_over_2", in, c.herzlich_H_over_2, l1,
                          relative_tolerance(tol, c.herzlich_H_over_2, l1), "qsflow",
                          "spectral"));
  return c;
}

void to_json(nlohmann::json& j, const Theorem1Certificate& c) {
  j = nlohmann::json{{"lambda1", c.lambda1},
                     {"total_mean_curvature", c.total_mean_curvature},
                     {"area", c.area},
                     {"thm1_lhs", c.thm1_lhs},
                     {"thm1_rhs", c.thm1_rhs},
                     {"slack", c.slack},
                     {"Q0", c.Q0},
                     {"mass", c.mass},
                     {"herzlich_H_over_2", c.herzlich_H_over_2}};
}

}  // namespace dlab::qsflow
