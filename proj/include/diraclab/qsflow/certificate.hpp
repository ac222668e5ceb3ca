#pragma once

#include <functional>
#include <vector>

#include "diraclab/harness/check_record.hpp"
#include "diraclab/qsflow/flow.hpp"
#include "diraclab/spectral/dirac_spectrum.hpp"

namespace dlab::qsflow {

struct Theorem1Certificate {
  double lambda1 = 0;
  double total_mean_curvature = 0;
  double area = 0;
  double thm1_lhs = 0;  // lambda1
  double thm1_rhs = 0;  // integral of H0 / (2 area)
  double slack = 0;
  double Q0 = 0;
  double mass = 0;
  double herzlich_H_over_2 = 0;  // boundary mean curvature of g_u over 2, which is lambda1
  std::vector<harness::CheckRecord> records;
};

/// The initial data H0 / (2 lambda1).
std::function<double(double)> certificate_initial_data(const surface::EmbeddedSurface& base,
                                                      double lambda1);

/// Checks the chain Q(0) = int H0 - 2 lambda1 |Sigma| >= Q(rho) >= 8 pi m >= -tol
/// along the whole trajectory. Throws PreconditionError unless the flow
/// started from H0 / (2 lambda1).
Theorem1Certificate theorem1_certificate(const ExteriorFoliation& foliation,
                                         const spectral::DiracSpectrumResult& spectrum,
                                         const FlowResult& flow, double tolerance = 1e-6);

/// The nine certificate fields; the records are emitted separately.
void to_json(nlohmann::json& j, const Theorem1Certificate& c);

}  // namespace dlab::qsflow
