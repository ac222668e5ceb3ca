#pragma once

#include <string>
#include <vector>

#include "diraclab/numerics/fit.hpp"
#include "json.hpp"

namespace dlab::harness {

/// Expected value of one fitted coefficient, or a bracket [low, high].
struct TargetCoefficient {
  int power = 0;
  double low = 0, high = 0;
  std::string source;
};

/// Least-squares fit of samples(r) against sum_k c_k r^{p_k}.
struct ExpansionFit {
  std::string observable;
  std::vector<double> radii;
  std::vector<double> samples;
  num::PowerFit fit;
  std::vector<TargetCoefficient> targets;

  double coefficient(int power) const { return fit.coefficient(power); }
  double std_error(int power) const { return fit.std_error(power); }
};

ExpansionFit fit_expansion(std::string observable, std::vector<double> radii,
                           std::vector<double> samples, std::vector<int> powers,
                           std::vector<TargetCoefficient> targets = {});

/// Fit residual rms over sliding windows of `width` consecutive radii
/// (ascending): element i uses radii[i, i + width). width 0 means the
/// number of fit terms plus three.
std::vector<double> window_residuals(const ExpansionFit& e, std::size_t width = 0);

void to_json(nlohmann::json& j, const ExpansionFit& e);

}  // namespace dlab::harness
