#include "diraclab/harness/expansion_fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "diraclab/errors.hpp"

namespace dlab::harness {

ExpansionFit fit_expansion(std::string observable, std::vector<double> radii,
                           std::vector<double> samples, std::vector<int> powers,
                           std::vector<TargetCoefficient> targets) {
  if (radii.size() != samples.size())
    throw PreconditionError("fit_expansion: radii and samples differ in length");
  if (radii.size() <= powers.size())
    throw PreconditionError("fit_expansion: need more samples than fit terms");
  std::vector<std::size_t> idx(radii.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return radii[a] < radii[b]; });
  ExpansionFit e;
  e.observable = std::move(observable);
  for (auto i : idx) {
    e.radii.push_back(radii[i]);
    e.samples.push_back(samples[i]);
  }
  e.fit = num::fit_powers(e.radii, e.samples, powers);
  e.targets = std::move(targets);
  return e;
}

std::vector<double> window_residuals(const ExpansionFit& e, std::size_t width) {
  std::vector<double> out;
  const std::size_t n = e.radii.size();
  if (width == 0) width = e.fit.powers.size() + 3;
  if (width <= e.fit.powers.size()) throw PreconditionError("window_residuals: window too narrow");
  for (std::size_t i = 0; i + width <= n; ++i) {
    const std::span<const double> r(e.radii.data() + i, width), y(e.samples.data() + i, width);
    out.push_back(num::fit_powers(r, y, e.fit.powers).residual_rms);
  }
  return out;
}

void to_json(nlohmann::json& j, const ExpansionFit& e) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (std::size_t i = 0; i < e.fit.powers.size(); ++i)
    coeffs.push_back({{"power", e.fit.powers[i]},
                      {"value", e.fit.coefficients[i]},
                      {"std_error", e.fit.std_errors[i]}});
  nlohmann::json targets = nlohmann::json::array();
  for (const auto& t : e.targets)
    targets.push_back({{"power", t.power}, {"low", t.low}, {"high", t.high}, {"source", t.source}});
  j = nlohmann::json{{"observable", e.observable},
                     {"radii", e.radii},
                     {"samples", e.samples},
                     {"coefficients", coeffs},
                     {"targets", targets},
                     {"residual_rms", e.fit.residual_rms}};
}

}  // namespace dlab::harness
