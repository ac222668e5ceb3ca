#include "diraclab/harness/check_record.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dlab::harness {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::equality: return "equality";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict classify(double slack, double tolerance) {
  if (!std::isfinite(slack) || !(tolerance >= 0)) return Verdict::inconclusive;
  if (std::abs(slack) <= tolerance) return Verdict::equality;
  if (slack < -tolerance) return Verdict::violated;
  return Verdict::holds;
}

CheckRecord make_record(std::string theorem, std::string inputs, double lhs, double rhs,
                        double tolerance, std::string lhs_source, std::string rhs_source) {
  CheckRecord r;
  r.theorem = std::move(theorem);
  r.inputs = std::move(inputs);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tolerance = tolerance;
  r.verdict = classify(r.slack, tolerance);
  r.lhs_source = std::move(lhs_source);
  r.rhs_source = std::move(rhs_source);
  return r;
}

double relative_tolerance(double rel, double lhs, double rhs, double floor) {
  return rel * std::max({std::abs(lhs), std::abs(rhs), floor});
}

CheckRecord inconclusive_record(std::string theorem, std::string inputs, std::string reason) {
  CheckRecord r;
  r.theorem = std::move(theorem);
  r.inputs = std::move(inputs);
  r.lhs = r.rhs = r.slack = std::numeric_limits<double>::quiet_NaN();
  r.verdict = Verdict::inconclusive;
  r.note = std::move(reason);
  return r;
}

bool all_hold(const std::vector<CheckRecord>& records) {
  return std::none_of(records.begin(), records.end(),
                      [](const CheckRecord& r) { return r.verdict == Verdict::violated; });
}

bool any_inconclusive(const std::vector<CheckRecord>& records) {
  return std::any_of(records.begin(), records.end(),
                     [](const CheckRecord& r) { return r.verdict == Verdict::inconclusive; });
}

void to_json(nlohmann::json& j, const CheckRecord& r) {
  const auto num = [](double v) -> nlohmann::json {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  j = nlohmann::json{{"theorem", r.theorem},
                     {"inputs", r.inputs},
                     {"lhs", num(r.lhs)},
                     {"rhs", num(r.rhs)},
                     {"slack", num(r.slack)},
                     {"tolerance", num(r.tolerance)},
                     {"verdict", to_string(r.verdict)},
                     {"provenance", {{"lhs", r.lhs_source}, {"rhs", r.rhs_source}}}};
  if (!r.note.empty()) j["note"] = r.note;
}

}  // namespace dlab::harness
