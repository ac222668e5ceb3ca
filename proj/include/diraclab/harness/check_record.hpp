#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace dlab::harness {

enum class Verdict { holds, equality, violated, inconclusive };

std::string to_string(Verdict v);

/// One quantitative check lhs <= rhs, oriented so slack = rhs - lhs >= 0
/// means the inequality holds.
struct CheckRecord {
  std::string theorem;
  std::string inputs;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;
  double tolerance = 0;
  Verdict verdict = Verdict::inconclusive;
  std::string lhs_source;
  std::string rhs_source;
  std::string note;
};

/// equality iff |slack| <= tol, violated iff slack < -tol.
Verdict classify(double slack, double tolerance);

/// Record for lhs <= rhs with an absolute tolerance.
CheckRecord make_record(std::string theorem, std::string inputs, double lhs, double rhs,
                        double tolerance, std::string lhs_source, std::string rhs_source);

/// rel * max(|lhs|, |rhs|, floor).
double relative_tolerance(double rel, double lhs, double rhs, double floor = 1e-300);

CheckRecord inconclusive_record(std::string theorem, std::string inputs, std::string reason);

/// True when no record is violated.
bool all_hold(const std::vector<CheckRecord>& records);
bool any_inconclusive(const std::vector<CheckRecord>& records);

void to_json(nlohmann::json& j, const CheckRecord& r);

}  // namespace dlab::harness
