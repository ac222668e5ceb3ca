#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diraclab/cli/emit.hpp"

namespace dlab::cli {

struct ConvergenceRow {
  double level = 0;  // L or a step size
  double value = 0;
  std::optional<double> difference;  // value - previous value
  std::optional<double> order;       // from three consecutive levels
  bool converged = false;            // difference at round-off level
};

struct ConvergenceTable {
  std::string quantity;
  std::string level_name;
  std::vector<ConvergenceRow> rows;
};

/// order_i = log(|d_{i-1}| / |d_i|) / |log(level_{i-1} / level_i)| with
/// d_i = value_i - value_{i-1}. Rows whose difference is below
/// 1e-14 max(1, |value|) are marked converged instead. Throws
/// PreconditionError with fewer than three levels.
ConvergenceTable convergence_table(std::string quantity, std::string level_name,
                                   const std::vector<double>& levels,
                                   const std::vector<double>& values);

/// CSV columns: level, value, difference, order ("converged" sentinel).
std::string convergence_csv(const ConvergenceTable& t, const Stamp& stamp);

/// Log-log plot of |difference| against level.
std::string convergence_svg(const ConvergenceTable& t, const Stamp& stamp);

}  // namespace dlab::cli
