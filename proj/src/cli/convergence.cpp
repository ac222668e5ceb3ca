#include "diraclab/cli/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "diraclab/errors.hpp"

namespace dlab::cli {

ConvergenceTable convergence_table(std::string quantity, std::string level_name,
                                   const std::vector<double>& levels,
                                   const std::vector<double>& values) {
  if (levels.size() != values.size())
    throw PreconditionError("convergence_table: levels and values differ in length");
  if (levels.size() < 3)
    throw PreconditionError("convergence_table: need at least 3 resolution levels, got " +
                            std::to_string(levels.size()));
  ConvergenceTable t{std::move(quantity), std::move(level_name), {}};
  for (std::size_t i = 0; i < levels.size(); ++i) {
    ConvergenceRow row{levels[i], values[i], {}, {}, false};
    if (i > 0) {
      const double d = values[i] - values[i - 1];
      row.difference = d;
      row.converged = std::abs(d) <= 1e-14 * std::max(1.0, std::abs(values[i]));
    }
    if (i > 1 && !row.converged && !t.rows[i - 1].converged) {
      const double dprev = *t.rows[i - 1].difference, d = *row.difference;
      const double lr = std::abs(std::log(levels[i - 1] / levels[i]));
      if (lr > 0) row.order = std::log(std::abs(dprev) / std::abs(d)) / lr;
    }
    t.rows.push_back(row);
  }
  return t;
}

std::string convergence_csv(const ConvergenceTable& t, const Stamp& stamp) {
  Table tab;
  tab.columns = {t.level_name, t.quantity, "difference", "order"};
  for (const auto& r : t.rows)
    tab.add_text({format_number(r.level), format_number(r.value),
                  r.difference ? format_number(*r.difference) : "",
                  r.converged ? "converged" : (r.order ? format_number(*r.order) : "")});
  return to_csv(tab, stamp);
}

std::string convergence_svg(const ConvergenceTable& t, const Stamp& stamp) {
  Series s{"|difference|", {}, {}};
  for (const auto& r : t.rows)
    if (r.difference) {
      s.x.push_back(r.level);
      s.y.push_back(*r.difference);
    }
  return loglog_svg(t.quantity + " convergence", t.level_name, "|difference|", {s}, stamp);
}

}  // namespace dlab::cli
