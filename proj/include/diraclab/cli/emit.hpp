#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "diraclab/harness/check_record.hpp"
#include "json.hpp"

namespace dlab::cli {

/// "diraclab <version>".
std::string version_line();

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

/// Shortest text that reads back to the same double (%.17g); nan and inf
/// are written as such.
std::string format_number(double v);

/// Provenance stamped into every artifact.
struct Stamp {
  std::string experiment;
  std::string config_hash;
};

/// Writes through a temporary file in the same directory and renames it
/// into place. Throws IoError.
void write_atomic(const std::filesystem::path& path, std::string_view content);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(const std::vector<double>& values);
  void add_text(std::vector<std::string> values);
};

/// '#' comment lines with the version and config hash, then the header
/// and the rows. Fields containing commas or quotes are quoted.
std::string to_csv(const Table& t, const Stamp& stamp);

/// {"version", "config_hash", "experiment"} merged with body.
nlohmann::json wrap(const Stamp& stamp, nlohmann::json body);

Table records_table(const std::vector<harness::CheckRecord>& records);

struct Series {
  std::string label;
  std::vector<double> x, y;
};

/// Static log-log plot of |y| against |x|; points with zero or non-finite
/// coordinates are dropped.
std::string loglog_svg(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series,
                       const Stamp& stamp);

}  // namespace dlab::cli
