#include "diraclab/ambient/chart_descriptor.hpp"

#include <fstream>

#include "diraclab/errors.hpp"
#include "diraclab/numerics/descriptor.hpp"

namespace dlab::ambient {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double parse_number(const std::string& v, const std::string& where) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size()) throw ParseError(where + ": expected a number, got '" + v + "'");
  return out;
}

}  // namespace

PerturbationSpec load_perturbation(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open perturbation file " + path.string());
  static const char* keys[6] = {"xx", "xy", "xz", "yy", "yz", "zz"};
  PerturbationSpec spec;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "tau") {
      spec.decay_rate = parse_number(value, where);
    } else if (key == "mass") {
      spec.mass = parse_number(value, where);
    } else {
      int c = 0;
      while (c < 6 && key != keys[c]) ++c;
      if (c == 6) throw ParseError(where + ": unknown key '" + key + "'");
      num::Expression::parse(value);  // report syntax errors with the location
      spec.components[c] = value;
    }
  }
  return spec;
}

ChartPtr make_chart(std::string_view text) {
  const num::Descriptor d = num::parse_descriptor(text);
  if (d.name == "euclidean") {
    d.allow_only({});
    return euclidean_chart();
  }
  if (d.name == "schwarzschild") {
    d.allow_only({"m"});
    return schwarzschild_chart(d.number_or("m", 1.0));
  }
  if (d.name == "spaceform") {
    d.allow_only({"k"});
    return space_form_chart(d.number_or("k", 1.0));
  }
  if (d.name == "perturbed") {
    d.allow_only({"file"});
    return perturbed_chart(load_perturbation(d.text("file")));
  }
  throw ParseError("unknown chart '" + d.name + "'");
}

}  // namespace dlab::ambient
