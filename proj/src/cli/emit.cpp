#include "diraclab/cli/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "diraclab/errors.hpp"

#ifndef DIRACLAB_VERSION
#define DIRACLAB_VERSION "0.0.0"
#endif

namespace dlab::cli {

std::string version_line() { return std::string("diraclab ") + DIRACLAB_VERSION; }

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::filesystem::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

void Table::add(const std::vector<double>& values) {
  std::vector<std::string> row;
  for (double v : values) row.push_back(format_number(v));
  add_text(std::move(row));
}

void Table::add_text(std::vector<std::string> values) {
  if (values.size() != columns.size()) throw PreconditionError("Table: row width mismatch");
  rows.push_back(std::move(values));
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string to_csv(const Table& t, const Stamp& stamp) {
  std::ostringstream os;
  os << "# " << version_line() << "\n";
  os << "# experiment=" << stamp.experiment << " config_hash=" << stamp.config_hash << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\n";
  }
  return os.str();
}

nlohmann::json wrap(const Stamp& stamp, nlohmann::json body) {
  nlohmann::json j{{"version", version_line()},
                   {"config_hash", stamp.config_hash},
                   {"experiment", stamp.experiment}};
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

Table records_table(const std::vector<harness::CheckRecord>& records) {
  Table t;
  t.columns = {"theorem", "inputs", "lhs", "rhs", "slack", "tolerance", "verdict",
               "lhs_source", "rhs_source"};
  for (const auto& r : records)
    t.add_text({r.theorem, r.inputs, format_number(r.lhs), format_number(r.rhs),
                format_number(r.slack), format_number(r.tolerance), harness::to_string(r.verdict),
                r.lhs_source, r.rhs_source});
  return t;
}

std::string loglog_svg(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series,
                       const Stamp& stamp) {
  constexpr double W = 640, H = 440, left = 80, right = 20, top = 40, bottom = 60;
  const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::vector<std::vector<std::pair<double, double>>> pts;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    auto& p = pts.emplace_back();
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      const double lx = std::log10(std::abs(s.x[i])), ly = std::log10(std::abs(s.y[i]));
      if (!std::isfinite(lx) || !std::isfinite(ly)) continue;
      p.emplace_back(lx, ly);
      x0 = std::min(x0, lx), x1 = std::max(x1, lx), y0 = std::min(y0, ly), y1 = std::max(y1, ly);
    }
  }
  if (!(x1 > x0)) x0 -= 0.5, x1 += 0.5;
  if (!(y1 > y0)) y0 -= 0.5, y1 += 0.5;
  x0 = std::floor(x0), x1 = std::ceil(x1), y0 = std::floor(y0), y1 = std::ceil(y1);
  const auto X = [&](double lx) { return left + (lx - x0) / (x1 - x0) * (W - left - right); };
  const auto Y = [&](double ly) { return H - bottom - (ly - y0) / (y1 - y0) * (H - top - bottom); };

  std::ostringstream os;
  os.precision(6);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<!-- " << version_line() << " experiment=" << stamp.experiment
     << " config_hash=" << stamp.config_hash << " -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << xml_escape(title) << "</text>\n";
  for (int d = static_cast<int>(x0); d <= static_cast<int>(x1); ++d)
    os << "<line x1=\"" << X(d) << "\" y1=\"" << top << "\" x2=\"" << X(d) << "\" y2=\""
       << H - bottom << "\" stroke=\"#ddd\"/>\n<text x=\"" << X(d) << "\" y=\"" << H - bottom + 16
       << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
  for (int d = static_cast<int>(y0); d <= static_cast<int>(y1); ++d)
    os << "<line x1=\"" << left << "\" y1=\"" << Y(d) << "\" x2=\"" << W - right << "\" y2=\""
       << Y(d) << "\" stroke=\"#ddd\"/>\n<text x=\"" << left - 6 << "\" y=\"" << Y(d) + 4
       << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << W - left - right
     << "\" height=\"" << H - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 18
     << "\" text-anchor=\"middle\">" << xml_escape(x_label) << "</text>\n";
  os << "<text transform=\"translate(18," << (top + H - bottom) / 2
     << ") rotate(-90)\" text-anchor=\"middle\">" << xml_escape(y_label) << "</text>\n";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const char* col = colours[k % std::size(colours)];
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [lx, ly] : pts[k]) os << X(lx) << "," << Y(ly) << " ";
    os << "\"/>\n";
    for (const auto& [lx, ly] : pts[k])
      os << "<circle cx=\"" << X(lx) << "\" cy=\"" << Y(ly) << "\" r=\"2.5\" fill=\"" << col
         << "\"/>\n";
    os << "<text x=\"" << W - right - 8 << "\" y=\"" << top + 16 + 16 * k
       << "\" text-anchor=\"end\" fill=\"" << col << "\">" << xml_escape(series[k].label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace dlab::cli
