#include "diraclab/numerics/descriptor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "diraclab/errors.hpp"

namespace dlab::num {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

double Descriptor::number(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ParseError(name + ": missing parameter '" + key + "'");
  const std::string& v = it->second;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    throw ParseError(name + ": parameter '" + key + "' is not a number: '" + v + "'");
  return out;
}

double Descriptor::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::string Descriptor::text(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ParseError(name + ": missing parameter '" + key + "'");
  return it->second;
}

void Descriptor::allow_only(std::initializer_list<std::string_view> allowed) const {
  for (const auto& [k, v] : params)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw ParseError(name + ": unknown parameter '" + k + "'");
}

Descriptor parse_descriptor(std::string_view text) {
  Descriptor d;
  const auto colon = text.find(':');
  d.name = trim(text.substr(0, colon));
  if (d.name.empty()) throw ParseError("empty descriptor name in '" + std::string(text) + "'");
  if (colon == std::string_view::npos) return d;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(d.name + ": expected key=value, got '" + std::string(item) + "'");
    std::string key = trim(item.substr(0, eq)), value = trim(item.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError(d.name + ": empty key or value in '" + std::string(item) + "'");
    if (!d.params.emplace(key, value).second)
      throw ParseError(d.name + ": duplicate parameter '" + key + "'");
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
    if (rest.empty()) throw ParseError(d.name + ": trailing comma");
  }
  return d;
}

}  // namespace dlab::num
