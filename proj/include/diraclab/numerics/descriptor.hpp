#pragma once

#include <map>
#include <string>
#include <string_view>

namespace dlab::num {

/// `name` or `name:key=value,key=value`. Keys are unique.
struct Descriptor {
  std::string name;
  std::map<std::string, std::string> params;

  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::string text(const std::string& key) const;
  bool has(const std::string& key) const { return params.count(key) != 0; }
  /// Throws ParseError naming the first key outside `allowed`.
  void allow_only(std::initializer_list<std::string_view> allowed) const;
};

/// Throws ParseError on malformed text.
Descriptor parse_descriptor(std::string_view text);

}  // namespace dlab::num
