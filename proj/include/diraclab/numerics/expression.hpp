#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace dlab::num {

/// A compiled closed-form expression in the Cartesian coordinates x, y, z
/// (and r = |x|). Supports + - * / ^, unary minus, parentheses, the
/// constants pi and e, and the functions sin cos tan exp log sqrt abs
/// sinh cosh tanh atan pow(a, b).
class Expression {
 public:
  Expression() = default;
  static Expression parse(std::string_view text);

  double operator()(double x, double y, double z) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace dlab::num
