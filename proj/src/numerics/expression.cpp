#include "diraclab/numerics/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

#include "diraclab/errors.hpp"

namespace dlab::num {

struct Expression::Node {
  enum class Op { constant, var_x, var_y, var_z, var_r, neg, add, sub, mul, div, pow, call };
  Op op = Op::constant;
  double value = 0.0;
  double (*fn)(double) = nullptr;
  std::shared_ptr<const Node> lhs, rhs;

  double eval(double x, double y, double z) const {
    switch (op) {
      case Op::constant: return value;
      case Op::var_x: return x;
      case Op::var_y: return y;
      case Op::var_z: return z;
      case Op::var_r: return std::sqrt(x * x + y * y + z * z);
      case Op::neg: return -lhs->eval(x, y, z);
      case Op::add: return lhs->eval(x, y, z) + rhs->eval(x, y, z);
      case Op::sub: return lhs->eval(x, y, z) - rhs->eval(x, y, z);
      case Op::mul: return lhs->eval(x, y, z) * rhs->eval(x, y, z);
      case Op::div: return lhs->eval(x, y, z) / rhs->eval(x, y, z);
      case Op::pow: return std::pow(lhs->eval(x, y, z), rhs->eval(x, y, z));
      case Op::call: return fn(lhs->eval(x, y, z));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

NodePtr constant(double v) {
  auto n = std::make_shared<Expression::Node>();
  n->value = v;
  return n;
}

// Recursive descent:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | ident | ident '(' args ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression '" + std::string(s_) + "': " + msg +
                     " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr l = term();
    for (;;) {
      if (accept('+')) l = make(Op::add, l, term());
      else if (accept('-')) l = make(Op::sub, l, term());
      else return l;
    }
  }
  NodePtr term() {
    NodePtr l = unary();
    for (;;) {
      if (accept('*')) l = make(Op::mul, l, unary());
      else if (accept('/')) l = make(Op::div, l, unary());
      else return l;
    }
  }
  NodePtr unary() {
    if (accept('-')) return make(Op::neg, unary());
    if (accept('+')) return unary();
    return power();
  }
  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return make(Op::pow, base, unary());
    return base;
  }
  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (accept('(')) {
      NodePtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }
  NodePtr number() {
    const std::string rest(s_.substr(pos_));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("malformed number");
    }
    pos_ += used;
    return constant(v);
  }
  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string name(s_.substr(start, pos_ - start));
    if (name == "x") return make(Op::var_x);
    if (name == "y") return make(Op::var_y);
    if (name == "z") return make(Op::var_z);
    if (name == "r") return make(Op::var_r);
    if (name == "pi") return constant(std::numbers::pi);
    if (name == "e") return constant(std::numbers::e);
    if (!accept('(')) fail("unknown identifier '" + name + "'");
    NodePtr arg = expr();
    if (name == "pow") {
      if (!accept(',')) fail("pow expects two arguments");
      NodePtr exponent = expr();
      if (!accept(')')) fail("expected ')'");
      return make(Op::pow, arg, exponent);
    }
    if (!accept(')')) fail("expected ')'");
    static const std::vector<std::pair<std::string, double (*)(double)>> table = {
        {"sin", [](double v) { return std::sin(v); }},
        {"cos", [](double v) { return std::cos(v); }},
        {"tan", [](double v) { return std::tan(v); }},
        {"exp", [](double v) { return std::exp(v); }},
        {"log", [](double v) { return std::log(v); }},
        {"sqrt", [](double v) { return std::sqrt(v); }},
        {"abs", [](double v) { return std::abs(v); }},
        {"sinh", [](double v) { return std::sinh(v); }},
        {"cosh", [](double v) { return std::cosh(v); }},
        {"tanh", [](double v) { return std::tanh(v); }},
        {"atan", [](double v) { return std::atan(v); }},
    };
    for (const auto& [fname, fn] : table)
      if (fname == name) {
        auto n = std::make_shared<Expression::Node>();
        n->op = Op::call;
        n->fn = fn;
        n->lhs = arg;
        return n;
      }
    fail("unknown function '" + name + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.text_ = std::string(text);
  e.root_ = Parser(text).parse();
  return e;
}

double Expression::operator()(double x, double y, double z) const {
  return root_ ? root_->eval(x, y, z) : 0.0;
}

}  // namespace dlab::num
