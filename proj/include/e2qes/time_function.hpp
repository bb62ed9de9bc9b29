#pragma once

// Real scalar functions of time as immutable expression trees with symbolic derivatives.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "e2qes/errors.hpp"
#include "e2qes/numerics.hpp"

namespace e2qes {

class TimeFunction {
 public:
  enum class Op {
    Constant, Time, Add, Sub, Mul, Div, Neg, Pow,
    Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Tanh,
    Integral,  // int_0^t a(s) ds
  };

  TimeFunction() : TimeFunction(0.0) {}
  TimeFunction(double c) : node_(std::make_shared<const Node>(Node{Op::Constant, c, nullptr, nullptr})) {}  // NOLINT

  static TimeFunction constant(double c) { return TimeFunction(c); }
  static TimeFunction time() { return TimeFunction(Op::Time, 0.0, nullptr, nullptr); }
  static TimeFunction integral(const TimeFunction& integrand) {
    if (integrand.is_zero()) return TimeFunction(0.0);
    return TimeFunction(Op::Integral, 0.0, integrand.node_, nullptr);
  }

  Op op() const noexcept { return node_->op; }
  bool is_constant() const noexcept { return node_->op == Op::Constant; }
  std::optional<double> constant_value() const {
    if (is_constant()) return node_->value;
    return std::nullopt;
  }
  bool is_zero() const noexcept { return is_constant() && node_->value == 0.0; }

  double operator()(double t) const { return eval(*node_, t); }

  /// d/dt, built symbolically (constant-folded).
  TimeFunction derivative() const { return differentiate(node_); }

  std::string to_string() const { return print(*node_); }

  friend TimeFunction operator+(const TimeFunction& a, const TimeFunction& b) {
    if (a.is_constant() && b.is_constant()) return a.node_->value + b.node_->value;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return TimeFunction(Op::Add, 0.0, a.node_, b.node_);
  }
  friend TimeFunction operator-(const TimeFunction& a, const TimeFunction& b) {
    if (a.is_constant() && b.is_constant()) return a.node_->value - b.node_->value;
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    return TimeFunction(Op::Sub, 0.0, a.node_, b.node_);
  }
  friend TimeFunction operator*(const TimeFunction& a, const TimeFunction& b) {
    if (a.is_constant() && b.is_constant()) return a.node_->value * b.node_->value;
    if (a.is_zero() || b.is_zero()) return 0.0;
    if (a.is_constant() && a.node_->value == 1.0) return b;
    if (b.is_constant() && b.node_->value == 1.0) return a;
    return TimeFunction(Op::Mul, 0.0, a.node_, b.node_);
  }
  friend TimeFunction operator/(const TimeFunction& a, const TimeFunction& b) {
    if (b.is_zero()) throw PreconditionError("TimeFunction: division by the zero function");
    if (a.is_constant() && b.is_constant()) return a.node_->value / b.node_->value;
    if (a.is_zero()) return 0.0;
    if (b.is_constant() && b.node_->value == 1.0) return a;
    return TimeFunction(Op::Div, 0.0, a.node_, b.node_);
  }
  friend TimeFunction operator-(const TimeFunction& a) {
    if (a.is_constant()) return -a.node_->value;
    if (a.node_->op == Op::Neg) return TimeFunction(a.node_->a);
    return TimeFunction(Op::Neg, 0.0, a.node_, nullptr);
  }

  friend TimeFunction pow(const TimeFunction& base, const TimeFunction& exponent) {
    if (base.is_constant() && exponent.is_constant())
      return std::pow(base.node_->value, exponent.node_->value);
    if (exponent.is_constant() && exponent.node_->value == 0.0) return 1.0;
    if (exponent.is_constant() && exponent.node_->value == 1.0) return base;
    return TimeFunction(Op::Pow, 0.0, base.node_, exponent.node_);
  }
  friend TimeFunction sin(const TimeFunction& a) { return unary(Op::Sin, a); }
  friend TimeFunction cos(const TimeFunction& a) { return unary(Op::Cos, a); }
  friend TimeFunction tan(const TimeFunction& a) { return unary(Op::Tan, a); }
  friend TimeFunction exp(const TimeFunction& a) { return unary(Op::Exp, a); }
  friend TimeFunction log(const TimeFunction& a) { return unary(Op::Log, a); }
  friend TimeFunction sqrt(const TimeFunction& a) { return unary(Op::Sqrt, a); }
  friend TimeFunction sinh(const TimeFunction& a) { return unary(Op::Sinh, a); }
  friend TimeFunction cosh(const TimeFunction& a) { return unary(Op::Cosh, a); }
  friend TimeFunction tanh(const TimeFunction& a) { return unary(Op::Tanh, a); }

 private:
  struct Node {
    Op op;
    double value;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit TimeFunction(NodePtr n) : node_(std::move(n)) {}
  TimeFunction(Op op, double value, NodePtr a, NodePtr b)
      : node_(std::make_shared<const Node>(Node{op, value, std::move(a), std::move(b)})) {}

  static TimeFunction unary(Op op, const TimeFunction& a) {
    if (a.is_constant()) return apply_unary(op, a.node_->value);
    return TimeFunction(op, 0.0, a.node_, nullptr);
  }

  static double apply_unary(Op op, double x) {
    switch (op) {
      case Op::Sin: return std::sin(x);
      case Op::Cos: return std::cos(x);
      case Op::Tan: return std::tan(x);
      case Op::Exp: return std::exp(x);
      case Op::Log: return std::log(x);
      case Op::Sqrt: return std::sqrt(x);
      case Op::Sinh: return std::sinh(x);
      case Op::Cosh: return std::cosh(x);
      case Op::Tanh: return std::tanh(x);
      case Op::Neg: return -x;
      default: break;
    }
    throw PreconditionError("TimeFunction: not a unary operation");
  }

  static double eval(const Node& n, double t) {
    switch (n.op) {
      case Op::Constant: return n.value;
      case Op::Time: return t;
      case Op::Add: return eval(*n.a, t) + eval(*n.b, t);
      case Op::Sub: return eval(*n.a, t) - eval(*n.b, t);
      case Op::Mul: return eval(*n.a, t) * eval(*n.b, t);
      case Op::Div: return eval(*n.a, t) / eval(*n.b, t);
      case Op::Pow: return std::pow(eval(*n.a, t), eval(*n.b, t));
      case Op::Integral: {
        const Node& f = *n.a;
        return adaptive_simpson([&f](double s) { return eval(f, s); }, 0.0, t, 1e-10);
      }
      default: return apply_unary(n.op, eval(*n.a, t));
    }
  }

  static TimeFunction differentiate(const NodePtr& p) {
    const Node& n = *p;
    const TimeFunction a = n.a ? TimeFunction(n.a) : TimeFunction();
    const TimeFunction b = n.b ? TimeFunction(n.b) : TimeFunction();
    switch (n.op) {
      case Op::Constant: return 0.0;
      case Op::Time: return 1.0;
      case Op::Add: return a.derivative() + b.derivative();
      case Op::Sub: return a.derivative() - b.derivative();
      case Op::Mul: return a.derivative() * b + a * b.derivative();
      case Op::Div: return a.derivative() / b - a * b.derivative() / (b * b);
      case Op::Neg: return -a.derivative();
      case Op::Pow:
        if (b.is_constant())
          return b * pow(a, b.node_->value - 1.0) * a.derivative();
        return TimeFunction(p) * (b.derivative() * log(a) + b * a.derivative() / a);
      case Op::Sin: return cos(a) * a.derivative();
      case Op::Cos: return -(sin(a) * a.derivative());
      case Op::Tan: return a.derivative() / (cos(a) * cos(a));
      case Op::Exp: return TimeFunction(p) * a.derivative();
      case Op::Log: return a.derivative() / a;
      case Op::Sqrt: return a.derivative() / (2.0 * TimeFunction(p));
      case Op::Sinh: return cosh(a) * a.derivative();
      case Op::Cosh: return sinh(a) * a.derivative();
      case Op::Tanh: return a.derivative() / (cosh(a) * cosh(a));
      case Op::Integral: return a;
    }
    return 0.0;
  }

  static std::string number(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, end);
    return x < 0 ? "(" + s + ")" : s;
  }

  static std::string print(const Node& n) {
    auto bin = [](const Node& m, const char* op) {
      return "(" + print(*m.a) + " " + op + " " + print(*m.b) + ")";
    };
    auto call = [](const Node& m, const char* f) { return std::string(f) + "(" + print(*m.a) + ")"; };
    switch (n.op) {
      case Op::Constant: return number(n.value);
      case Op::Time: return "t";
      case Op::Add: return bin(n, "+");
      case Op::Sub: return bin(n, "-");
      case Op::Mul: return bin(n, "*");
      case Op::Div: return bin(n, "/");
      case Op::Pow: return bin(n, "^");
      case Op::Neg: return "(-" + print(*n.a) + ")";
      case Op::Sin: return call(n, "sin");
      case Op::Cos: return call(n, "cos");
      case Op::Tan: return call(n, "tan");
      case Op::Exp: return call(n, "exp");
      case Op::Log: return call(n, "log");
      case Op::Sqrt: return call(n, "sqrt");
      case Op::Sinh: return call(n, "sinh");
      case Op::Cosh: return call(n, "cosh");
      case Op::Tanh: return call(n, "tanh");
      case Op::Integral: return call(n, "int");
    }
    return {};
  }

  NodePtr node_;
};

namespace detail {

// Recursive-descent parser:
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := ('+'|'-') unary | power
//   power := atom ('^' unary)?
//   atom  := number | 't' | 'pi' | name '(' expr ')' | '(' expr ')'
class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view src) : src_(src) {}

  TimeFunction parse() {
    TimeFunction f = expr();
    skip();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression '" + std::string(src_) + "': " + msg + " at offset " +
                     std::to_string(pos_));
  }
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  TimeFunction expr() {
    TimeFunction f = term();
    for (;;) {
      if (accept('+')) f = f + term();
      else if (accept('-')) f = f - term();
      else return f;
    }
  }
  TimeFunction term() {
    TimeFunction f = unary();
    for (;;) {
      if (accept('*')) f = f * unary();
      else if (accept('/')) {
        TimeFunction d = unary();
        if (d.is_zero()) fail("division by zero");
        f = f / d;
      } else return f;
    }
  }
  TimeFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  TimeFunction power() {
    TimeFunction base = atom();
    if (accept('^')) return pow(base, unary());
    return base;
  }
  TimeFunction atom() {
    skip();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (accept('(')) {
      TimeFunction f = expr();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      auto [end, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), value);
      if (ec != std::errc()) fail("malformed number");
      pos_ = static_cast<std::size_t>(end - src_.data());
      return value;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      const std::string_view name = src_.substr(start, pos_ - start);
      if (name == "t") return TimeFunction::time();
      if (name == "pi") return std::numbers::pi;
      if (!accept('(')) fail("expected '(' after function name '" + std::string(name) + "'");
      TimeFunction arg = expr();
      if (!accept(')')) fail("expected ')'");
      if (name == "sin") return sin(arg);
      if (name == "cos") return cos(arg);
      if (name == "tan") return tan(arg);
      if (name == "exp") return exp(arg);
      if (name == "log") return log(arg);
      if (name == "sqrt") return sqrt(arg);
      if (name == "sinh") return sinh(arg);
      if (name == "cosh") return cosh(arg);
      if (name == "tanh") return tanh(arg);
      if (name == "int") return TimeFunction::integral(arg);
      fail("unknown function '" + std::string(name) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses t, numbers, pi, + - * / ^, sin cos tan exp log sqrt sinh cosh tanh, int(f) = int_0^t f.
inline TimeFunction parse_time_function(std::string_view src) {
  return detail::ExpressionParser(src).parse();
}

}  // namespace e2qes
