#include "cexpde/expr.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace cexpde {

struct Expr::Node {
  Op op = Op::Constant;
  double value = 0.0;
  Var var{};
  int exponent = 0;
  std::vector<Expr> children;
};

namespace {

double apply_unary(Op op, double a) {
  switch (op) {
    case Op::Neg: return -a;
    case Op::Sin: return std::sin(a);
    case Op::Cos: return std::cos(a);
    case Op::Exp: return std::exp(a);
    case Op::Log: return a > 0.0 ? std::log(a) : std::nan("");
    case Op::Sqrt: return a >= 0.0 ? std::sqrt(a) : std::nan("");
    case Op::Tanh: return std::tanh(a);
    default: throw std::logic_error("apply_unary: not a unary op");
  }
}

double apply_binary(Op op, double a, double b) {
  switch (op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div: return b != 0.0 ? a / b : std::nan("");
    default: throw std::logic_error("apply_binary: not a binary op");
  }
}

double integer_power(double base, int k) {
  double result = 1.0;
  double factor = base;
  for (unsigned e = static_cast<unsigned>(k); e != 0; e >>= 1) {
    if (e & 1u) result *= factor;
    factor *= factor;
  }
  return result;
}

}  // namespace

bool is_function(Op op) noexcept {
  switch (op) {
    case Op::Sin:
    case Op::Cos:
    case Op::Exp:
    case Op::Log:
    case Op::Sqrt:
    case Op::Tanh: return true;
    default: return false;
  }
}

bool is_binary(Op op) noexcept {
  return op == Op::Add || op == Op::Sub || op == Op::Mul || op == Op::Div;
}

std::string_view function_name(Op op) {
  switch (op) {
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sqrt: return "sqrt";
    case Op::Tanh: return "tanh";
    default: throw std::invalid_argument("function_name: not a function op");
  }
}

Expr::Expr() : Expr(std::make_shared<const Node>()) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) {
  Node n;
  n.op = Op::Constant;
  n.value = value;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::variable(Var v) {
  Node n;
  n.op = Op::Variable;
  n.var = v;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::unary(Op op, Expr operand) {
  if (op != Op::Neg && !is_function(op))
    throw std::invalid_argument("Expr::unary: not a unary op");
  if (operand.is_constant()) {
    const double folded = apply_unary(op, operand.value());
    if (std::isfinite(folded)) return constant(folded);
  }
  Node n;
  n.op = op;
  n.children = {std::move(operand)};
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  if (!is_binary(op)) throw std::invalid_argument("Expr::binary: not a binary op");
  if (lhs.is_constant() && rhs.is_constant()) {
    const double folded = apply_binary(op, lhs.value(), rhs.value());
    if (std::isfinite(folded)) return constant(folded);
  }
  Node n;
  n.op = op;
  n.children = {std::move(lhs), std::move(rhs)};
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::power(Expr base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("Expr::power: negative exponent");
  if (base.is_constant()) {
    const double folded = integer_power(base.value(), exponent);
    if (std::isfinite(folded)) return constant(folded);
  }
  Node n;
  n.op = Op::Pow;
  n.exponent = exponent;
  n.children = {std::move(base)};
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Op Expr::op() const noexcept { return node_->op; }
double Expr::value() const noexcept { return node_->value; }
const Var& Expr::var() const noexcept { return node_->var; }
int Expr::exponent() const noexcept { return node_->exponent; }
std::span<const Expr> Expr::children() const noexcept { return node_->children; }

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Constant:
      return a.value() == b.value() ||
             (std::isnan(a.value()) && std::isnan(b.value()));
    case Op::Variable: return a.var() == b.var();
    case Op::Pow:
      if (a.exponent() != b.exponent()) return false;
      break;
    default: break;
  }
  const auto ca = a.children();
  const auto cb = b.children();
  return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end(),
                    [](const Expr& x, const Expr& y) { return structurally_equal(x, y); });
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("format_number failed");
  return std::string(buf.data(), end);
}

// Precedence of the printed form: 1 sums, 2 products, 3 factors (powers),
// 4 bases (atoms, calls, negations).
int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Pow: return 3;
    default: return 4;
  }
}

void print(const Expr& e, int n, std::string& out);

void print_wrapped(const Expr& e, int n, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(e, n, out);
  if (wrap) out += ')';
}

void print(const Expr& e, int n, std::string& out) {
  switch (e.op()) {
    case Op::Constant: {
      const double v = e.value();
      if (std::signbit(v)) {
        out += '(';
        out += format_number(v);
        out += ')';
      } else {
        out += format_number(v);
      }
      return;
    }
    case Op::Variable: out += variable_name(e.var(), n); return;
    case Op::Neg:
      out += '-';
      print_wrapped(e.children()[0], n, precedence(e.children()[0]) < 4, out);
      return;
    case Op::Pow:
      print_wrapped(e.children()[0], n, precedence(e.children()[0]) < 4, out);
      out += '^';
      out += std::to_string(e.exponent());
      return;
    case Op::Add:
    case Op::Sub:
      print_wrapped(e.children()[0], n, false, out);
      out += e.op() == Op::Add ? " + " : " - ";
      print_wrapped(e.children()[1], n, precedence(e.children()[1]) <= 1, out);
      return;
    case Op::Mul:
    case Op::Div:
      print_wrapped(e.children()[0], n, precedence(e.children()[0]) <= 1, out);
      out += e.op() == Op::Mul ? "*" : "/";
      print_wrapped(e.children()[1], n, precedence(e.children()[1]) <= 2, out);
      return;
    default:
      out += function_name(e.op());
      out += '(';
      print(e.children()[0], n, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e, int n) {
  std::string out;
  print(e, n, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void domain_failure(const char* what, const Expr& e, const JetPoint& pt) {
  throw DomainError(what, to_string(e, std::max(pt.dim(), 2)));
}

ValueWithMagnitude eval(const Expr& e, const JetPoint& pt) {
  switch (e.op()) {
    case Op::Constant: return {e.value(), std::abs(e.value())};
    case Op::Variable: {
      const double v = pt.value(e.var());
      return {v, std::abs(v)};
    }
    case Op::Pow: {
      const auto a = eval(e.children()[0], pt);
      const double v = integer_power(a.value, e.exponent());
      if (!std::isfinite(v)) domain_failure("overflow", e, pt);
      return {v, integer_power(a.magnitude, e.exponent())};
    }
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      const auto a = eval(e.children()[0], pt);
      const auto b = eval(e.children()[1], pt);
      ValueWithMagnitude r{};
      switch (e.op()) {
        case Op::Add: r = {a.value + b.value, a.magnitude + b.magnitude}; break;
        case Op::Sub: r = {a.value - b.value, a.magnitude + b.magnitude}; break;
        case Op::Mul: r = {a.value * b.value, a.magnitude * b.magnitude}; break;
        default:
          if (b.value == 0.0) domain_failure("division by zero", e, pt);
          r = {a.value / b.value, a.magnitude / std::abs(b.value)};
          break;
      }
      if (!std::isfinite(r.value)) domain_failure("overflow", e, pt);
      return r;
    }
    default: {
      const auto a = eval(e.children()[0], pt);
      if (e.op() == Op::Log && !(a.value > 0.0))
        domain_failure("log of non-positive value", e, pt);
      if (e.op() == Op::Sqrt && !(a.value >= 0.0))
        domain_failure("sqrt of negative value", e, pt);
      const double v = apply_unary(e.op(), a.value);
      if (!std::isfinite(v)) domain_failure("overflow", e, pt);
      if (e.op() == Op::Neg) return {v, a.magnitude};
      return {v, std::abs(v)};
    }
  }
}

}  // namespace

double evaluate(const Expr& e, const JetPoint& pt) { return eval(e, pt).value; }

ValueWithMagnitude evaluate_with_magnitude(const Expr& e, const JetPoint& pt) {
  return eval(e, pt);
}

// ---------------------------------------------------------------------------
// Structural queries

bool depends_on(const Expr& e, const Var& v) {
  if (e.op() == Op::Variable) return e.var() == v;
  for (const auto& c : e.children())
    if (depends_on(c, v)) return true;
  return false;
}

int max_variable_index(const Expr& e) {
  int best = 0;
  if (e.op() == Op::Variable) {
    const Var& v = e.var();
    switch (v.kind) {
      case VarKind::Independent:
      case VarKind::FirstDerivative: best = v.i + 1; break;
      case VarKind::Hessian: best = v.j + 1; break;
      case VarKind::Dependent: break;
    }
  }
  for (const auto& c : e.children()) best = std::max(best, max_variable_index(c));
  return best;
}

Expr swap_planar(const Expr& e) {
  switch (e.op()) {
    case Op::Constant: return e;
    case Op::Variable: {
      Var v = e.var();
      const auto flip = [](int k) { return k < 2 ? 1 - k : k; };
      switch (v.kind) {
        case VarKind::Independent: return Expr::variable(Var::x(flip(v.i)));
        case VarKind::FirstDerivative: return Expr::variable(Var::p(flip(v.i)));
        case VarKind::Hessian: return Expr::variable(Var::h(flip(v.i), flip(v.j)));
        case VarKind::Dependent: return e;
      }
      return e;
    }
    case Op::Pow: return Expr::power(swap_planar(e.children()[0]), e.exponent());
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
      return Expr::binary(e.op(), swap_planar(e.children()[0]),
                          swap_planar(e.children()[1]));
    default: return Expr::unary(e.op(), swap_planar(e.children()[0]));
  }
}

std::size_t node_count(const Expr& e) {
  std::size_t count = 1;
  for (const auto& c : e.children()) count += node_count(c);
  return count;
}

}  // namespace cexpde
