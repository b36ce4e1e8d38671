#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cexpde/errors.hpp"
#include "cexpde/jet_point.hpp"

namespace cexpde {

enum class Op {
  Constant,
  Variable,
  Neg,
  Sin,
  Cos,
  Exp,
  Log,
  Sqrt,
  Tanh,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
};

bool is_function(Op op) noexcept;
bool is_binary(Op op) noexcept;
/// "sin", "cos", ... for function ops.
std::string_view function_name(Op op);

/// Immutable expression tree over jet variables. Copies share structure.
///
/// All factories fold subtrees whose operands are literals (as long as the
/// folded value is finite); no other rewriting happens.
class Expr {
 public:
  /// The constant 0.
  Expr();

  static Expr constant(double value);
  static Expr variable(Var v);
  /// `op` must be Neg or one of the functions.
  static Expr unary(Op op, Expr operand);
  /// `op` must be Add, Sub, Mul or Div.
  static Expr binary(Op op, Expr lhs, Expr rhs);
  static Expr power(Expr base, int exponent);

  Op op() const noexcept;
  double value() const noexcept;
  const Var& var() const noexcept;
  int exponent() const noexcept;
  std::span<const Expr> children() const noexcept;

  bool is_constant() const noexcept { return op() == Op::Constant; }
  bool is_constant(double v) const noexcept {
    return is_constant() && value() == v;
  }

  friend Expr operator+(Expr a, Expr b) { return binary(Op::Add, a, b); }
  friend Expr operator-(Expr a, Expr b) { return binary(Op::Sub, a, b); }
  friend Expr operator*(Expr a, Expr b) { return binary(Op::Mul, a, b); }
  friend Expr operator/(Expr a, Expr b) { return binary(Op::Div, a, b); }
  friend Expr operator-(Expr a) { return unary(Op::Neg, a); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

bool structurally_equal(const Expr& a, const Expr& b);

/// Parse `text` with variables for `n` independent variables (n >= 2).
/// Throws ParseError, UnknownVariableError or DimensionError.
Expr parse(std::string_view text, int n);

/// Canonical text; parse(to_string(e, n), n) is structurally equal to e.
std::string to_string(const Expr& e, int n);

/// IEEE double evaluation. Throws DomainError naming the offending
/// subexpression.
double evaluate(const Expr& e, const JetPoint& pt);

/// Value together with a running magnitude bound: sums and differences add
/// absolute magnitudes, so `magnitude` bounds the size of every term that
/// cancelled on the way to `value`. Used to scale rounding-level tolerances.
struct ValueWithMagnitude {
  double value;
  double magnitude;
};
ValueWithMagnitude evaluate_with_magnitude(const Expr& e, const JetPoint& pt);

/// Exact symbolic partial derivative. Zero and unit factors produced by the
/// chain rule are dropped, so a derivative with respect to an absent
/// variable is the constant 0.
Expr differentiate(const Expr& e, const Var& v);

/// True if `v` occurs in `e`.
bool depends_on(const Expr& e, const Var& v);

/// Largest variable index used (1-based, over x_i, u_i, u_ij); 0 if none.
int max_variable_index(const Expr& e);

/// Rename x1<->x2, u1<->u2, u11<->u22 (planar coordinate exchange).
Expr swap_planar(const Expr& e);

std::size_t node_count(const Expr& e);

}  // namespace cexpde
