#include "cexpde/expr.hpp"

namespace cexpde {

namespace {

// Chain-rule builders that drop zero terms and unit factors.

Expr add(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return a + b;
}

Expr sub(const Expr& a, const Expr& b) {
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  return a - b;
}

Expr mul(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  return a * b;
}

Expr div(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return Expr::constant(0.0);
  if (b.is_constant(1.0)) return a;
  return a / b;
}

Expr neg(const Expr& a) {
  if (a.is_constant(0.0)) return a;
  return -a;
}

}  // namespace

Expr differentiate(const Expr& e, const Var& v) {
  switch (e.op()) {
    case Op::Constant: return Expr::constant(0.0);
    case Op::Variable: return Expr::constant(e.var() == v ? 1.0 : 0.0);
    case Op::Neg: return neg(differentiate(e.children()[0], v));
    case Op::Add:
    case Op::Sub: {
      const Expr da = differentiate(e.children()[0], v);
      const Expr db = differentiate(e.children()[1], v);
      return e.op() == Op::Add ? add(da, db) : sub(da, db);
    }
    case Op::Mul: {
      const Expr& a = e.children()[0];
      const Expr& b = e.children()[1];
      return add(mul(differentiate(a, v), b), mul(a, differentiate(b, v)));
    }
    case Op::Div: {
      // (a/b)' = a'/b - a b' / b^2
      const Expr& a = e.children()[0];
      const Expr& b = e.children()[1];
      const Expr da = differentiate(a, v);
      const Expr db = differentiate(b, v);
      return sub(div(da, b), div(mul(a, db), Expr::power(b, 2)));
    }
    case Op::Pow: {
      const Expr& a = e.children()[0];
      const int k = e.exponent();
      const Expr da = differentiate(a, v);
      if (k == 0 || da.is_constant(0.0)) return Expr::constant(0.0);
      if (k == 1) return da;
      const Expr outer = k == 2 ? a : Expr::power(a, k - 1);
      return mul(mul(Expr::constant(static_cast<double>(k)), outer), da);
    }
    default: break;
  }

  const Expr& a = e.children()[0];
  const Expr da = differentiate(a, v);
  if (da.is_constant(0.0)) return da;
  switch (e.op()) {
    case Op::Sin: return mul(Expr::unary(Op::Cos, a), da);
    case Op::Cos: return mul(neg(Expr::unary(Op::Sin, a)), da);
    case Op::Exp: return mul(e, da);
    case Op::Log: return div(da, a);
    case Op::Sqrt: return div(da, mul(Expr::constant(2.0), e));
    case Op::Tanh:
      return mul(sub(Expr::constant(1.0), Expr::power(e, 2)), da);
    default: throw std::logic_error("differentiate: unhandled op");
  }
}

}  // namespace cexpde
