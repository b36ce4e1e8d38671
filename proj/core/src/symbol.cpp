#include "cexpde/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "cexpde/random.hpp"

namespace cexpde {

namespace {

std::vector<int> packed_exponent(int n, int k) {
  const auto e = MonomialSet::get(n, 2).exponent(k);
  return {e.begin(), e.end()};
}

// Symbol of an arbitrary coefficient function f at pt.
QuadraticForm symbol_of(const Expr& f, int n, const JetPoint& pt) {
  const int m = hessian_size(n);
  std::vector<double> c(static_cast<std::size_t>(m));
  for (int l = 0; l < m; ++l) {
    const auto [i, j] = unpack_index(n, l);
    c[static_cast<std::size_t>(l)] = evaluate(differentiate(f, Var::h(i, j)), pt);
  }
  return QuadraticForm(n, std::move(c));
}

// Truncated Taylor series f + f' t + f''/2 t^2, stored as (f, f', f'').
struct Taylor2 {
  double v;
  double d1;
  double d2;
};

// Propagate phi(a) given phi(a0), phi'(a0), phi''(a0).
Taylor2 chain(const Taylor2& a, double phi, double dphi, double ddphi) {
  return {phi, dphi * a.d1, ddphi * a.d1 * a.d1 + dphi * a.d2};
}

[[noreturn]] void taylor_domain(const char* what, const Expr& e, int n) {
  throw DomainError(what, to_string(e, n));
}

Taylor2 taylor(const Expr& e, const JetPoint& pt, std::span<const double> xi) {
  const int n = pt.dim();
  switch (e.op()) {
    case Op::Constant: return {e.value(), 0.0, 0.0};
    case Op::Variable: {
      const Var& v = e.var();
      const double base = pt.value(v);
      if (v.kind == VarKind::Hessian)
        return {base, xi[static_cast<std::size_t>(v.i)] * xi[static_cast<std::size_t>(v.j)], 0.0};
      return {base, 0.0, 0.0};
    }
    case Op::Neg: {
      const Taylor2 a = taylor(e.children()[0], pt, xi);
      return {-a.v, -a.d1, -a.d2};
    }
    case Op::Add:
    case Op::Sub: {
      const Taylor2 a = taylor(e.children()[0], pt, xi);
      const Taylor2 b = taylor(e.children()[1], pt, xi);
      if (e.op() == Op::Add) return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
      return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
    }
    case Op::Mul: {
      const Taylor2 a = taylor(e.children()[0], pt, xi);
      const Taylor2 b = taylor(e.children()[1], pt, xi);
      return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
    }
    case Op::Div: {
      const Taylor2 a = taylor(e.children()[0], pt, xi);
      const Taylor2 b = taylor(e.children()[1], pt, xi);
      if (b.v == 0.0) taylor_domain("division by zero", e, n);
      const double q = a.v / b.v;
      const double q1 = (a.d1 - q * b.d1) / b.v;
      const double q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.v;
      return {q, q1, q2};
    }
    case Op::Pow: {
      const Taylor2 a = taylor(e.children()[0], pt, xi);
      const int k = e.exponent();
      if (k == 0) return {1.0, 0.0, 0.0};
      const double pk2 = k >= 2 ? std::pow(a.v, k - 2) : 0.0;
      const double pk1 = std::pow(a.v, k - 1);
      return chain(a, std::pow(a.v, k), k * pk1, k >= 2 ? static_cast<double>(k) * (k - 1) * pk2 : 0.0);
    }
    case Op::Sin: {
      const Taylor2 a = taylor(e.children()[0], pt, xi);
      return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
    }
    case Op::Cos: {
      const Taylor2 a = taylor(e.children()[0], pt, xi);
      return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
    }
    case Op::Exp: {
      const Taylor2 a = taylor(e.children()[0], pt, xi);
      const double ex = std::exp(a.v);
      return chain(a, ex, ex, ex);
    }
    case Op::Log: {
      const Taylor2 a = taylor(e.children()[0], pt, xi);
      if (!(a.v > 0.0)) taylor_domain("log of non-positive value", e, n);
      return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
    }
    case Op::Sqrt: {
      const Taylor2 a = taylor(e.children()[0], pt, xi);
      if (!(a.v > 0.0)) taylor_domain("sqrt of non-positive value", e, n);
      const double r = std::sqrt(a.v);
      return chain(a, r, 0.5 / r, -0.25 / (r * a.v));
    }
    case Op::Tanh: {
      const Taylor2 a = taylor(e.children()[0], pt, xi);
      const double th = std::tanh(a.v);
      const double sech2 = 1.0 - th * th;
      return chain(a, th, sech2, -2.0 * th * sech2);
    }
    default: throw std::logic_error("taylor: unhandled op");
  }
}

// Coefficients c of a degree-d form from its values on a fixed covector set.
template <int Degree, typename ValueFn>
std::vector<double> interpolate_form(int n, ValueFn&& value_at) {
  const auto& mons = MonomialSet::get(n, Degree);
  const int rows = 3 * mons.size();
  Rng rng(0x5eed0f5b01ULL + static_cast<std::uint64_t>(n * 10 + Degree));
  Eigen::MatrixXd design(rows, mons.size());
  Eigen::VectorXd rhs(rows);
  std::vector<double> xi(static_cast<std::size_t>(n));
  for (int r = 0; r < rows; ++r) {
    for (auto& c : xi) c = rng.uniform(-1.0, 1.0);
    for (int k = 0; k < mons.size(); ++k) {
      double term = 1.0;
      const auto e = mons.exponent(k);
      for (int v = 0; v < n; ++v)
        for (int p = 0; p < e[static_cast<std::size_t>(v)]; ++p) term *= xi[static_cast<std::size_t>(v)];
      design(r, k) = term;
    }
    rhs(r) = value_at(std::span<const double>(xi));
  }
  const Eigen::VectorXd c = design.colPivHouseholderQr().solve(rhs);
  return {c.data(), c.data() + c.size()};
}

}  // namespace

QuadraticForm principal_symbol(const Equation& eq, const JetPoint& pt) {
  if (pt.dim() != eq.dim()) throw DimensionMismatch("principal_symbol: dimension mismatch");
  const int m = eq.hessian_size();
  std::vector<double> c(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) c[static_cast<std::size_t>(k)] = evaluate(eq.hessian_partial(k), pt);
  return QuadraticForm(eq.dim(), std::move(c));
}

QuarticForm second_symbol(const Equation& eq, const JetPoint& pt) {
  if (pt.dim() != eq.dim()) throw DimensionMismatch("second_symbol: dimension mismatch");
  const int n = eq.dim();
  const int m = eq.hessian_size();
  const auto& m4 = MonomialSet::get(n, 4);
  QuarticForm out(n);
  if (eq.affine_in_hessian()) return out;
  std::vector<int> e(static_cast<std::size_t>(n));
  for (int k = 0; k < m; ++k) {
    const auto ek = packed_exponent(n, k);
    for (int l = k; l < m; ++l) {
      const Expr& d2 = eq.hessian_second_partial(k, l);
      if (d2.is_constant(0.0)) continue;
      const auto el = packed_exponent(n, l);
      for (int v = 0; v < n; ++v)
        e[static_cast<std::size_t>(v)] = ek[static_cast<std::size_t>(v)] + el[static_cast<std::size_t>(v)];
      const double weight = k == l ? 1.0 : 2.0;
      out.add_to_coefficient(m4.index_of(e), weight * evaluate(d2, pt));
    }
  }
  return out;
}

QuarticForm second_symbol_iterated(const Equation& eq, const JetPoint& pt) {
  const int n = eq.dim();
  QuarticForm out(n);
  for (int k = 0; k < eq.hessian_size(); ++k) {
    QuadraticForm monomial(n);
    monomial.add_to_coefficient(k, 1.0);
    const QuarticForm term = multiply_quadratics(symbol_of(eq.hessian_partial(k), n, pt), monomial);
    for (int r = 0; r < static_cast<int>(term.coefficients().size()); ++r)
      out.add_to_coefficient(r, term.coefficients()[static_cast<std::size_t>(r)]);
  }
  return out;
}

RankOneDerivatives rank_one_derivatives(const Expr& f, const JetPoint& pt, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != pt.dim()) throw DimensionMismatch("rank_one_derivatives: covector length");
  const Taylor2 t = taylor(f, pt, xi);
  return {t.v, t.d1, t.d2};
}

QuadraticForm principal_symbol_by_rank_one(const Expr& f, const JetPoint& pt) {
  const int n = pt.dim();
  return QuadraticForm(n, interpolate_form<2>(n, [&](std::span<const double> xi) {
                         return rank_one_derivatives(f, pt, xi).first;
                       }));
}

QuarticForm second_symbol_by_rank_one(const Expr& f, const JetPoint& pt) {
  const int n = pt.dim();
  return QuarticForm(n, interpolate_form<4>(n, [&](std::span<const double> xi) {
                       return rank_one_derivatives(f, pt, xi).second;
                     }));
}

PointCheck exceptionality_at_point(const Equation& eq, const JetPoint& pt, double tol) {
  if (!on_locus(eq, pt)) throw std::invalid_argument("exceptionality_at_point: point is not on {F = 0}");
  PointCheck check;
  check.symbol = principal_symbol(eq, pt);
  check.second_symbol = second_symbol(eq, pt);
  check.degenerate_symbol = check.symbol.is_zero();
  auto factorization = factor_quartic(check.second_symbol, check.symbol, tol);
  check.residual = factorization.residual;
  check.factor = std::move(factorization.factor);
  check.pass = check.factor.has_value();
  return check;
}

std::string_view to_string(Exceptionality e) {
  switch (e) {
    case Exceptionality::Exceptional: return "exceptional";
    case Exceptionality::NotExceptional: return "not-exceptional";
    case Exceptionality::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

int ExceptionalityVerdict::failed_count() const {
  return static_cast<int>(std::count_if(samples.begin(), samples.end(),
                                        [](const SampleRecord& s) { return !s.check.pass; }));
}

int ExceptionalityVerdict::degenerate_count() const {
  return static_cast<int>(std::count_if(samples.begin(), samples.end(),
                                        [](const SampleRecord& s) { return s.check.degenerate_symbol; }));
}

double ExceptionalityVerdict::max_residual() const {
  double r = 0.0;
  for (const auto& s : samples) r = std::max(r, s.check.residual);
  return r;
}

Exceptionality aggregate_verdict(std::span<const SampleRecord> samples, double tol) {
  if (samples.empty()) return Exceptionality::Inconclusive;
  bool all_pass = true;
  bool hard_fail = false;
  for (const auto& s : samples) {
    if (!s.check.pass) {
      all_pass = false;
      if (s.check.residual > 10.0 * tol) hard_fail = true;
    }
  }
  if (all_pass) return Exceptionality::Exceptional;
  return hard_fail ? Exceptionality::NotExceptional : Exceptionality::Inconclusive;
}

ExceptionalityVerdict is_completely_exceptional(const Equation& eq, const SamplingOptions& options,
                                                double tol) {
  ExceptionalityVerdict verdict;
  verdict.tolerance = tol;
  for (auto& pt : sample_zero_locus(eq, options)) {
    PointCheck check = exceptionality_at_point(eq, pt, tol);
    verdict.samples.push_back({std::move(pt), std::move(check)});
  }
  verdict.sample_count = static_cast<int>(verdict.samples.size());
  verdict.aggregate = aggregate_verdict(verdict.samples, tol);
  return verdict;
}

}  // namespace cexpde
