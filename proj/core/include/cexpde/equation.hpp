#pragma once

#include <memory>
#include <vector>

#include "cexpde/expr.hpp"

namespace cexpde {

/// A second-order scalar PDE F = 0 with its Hessian-direction partial
/// derivatives differentiated once up front. Cheap to copy.
class Equation {
 public:
  Equation(Expr f, int n);

  const Expr& expr() const noexcept { return data_->f; }
  int dim() const noexcept { return data_->n; }
  int hessian_size() const noexcept { return static_cast<int>(data_->first.size()); }

  /// dF/du_ij at packed index k.
  const Expr& hessian_partial(int k) const { return data_->first.at(static_cast<std::size_t>(k)); }
  /// d^2F/du_(k) du_(l) at packed indices k, l.
  const Expr& hessian_second_partial(int k, int l) const;

  double value(const JetPoint& pt) const { return evaluate(expr(), pt); }
  ValueWithMagnitude value_with_magnitude(const JetPoint& pt) const {
    return evaluate_with_magnitude(expr(), pt);
  }

  /// True when every second Hessian partial is the literal 0, i.e. F is
  /// affine in the Hessian by construction.
  bool affine_in_hessian() const noexcept { return data_->affine; }

 private:
  struct Data {
    Expr f;
    int n;
    std::vector<Expr> first;
    std::vector<Expr> second;  // packed symmetric, row-major upper triangle
    bool affine;
  };
  std::shared_ptr<const Data> data_;
};

/// |F(pt)| <= 1e-10 (1 + magnitude of F at pt).
constexpr double kOnLocusTolerance = 1e-10;
bool on_locus(const Equation& eq, const JetPoint& pt, double tolerance = kOnLocusTolerance);

}  // namespace cexpde
