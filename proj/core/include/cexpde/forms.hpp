#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cexpde/errors.hpp"

namespace cexpde {

/// Exponent vectors of all monomials of total degree `degree` in `n`
/// variables, in lexicographically descending order: for n = 2, degree 4
/// this is (4,0), (3,1), (2,2), (1,3), (0,4). For degree 2 the order agrees
/// with the packed upper-triangular Hessian order.
class MonomialSet {
 public:
  static const MonomialSet& get(int n, int degree);

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return degree_; }
  int size() const noexcept { return static_cast<int>(exponents_.size()); }
  std::span<const int> exponent(int k) const;
  /// Position of an exponent vector, or -1 if it has the wrong degree.
  int index_of(std::span<const int> exps) const;

 private:
  MonomialSet(int n, int degree);
  int n_;
  int degree_;
  std::vector<std::vector<int>> exponents_;
};

/// Homogeneous polynomial of fixed degree in n covector variables with dense
/// coefficient storage in MonomialSet order.
template <int Degree>
class Form {
 public:
  explicit Form(int n);
  Form(int n, std::vector<double> coefficients);

  int dim() const noexcept { return n_; }
  static constexpr int degree() { return Degree; }
  const MonomialSet& monomials() const { return MonomialSet::get(n_, Degree); }

  std::span<const double> coefficients() const noexcept { return c_; }
  double coefficient(std::span<const int> exps) const;
  void set_coefficient(std::span<const int> exps, double value);
  void add_to_coefficient(int index, double value) { c_.at(static_cast<std::size_t>(index)) += value; }

  double evaluate(std::span<const double> xi) const;
  /// Euclidean norm of the coefficient vector.
  double norm() const;
  bool is_zero() const;

  friend bool operator==(const Form&, const Form&) = default;

 private:
  int n_;
  std::vector<double> c_;
};

/// q(xi) = sum_{i<=j} c_ij xi_i xi_j.
class QuadraticForm : public Form<2> {
 public:
  using Form<2>::Form;
  QuadraticForm(const Form<2>& f) : Form<2>(f) {}  // NOLINT(google-explicit-constructor)

  /// Coefficient of xi_i xi_j (i, j zero-based, either order).
  double coefficient(int i, int j) const;
  void set_coefficient(int i, int j, double value);
};

using QuarticForm = Form<4>;

extern template class Form<2>;
extern template class Form<4>;

QuarticForm multiply_quadratics(const QuadraticForm& a, const QuadraticForm& b);

struct QuarticFactorization {
  /// g with q = g * s, present when the relative residual is within tol.
  std::optional<QuadraticForm> factor;
  /// ||q - g s|| / max(||q||, machine epsilon) for the least-squares g.
  double residual = 0.0;
};

/// Least-squares solve of q = g * s for a quadratic g. When s = 0 the
/// factorization succeeds only for q = 0 (with g = 0).
QuarticFactorization factor_quartic(const QuarticForm& q, const QuadraticForm& s, double tol);

}  // namespace cexpde
