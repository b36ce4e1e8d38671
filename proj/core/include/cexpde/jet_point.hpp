#pragma once

#include <compare>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace cexpde {

/// Which jet coordinate a variable names. Indices are zero-based; for
/// `Hessian` the pair is stored with i <= j.
enum class VarKind { Independent, Dependent, FirstDerivative, Hessian };

struct Var {
  VarKind kind = VarKind::Dependent;
  int i = 0;
  int j = 0;

  static Var x(int i) { return {VarKind::Independent, i, 0}; }
  static Var u() { return {VarKind::Dependent, 0, 0}; }
  static Var p(int i) { return {VarKind::FirstDerivative, i, 0}; }
  /// Order of (i, j) does not matter; the pair is canonicalised.
  static Var h(int i, int j) {
    return i <= j ? Var{VarKind::Hessian, i, j} : Var{VarKind::Hessian, j, i};
  }

  friend auto operator<=>(const Var&, const Var&) = default;
};

/// Name of `v` in the expression grammar for dimension `n` (compact form for
/// n <= 9, underscore form otherwise).
std::string variable_name(const Var& v, int n);

/// Number of independent Hessian entries, n(n+1)/2.
constexpr int hessian_size(int n) { return n * (n + 1) / 2; }

/// Row-major position of (i, j), i <= j, in the packed upper triangle:
/// (0,0), (0,1), ..., (0,n-1), (1,1), ...
constexpr int packed_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

/// Inverse of packed_index.
std::pair<int, int> unpack_index(int n, int k);

/// A point of the second-order jet space in Darboux coordinates:
/// independent variables x, dependent variable u, first derivatives p and a
/// symmetric Hessian stored as its packed upper triangle.
class JetPoint {
 public:
  /// Origin of the jet space in dimension n.
  explicit JetPoint(int n);
  JetPoint(std::vector<double> x, double u, std::vector<double> p,
           std::vector<double> hessian_upper);

  /// Origin with the given symmetric Hessian (only the upper triangle is read).
  static JetPoint with_hessian_matrix(const Eigen::MatrixXd& h);

  int dim() const noexcept { return n_; }

  double x(int i) const { return x_.at(static_cast<std::size_t>(i)); }
  double u() const noexcept { return u_; }
  double p(int i) const { return p_.at(static_cast<std::size_t>(i)); }
  double hessian(int i, int j) const {
    return h_.at(static_cast<std::size_t>(packed_index(n_, i, j)));
  }

  std::span<const double> xs() const noexcept { return x_; }
  std::span<const double> ps() const noexcept { return p_; }
  std::span<const double> packed_hessian() const noexcept { return h_; }
  Eigen::MatrixXd hessian_matrix() const;

  double value(const Var& v) const;

  // Value-semantics updates.
  JetPoint with(const Var& v, double value) const;
  JetPoint with_packed_hessian(std::vector<double> upper) const;
  JetPoint with_hessian(const Eigen::MatrixXd& h) const;

  /// Exchange the roles of x1 and x2 (n = 2 only): x1<->x2, u1<->u2,
  /// u11<->u22.
  JetPoint swapped_planar() const;

  friend bool operator==(const JetPoint&, const JetPoint&) = default;

 private:
  void validate() const;

  int n_;
  std::vector<double> x_;
  double u_ = 0.0;
  std::vector<double> p_;
  std::vector<double> h_;
};

}  // namespace cexpde
