#include "cexpde/jet_point.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cexpde {

std::string variable_name(const Var& v, int n) {
  const bool compact = n <= 9;
  switch (v.kind) {
    case VarKind::Independent: return "x" + std::to_string(v.i + 1);
    case VarKind::Dependent: return "u";
    case VarKind::FirstDerivative:
      return (compact ? "u" : "u_") + std::to_string(v.i + 1);
    case VarKind::Hessian:
      if (compact) return "u" + std::to_string(v.i + 1) + std::to_string(v.j + 1);
      return "u_" + std::to_string(v.i + 1) + "_" + std::to_string(v.j + 1);
  }
  return "?";
}

std::pair<int, int> unpack_index(int n, int k) {
  for (int i = 0; i < n; ++i) {
    const int row = n - i;
    if (k < row) return {i, i + k};
    k -= row;
  }
  throw std::out_of_range("unpack_index: index out of range");
}

JetPoint::JetPoint(int n)
    : n_(n),
      x_(static_cast<std::size_t>(n), 0.0),
      p_(static_cast<std::size_t>(n), 0.0),
      h_(static_cast<std::size_t>(hessian_size(n)), 0.0) {
  if (n < 1) throw std::invalid_argument("JetPoint: dimension must be positive");
}

JetPoint::JetPoint(std::vector<double> x, double u, std::vector<double> p,
                   std::vector<double> hessian_upper)
    : n_(static_cast<int>(x.size())),
      x_(std::move(x)),
      u_(u),
      p_(std::move(p)),
      h_(std::move(hessian_upper)) {
  if (n_ < 1) throw std::invalid_argument("JetPoint: dimension must be positive");
  if (static_cast<int>(p_.size()) != n_ ||
      static_cast<int>(h_.size()) != hessian_size(n_))
    throw std::invalid_argument("JetPoint: inconsistent coordinate lengths");
  validate();
}

JetPoint JetPoint::with_hessian_matrix(const Eigen::MatrixXd& h) {
  return JetPoint(static_cast<int>(h.rows())).with_hessian(h);
}

void JetPoint::validate() const {
  const auto finite = [](const std::vector<double>& v) {
    for (double d : v)
      if (!std::isfinite(d)) return false;
    return true;
  };
  if (!finite(x_) || !std::isfinite(u_) || !finite(p_) || !finite(h_))
    throw std::invalid_argument("JetPoint: non-finite coordinate");
}

Eigen::MatrixXd JetPoint::hessian_matrix() const {
  Eigen::MatrixXd m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) m(i, j) = m(j, i) = hessian(i, j);
  return m;
}

double JetPoint::value(const Var& v) const {
  switch (v.kind) {
    case VarKind::Independent: return x(v.i);
    case VarKind::Dependent: return u_;
    case VarKind::FirstDerivative: return p(v.i);
    case VarKind::Hessian:
      if (v.j >= n_) throw std::out_of_range("JetPoint: Hessian index out of range");
      return hessian(v.i, v.j);
  }
  return 0.0;
}

JetPoint JetPoint::with(const Var& v, double value) const {
  JetPoint r = *this;
  switch (v.kind) {
    case VarKind::Independent: r.x_.at(static_cast<std::size_t>(v.i)) = value; break;
    case VarKind::Dependent: r.u_ = value; break;
    case VarKind::FirstDerivative: r.p_.at(static_cast<std::size_t>(v.i)) = value; break;
    case VarKind::Hessian:
      if (v.j >= n_) throw std::out_of_range("JetPoint: Hessian index out of range");
      r.h_[static_cast<std::size_t>(packed_index(n_, v.i, v.j))] = value;
      break;
  }
  r.validate();
  return r;
}

JetPoint JetPoint::with_packed_hessian(std::vector<double> upper) const {
  if (static_cast<int>(upper.size()) != hessian_size(n_))
    throw std::invalid_argument("JetPoint: wrong packed Hessian length");
  JetPoint r = *this;
  r.h_ = std::move(upper);
  r.validate();
  return r;
}

JetPoint JetPoint::with_hessian(const Eigen::MatrixXd& h) const {
  if (h.rows() != n_ || h.cols() != n_)
    throw std::invalid_argument("JetPoint: Hessian has wrong shape");
  std::vector<double> upper;
  upper.reserve(static_cast<std::size_t>(hessian_size(n_)));
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) upper.push_back(h(i, j));
  return with_packed_hessian(std::move(upper));
}

JetPoint JetPoint::swapped_planar() const {
  if (n_ != 2) throw std::invalid_argument("swapped_planar: requires n = 2");
  return JetPoint({x_[1], x_[0]}, u_, {p_[1], p_[0]}, {h_[2], h_[1], h_[0]});
}

}  // namespace cexpde
