#include "cexpde/matrix_ops.hpp"

#include <stdexcept>

#include <Eigen/Dense>

#include "cexpde/errors.hpp"

namespace cexpde {

namespace {

void subsets(int n, int k, int start, std::vector<int>& current,
             std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == k) {
    out.push_back(current);
    return;
  }
  for (int i = start; i < n; ++i) {
    current.push_back(i);
    subsets(n, k, i + 1, current, out);
    current.pop_back();
  }
}

double sub_determinant(const Eigen::MatrixXd& a, std::span<const int> rows,
                       std::span<const int> cols) {
  const auto k = static_cast<Eigen::Index>(rows.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c)
      sub(r, c) = a(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
  return sub.determinant();
}

void require_square(const Eigen::MatrixXd& a, const char* who) {
  if (a.rows() != a.cols()) throw DimensionMismatch(std::string(who) + ": matrix must be square");
}

}  // namespace

std::vector<std::vector<int>> k_subsets(int n, int k) {
  if (k < 0 || k > n) throw std::out_of_range("k_subsets: k out of range");
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  subsets(n, k, 0, current, out);
  return out;
}

Eigen::MatrixXd compound(const Eigen::MatrixXd& a, int k) {
  require_square(a, "compound");
  const int n = static_cast<int>(a.rows());
  if (k < 0 || k > n) throw std::out_of_range("compound: k out of range");
  const auto sets = k_subsets(n, k);
  const auto m = static_cast<Eigen::Index>(sets.size());
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c)
      out(r, c) = sub_determinant(a, sets[static_cast<std::size_t>(r)], sets[static_cast<std::size_t>(c)]);
  return out;
}

Eigen::MatrixXd adjugate(const Eigen::MatrixXd& a) {
  require_square(a, "adjugate");
  const auto n = a.rows();
  if (n < 1) throw std::invalid_argument("adjugate: empty matrix");
  if (n == 1) return Eigen::MatrixXd::Ones(1, 1);
  Eigen::MatrixXd adj(n, n);
  Eigen::MatrixXd minor(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // cofactor C_ij from deleting row i, column j; adj = C^T.
      for (Eigen::Index r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = a(r, c);
        }
        ++mr;
      }
      const double sign = (i + j) % 2 == 0 ? 1.0 : -1.0;
      adj(j, i) = sign * minor.determinant();
    }
  }
  return adj;
}

double MinorDescriptor::evaluate(const Eigen::MatrixXd& a) const {
  return sub_determinant(a, rows, cols);
}

std::string MinorDescriptor::label() const {
  if (k == 0) return "1";
  if (k == 1) return "u" + std::to_string(rows[0] + 1) + std::to_string(cols[0] + 1);
  std::string s = "m(";
  for (int r : rows) s += std::to_string(r + 1);
  s += '|';
  for (int c : cols) s += std::to_string(c + 1);
  s += ')';
  return s;
}

MinorBasis::MinorBasis(int n) : n_(n) {
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("MinorBasis: unsupported dimension");
  for (int k = 0; k <= n; ++k) {
    const auto sets = k_subsets(n, k);
    for (std::size_t r = 0; r < sets.size(); ++r)
      for (std::size_t c = r; c < sets.size(); ++c) minors_.push_back({k, sets[r], sets[c]});
  }
}

Eigen::VectorXd MinorBasis::evaluate(const Eigen::MatrixXd& a) const {
  if (a.rows() != n_ || a.cols() != n_) throw DimensionMismatch("MinorBasis: wrong matrix shape");
  Eigen::VectorXd out(size());
  for (int i = 0; i < size(); ++i) out(i) = minors_[static_cast<std::size_t>(i)].evaluate(a);
  return out;
}

Eigen::VectorXd pluecker_embed(const Eigen::MatrixXd& a) {
  require_square(a, "pluecker_embed");
  const int n = static_cast<int>(a.rows());
  if (n < 2 || n > MinorBasis::kMaxDim) throw std::invalid_argument("pluecker_embed: unsupported dimension");
  std::vector<double> coords;
  for (int k = 0; k <= n; ++k) {
    const Eigen::MatrixXd ck = compound(a, k);
    for (Eigen::Index r = 0; r < ck.rows(); ++r)
      for (Eigen::Index c = r; c < ck.cols(); ++c) coords.push_back(ck(r, c));
  }
  return Eigen::Map<Eigen::VectorXd>(coords.data(), static_cast<Eigen::Index>(coords.size()));
}

double lie_quadric_residual(std::span<const double> z) {
  if (z.size() != 5) throw DimensionMismatch("lie_quadric_residual: expected 5 coordinates");
  return z[0] * z[4] - (z[1] * z[3] - z[2] * z[2]);
}

Eigen::MatrixXd rank_one_deform(const Eigen::MatrixXd& a, const Eigen::VectorXd& v, double t) {
  require_square(a, "rank_one_deform");
  if (v.size() != a.rows()) throw DimensionMismatch("rank_one_deform: covector has wrong length");
  if (v.isZero(0.0)) throw std::invalid_argument("rank_one_deform: zero covector");
  return a + t * v * v.transpose();
}

}  // namespace cexpde
