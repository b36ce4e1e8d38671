#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace cexpde {

/// All k-element subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<int>> k_subsets(int n, int k);

/// k-th compound matrix: entry (I, J) is det A[I, J] over lexicographically
/// ordered k-subsets. compound(A, 0) = [1], compound(A, n) = [det A].
Eigen::MatrixXd compound(const Eigen::MatrixXd& a, int k);

/// Classical adjugate (transposed cofactor matrix), A adj(A) = det(A) I.
Eigen::MatrixXd adjugate(const Eigen::MatrixXd& a);

/// A k x k minor det A[rows, cols] of a symmetric matrix.
struct MinorDescriptor {
  int k = 0;
  std::vector<int> rows;
  std::vector<int> cols;

  double evaluate(const Eigen::MatrixXd& a) const;
  /// "1", "u11", "u12", "m(12|12)", ... (indices 1-based)
  std::string label() const;
};

/// Deduplicated minors of a symmetric n x n matrix grouped by degree
/// k = 0..n, with rows <= cols lexicographically inside each degree. The
/// first entry is the constant minor, the last is the determinant.
class MinorBasis {
 public:
  static constexpr int kMaxDim = 4;

  /// 2 <= n <= 4.
  explicit MinorBasis(int n);

  int dim() const noexcept { return n_; }
  int size() const noexcept { return static_cast<int>(minors_.size()); }
  std::span<const MinorDescriptor> minors() const noexcept { return minors_; }
  const MinorDescriptor& operator[](int i) const { return minors_.at(static_cast<std::size_t>(i)); }

  Eigen::VectorXd evaluate(const Eigen::MatrixXd& a) const;

 private:
  int n_;
  std::vector<MinorDescriptor> minors_;
};

inline MinorBasis minor_basis(int n) { return MinorBasis(n); }

/// Projective representative (A^(0), A^(1), ..., A^(n)) of A, flattened as
/// the row-major upper triangle of each compound. Leading coordinate is 1.
/// Coincides with MinorBasis(n).evaluate(A). For n = 2 the order is
/// (1, u11, u12, u22, det).
Eigen::VectorXd pluecker_embed(const Eigen::MatrixXd& a);

/// z0 z3 - (z11 z22 - z12^2) for n = 2 embedding coordinates
/// (z0, z11, z12, z22, z3); vanishes on the image of pluecker_embed.
double lie_quadric_residual(std::span<const double> z);

/// A + t v v^T. Throws for v = 0.
Eigen::MatrixXd rank_one_deform(const Eigen::MatrixXd& a, const Eigen::VectorXd& v, double t);

}  // namespace cexpde
