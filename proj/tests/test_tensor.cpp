#include <doctest.h>

#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "cexpde/forms.hpp"
#include "cexpde/matrix_ops.hpp"
#include "support/oracles.hpp"

using namespace cexpde;
using cexpde::testing::permutation_det;
using cexpde::testing::random_symmetric;

namespace {

QuadraticForm planar_quadratic(double c11, double c12, double c22) { return QuadraticForm(2, {c11, c12, c22}); }

QuadraticForm random_quadratic(int n, Rng& rng) {
  std::vector<double> c(static_cast<std::size_t>(MonomialSet::get(n, 2).size()));
  for (auto& v : c) v = rng.uniform(-1.0, 1.0);
  return QuadraticForm(n, c);
}

// Plain polynomial long division of a binary quartic by a binary quadratic in
// xi1 (coefficients listed from xi1^4 down to xi2^4); returns the remainder
// norm. Requires a nonzero xi1^2 coefficient in s.
double long_division_remainder(std::vector<double> q, const std::vector<double>& s) {
  for (int shift = 0; shift <= 2; ++shift) {
    const double factor = q[static_cast<std::size_t>(shift)] / s[0];
    for (int k = 0; k < 3; ++k) q[static_cast<std::size_t>(shift + k)] -= factor * s[static_cast<std::size_t>(k)];
  }
  return std::hypot(q[3], q[4]);
}

}  // namespace

TEST_CASE("monomial ranking matches enumeration") {
  for (int n = 1; n <= 4; ++n)
    for (int d = 0; d <= 5; ++d) {
      const auto& m = MonomialSet::get(n, d);
      std::map<std::vector<int>, int> seen;
      for (int k = 0; k < m.size(); ++k) {
        const auto e = m.exponent(k);
        const std::vector<int> v(e.begin(), e.end());
        CHECK(m.index_of(v) == k);
        seen[v] = k;
      }
      // Descending lexicographic order.
      for (int k = 1; k < m.size(); ++k) {
        const auto a = m.exponent(k - 1);
        const auto b = m.exponent(k);
        CHECK(std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end()));
      }
      CHECK(static_cast<int>(seen.size()) == m.size());
    }
  CHECK(MonomialSet::get(2, 4).size() == 5);
  CHECK(MonomialSet::get(4, 4).size() == 35);
}

TEST_CASE("quadratic monomials follow the packed Hessian order") {
  for (int n = 2; n <= 4; ++n)
    for (int k = 0; k < hessian_size(n); ++k) {
      const auto [i, j] = unpack_index(n, k);
      std::vector<int> e(static_cast<std::size_t>(n), 0);
      ++e[static_cast<std::size_t>(i)];
      ++e[static_cast<std::size_t>(j)];
      CHECK(MonomialSet::get(n, 2).index_of(e) == k);
    }
}

TEST_CASE("multiply_quadratics examples") {
  const QuarticForm q = multiply_quadratics(planar_quadratic(1, 0, 1), planar_quadratic(1, 0, -1));
  CHECK(q == QuarticForm(2, {1, 0, 0, 0, -1}));
  CHECK(multiply_quadratics(QuadraticForm(2), planar_quadratic(3, 2, 1)).is_zero());
  CHECK(multiply_quadratics(planar_quadratic(0, 1, 0), planar_quadratic(0, 1, 0)) == QuarticForm(2, {0, 0, 1, 0, 0}));
}

TEST_CASE("product of forms evaluates to product of values") {
  Rng rng(3);
  for (int n = 2; n <= 4; ++n)
    for (int k = 0; k < 20; ++k) {
      const auto a = random_quadratic(n, rng);
      const auto b = random_quadratic(n, rng);
      std::vector<double> xi(static_cast<std::size_t>(n));
      for (auto& v : xi) v = rng.uniform(-1, 1);
      CHECK(multiply_quadratics(a, b).evaluate(xi) == doctest::Approx(a.evaluate(xi) * b.evaluate(xi)).epsilon(1e-12));
    }
}

TEST_CASE("factor_quartic examples") {
  const auto r = factor_quartic(QuarticForm(2, {1, 0, 0, 0, -1}), planar_quadratic(1, 0, 1), 1e-9);
  REQUIRE(r.factor);
  CHECK(r.residual <= 1e-15);
  CHECK(r.factor->coefficient(0, 0) == doctest::Approx(1.0));
  CHECK(std::abs(r.factor->coefficient(0, 1)) <= 1e-15);
  CHECK(r.factor->coefficient(1, 1) == doctest::Approx(-1.0));

  const QuarticForm q(2, {2, 0, 0, 0, 0});
  const QuadraticForm s = planar_quadratic(2, 0, -1);
  const auto fail = factor_quartic(q, s, 1e-7);
  CHECK_FALSE(fail.factor);
  CHECK(fail.residual > 1e-2);
  CHECK(long_division_remainder({2, 0, 0, 0, 0}, {2, 0, -1}) > 1e-2);

  const auto zero = factor_quartic(QuarticForm(2), planar_quadratic(1, 0, 0), 1e-9);
  REQUIRE(zero.factor);
  CHECK(zero.factor->is_zero());
  CHECK(zero.residual == 0.0);

  // Zero symbol: only the zero quartic is divisible.
  CHECK(factor_quartic(QuarticForm(2), QuadraticForm(2), 1e-9).factor);
  CHECK_FALSE(factor_quartic(q, QuadraticForm(2), 1e-9).factor);
}

TEST_CASE("factor_quartic recovers constructed factors") {
  Rng rng(17);
  for (int n = 2; n <= 3; ++n)
    for (int k = 0; k < 50; ++k) {
      const auto g = random_quadratic(n, rng);
      const auto s = random_quadratic(n, rng);
      const auto r = factor_quartic(multiply_quadratics(g, s), s, 1e-9);
      REQUIRE(r.factor);
      double err = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < g.coefficients().size(); ++i) {
        err = std::max(err, std::abs(r.factor->coefficients()[i] - g.coefficients()[i]));
        scale = std::max(scale, std::abs(g.coefficients()[i]));
      }
      CHECK(err <= 1e-9 * scale);
    }
}

TEST_CASE("factor_quartic agrees with long division on binary forms") {
  Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> q(5), s(3);
    for (auto& v : q) v = rng.uniform(-1, 1);
    for (auto& v : s) v = rng.uniform(-1, 1);
    if (k % 2 == 0) {
      const QuarticForm p = multiply_quadratics(QuadraticForm(2, {q[0], q[1], q[2]}), QuadraticForm(2, s));
      q.assign(p.coefficients().begin(), p.coefficients().end());
    }
    const double remainder = long_division_remainder(q, s);
    const auto r = factor_quartic(QuarticForm(2, q), QuadraticForm(2, s), 1e-7);
    CHECK(static_cast<bool>(r.factor) == (remainder <= 1e-9));
  }
}

TEST_CASE("compound and adjugate examples") {
  Eigen::MatrixXd d2 = Eigen::Vector2d(2, 3).asDiagonal();
  CHECK(compound(d2, 2)(0, 0) == doctest::Approx(6));
  Eigen::MatrixXd d3 = Eigen::Vector3d(1, 2, 3).asDiagonal();
  const Eigen::MatrixXd c = compound(d3, 2);
  CHECK(c.isApprox(Eigen::MatrixXd(Eigen::Vector3d(2, 3, 6).asDiagonal())));
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= n; ++k) {
      const Eigen::MatrixXd ck = compound(Eigen::MatrixXd::Identity(n, n), k);
      CHECK(ck.isApprox(Eigen::MatrixXd::Identity(ck.rows(), ck.cols())));
    }
  CHECK(adjugate(d2).isApprox(Eigen::MatrixXd(Eigen::Vector2d(3, 2).asDiagonal())));
  Eigen::MatrixXd a(2, 2);
  a << 2, 1, 1, 3;
  Eigen::MatrixXd expected(2, 2);
  expected << 3, -1, -1, 2;
  CHECK(adjugate(a).isApprox(expected));
  CHECK(adjugate(d3).isApprox(Eigen::MatrixXd(Eigen::Vector3d(6, 3, 2).asDiagonal())));
}

TEST_CASE("compound entries are Leibniz determinants") {
  Rng rng(29);
  for (int n = 2; n <= 4; ++n) {
    const Eigen::MatrixXd a = cexpde::testing::random_matrix(n, rng);
    for (int k = 1; k <= n; ++k) {
      const auto sets = k_subsets(n, k);
      const Eigen::MatrixXd ck = compound(a, k);
      for (std::size_t r = 0; r < sets.size(); ++r)
        for (std::size_t s = 0; s < sets.size(); ++s) {
          Eigen::MatrixXd sub(k, k);
          for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub(i, j) = a(sets[r][static_cast<std::size_t>(i)], sets[s][static_cast<std::size_t>(j)]);
          CHECK(ck(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) ==
                doctest::Approx(permutation_det(sub)).epsilon(1e-12));
        }
    }
  }
}

TEST_CASE("compound is multiplicative on diagonal matrices") {
  Rng rng(31);
  for (int n = 2; n <= 4; ++n) {
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = rng.uniform(-2, 2);
    for (int k = 1; k <= n; ++k) {
      const auto sets = k_subsets(n, k);
      const Eigen::MatrixXd ck = compound(Eigen::MatrixXd(d.asDiagonal()), k);
      for (std::size_t r = 0; r < sets.size(); ++r) {
        double prod = 1.0;
        for (int i : sets[r]) prod *= d(i);
        CHECK(ck(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) == doctest::Approx(prod));
      }
      CHECK((ck - Eigen::MatrixXd(ck.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("adjugate satisfies A adj(A) = det(A) I") {
  Rng rng(37);
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k < 20; ++k) {
      const Eigen::MatrixXd a = cexpde::testing::random_matrix(n, rng);
      const Eigen::MatrixXd lhs = a * adjugate(a);
      const Eigen::MatrixXd rhs = permutation_det(a) * Eigen::MatrixXd::Identity(n, n);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + a.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("minor basis") {
  CHECK(MinorBasis(2).size() == 5);
  CHECK(MinorBasis(3).size() == 14);
  CHECK(MinorBasis(4).size() == 43);
  const MinorBasis b(2);
  CHECK(b[0].label() == "1");
  CHECK(b[1].label() == "u11");
  CHECK(b[2].label() == "u12");
  CHECK(b[3].label() == "u22");
  CHECK(b[4].label() == "m(12|12)");
  Eigen::MatrixXd a(2, 2);
  a << 2, 1, 1, 3;
  const Eigen::VectorXd v = b.evaluate(a);
  CHECK(v.isApprox(Eigen::Vector<double, 5>(1, 2, 1, 3, 5)));
  CHECK_THROWS(MinorBasis(5));
  for (int n = 2; n <= 4; ++n) {
    const MinorBasis mb(n);
    CHECK(mb[0].k == 0);
    CHECK(mb[mb.size() - 1].k == n);
  }
}

TEST_CASE("Pluecker embedding") {
  Eigen::MatrixXd d = Eigen::Vector2d(2, 3).asDiagonal();
  CHECK(pluecker_embed(d).isApprox(Eigen::Vector<double, 5>(1, 2, 0, 3, 6)));
  CHECK(pluecker_embed(Eigen::MatrixXd::Zero(2, 2)) == Eigen::Vector<double, 5>(1, 0, 0, 0, 0));
  Eigen::MatrixXd s(2, 2);
  s << 0, 1, 1, 0;
  CHECK(pluecker_embed(s).isApprox(Eigen::Vector<double, 5>(1, 0, 1, 0, -1)));
  const std::vector<double> on{1, 2, 0, 3, 6}, off{1, 0, 0, 0, 1}, anti{1, 0, 1, 0, -1};
  CHECK(lie_quadric_residual(on) == 0.0);
  CHECK(lie_quadric_residual(off) == 1.0);
  CHECK(lie_quadric_residual(anti) == 0.0);
  CHECK_THROWS_AS(lie_quadric_residual(std::vector<double>{1, 2}), DimensionMismatch);
  Rng rng(41);
  for (int n = 2; n <= 4; ++n) {
    const Eigen::MatrixXd a = random_symmetric(n, rng);
    CHECK(pluecker_embed(a).isApprox(MinorBasis(n).evaluate(a)));
  }
}

TEST_CASE("rank-one deformation") {
  CHECK(rank_one_deform(Eigen::MatrixXd::Zero(2, 2), Eigen::Vector2d(1, 0), 3) ==
        Eigen::MatrixXd(Eigen::Vector2d(3, 0).asDiagonal()));
  Eigen::MatrixXd s(2, 2);
  s << 0, 1, 1, 0;
  for (double t : {-2.0, 0.5, 7.0}) CHECK(rank_one_deform(s, Eigen::Vector2d(1, 0), t).determinant() == doctest::Approx(-1));
  Eigen::MatrixXd expected(2, 2);
  expected << 2, std::sqrt(2.0), std::sqrt(2.0), 3;
  CHECK(rank_one_deform(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d(1, std::sqrt(2.0)), 1).isApprox(expected));
  CHECK_THROWS(rank_one_deform(s, Eigen::Vector2d(0, 0), 1));
}
