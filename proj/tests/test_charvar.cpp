#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "cexpde/characteristics.hpp"
#include "cexpde/matrix_ops.hpp"
#include "support/oracles.hpp"

using namespace cexpde;
using cexpde::testing::corpus;
using cexpde::testing::root_fd;

namespace {

Equation planar_equation(const char* text) { return Equation(parse(text, 2), 2); }

JetPoint planar(double u11, double u12, double u22) { return JetPoint({0.3, -0.2}, 0.5, {0.1, 0.4}, {u11, u12, u22}); }

const char* const kCubic = "u11 - u22^3/3 - u22";

}  // namespace

TEST_CASE("characteristic polynomial coefficients") {
  const CharPoly w = char_poly_coeffs(planar_equation("u11 - u22"), planar(0, 0, 0));
  CHECK(w.a == 1);
  CHECK(w.b == 0);
  CHECK(w.c == -1);
  const CharPoly m = char_poly_coeffs(planar_equation("u11*u22 - u12^2 + 1"), planar(0, 1, 0));
  CHECK(m.a == 0);
  CHECK(m.b == -2);
  CHECK(m.c == 0);
  const CharPoly c = char_poly_coeffs(planar_equation(kCubic), planar(4.0 / 3.0, 0, 1));
  CHECK(c.a == 1);
  CHECK(c.b == 0);
  CHECK(c.c == doctest::Approx(-2));
}

TEST_CASE("characteristic speeds") {
  const auto wave = characteristic_speeds(planar_equation("u11 - u22"), planar(0, 0, 0));
  CHECK(wave.type == CharType::Hyperbolic);
  REQUIRE(wave.roots.size() == 2);
  CHECK(wave.roots[0].speed() == doctest::Approx(-1));
  CHECK(wave.roots[1].speed() == doctest::Approx(1));
  const auto lap = characteristic_speeds(planar_equation("u11 + u22"), planar(0, 0, 0));
  CHECK(lap.type == CharType::Elliptic);
  CHECK(lap.roots.empty());
  const auto cubic = characteristic_speeds(planar_equation(kCubic), planar(4.0 / 3.0, 0, 1));
  CHECK(cubic.type == CharType::Hyperbolic);
  CHECK(cubic.roots[0].speed() == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(cubic.roots[1].speed() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
  const auto para = characteristic_speeds(planar_equation("u11*u22 - u12^2"), planar(1, 1, 1));
  CHECK(para.type == CharType::Parabolic);
  REQUIRE(para.roots.size() == 1);
  CHECK(para.roots[0].speed() == doctest::Approx(1));
  // Root at infinity sorts last.
  const auto ql = characteristic_speeds(planar_equation("u12 + u1*u11"), planar(0, 0, 0));
  REQUIRE(ql.roots.size() == 2);
  CHECK(ql.roots[0].speed() == doctest::Approx(-0.1));
  CHECK_FALSE(ql.roots[1].finite());
  CHECK(ql.roots[1].eta == 1.0);
  CHECK_THROWS_AS(characteristic_speeds(planar_equation("u1"), planar(0, 0, 0)), DegenerateSymbolError);
  CHECK_THROWS_AS(characteristic_speeds(planar_equation("u11*u22 - u12^2"), planar(0, 0, 0)), DegenerateSymbolError);
}

TEST_CASE("speed gradient") {
  for (int branch = 0; branch < 2; ++branch) {
    const auto g = speed_gradient(planar_equation("u11 - u22"), planar(0.2, 0, 0.2), branch);
    for (double v : g) CHECK(v == 0.0);
  }
  const Equation cubic = planar_equation(kCubic);
  const auto g = speed_gradient(cubic, planar(4.0 / 3.0, 0, 1), 1);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 0.0);
  CHECK(g[2] == doctest::Approx(-std::pow(2.0, -1.5)).epsilon(1e-12));
  CHECK(root_fd(cubic, planar(4.0 / 3.0, 0, 1), 2, 1 / std::sqrt(2.0), 1e-5) == doctest::Approx(-0.3535534).epsilon(1e-6));

  const Equation ma = planar_equation("u11*u22 - u12^2 + 1");
  const JetPoint pt = planar(0, 1, 0);
  const auto sp = characteristic_speeds(ma, pt);
  for (int branch = 0; branch < 2; ++branch) {
    if (!sp.roots[static_cast<std::size_t>(branch)].finite()) {
      CHECK_THROWS_AS(speed_gradient(ma, pt, branch), std::invalid_argument);
      continue;
    }
    const double l = sp.roots[static_cast<std::size_t>(branch)].speed();
    const auto grad = speed_gradient(ma, pt, branch);
    for (int k = 0; k < 3; ++k)
      CHECK(grad[static_cast<std::size_t>(k)] == doctest::Approx(root_fd(ma, pt, k, l, 1e-5)).epsilon(1e-5));
  }
  CHECK_THROWS_AS(speed_gradient(planar_equation("u11 + u22"), pt, 0), std::invalid_argument);
  CHECK_THROWS_AS(speed_gradient(planar_equation("u11*u22 - u12^2"), planar(1, 1, 1), 0), NearParabolicError);
}

TEST_CASE("speed gradient matches finite differences on the corpus") {
  for (const auto& c : corpus()) {
    const Equation eq = planar_equation(c.expression);
    const auto pts = sample_zero_locus(eq, {{}, 200, 5});
    int checked = 0;
    for (const auto& pt : pts) {
      const auto sp = characteristic_speeds(eq, pt);
      if (sp.type != CharType::Hyperbolic) continue;
      // Central differences cannot resolve roots that almost coincide.
      if (sp.poly.discriminant() < cexpde::testing::kFdDiscriminantMargin * sp.poly.norm2()) continue;
      for (int branch = 0; branch < 2; ++branch) {
        const auto& root = sp.roots[static_cast<std::size_t>(branch)];
        if (!root.finite()) continue;
        const auto grad = speed_gradient(eq, pt, branch);
        for (int k = 0; k < 3; ++k) {
          const double fd = root_fd(eq, pt, k, root.speed(), 1e-5);
          INFO(c.name);
          CHECK(std::abs(grad[static_cast<std::size_t>(k)] - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
        }
      }
      if (++checked == 50) break;
    }
  }
}

TEST_CASE("Lax residual") {
  const PlanarEquation wave(planar_equation("u11 - u22"));
  CHECK(lax_residual(wave, planar(0.5, 0, 0.5), 0).residual == 0.0);
  CHECK(lax_residual(wave, planar(0.5, 0, 0.5), 1).residual == 0.0);
  const PlanarEquation cubic(planar_equation(kCubic));
  const auto r = lax_residual(cubic, planar(4.0 / 3.0, 0, 1), 1);
  CHECK_FALSE(r.swapped);
  CHECK(r.residual == doctest::Approx(-0.1767767).epsilon(1e-6));
  const PlanarEquation ma(planar_equation("u11*u22 - u12^2 + 1"));
  for (const auto& pt : sample_zero_locus(ma.equation(), {{}, 64, 3}))
    for (int branch = 0; branch < 2; ++branch) CHECK(std::abs(lax_residual(ma, pt, branch).residual) <= 1e-7);
  // Root at infinity is handled in the swapped chart.
  const PlanarEquation ql(planar_equation("u12 + u1*u11"));
  const auto inf = lax_residual(ql, planar(0, 0, 0), 1);
  CHECK(inf.swapped);
  CHECK(inf.speed == 0.0);
  CHECK(inf.residual == 0.0);
}

TEST_CASE("swapped chart residual is the rescaled original") {
  // With lambda' = 1/lambda the swapped residual equals -R / lambda^4.
  const PlanarEquation eq(planar_equation("u11^2 + u12^3 + u12*u22^2"));
  Rng rng(6);
  int checked = 0;
  for (int k = 0; k < 400 && checked < 20; ++k) {
    const JetPoint pt = cexpde::testing::random_jet(2, rng);
    const auto sp = characteristic_speeds(eq.equation(), pt);
    if (sp.type != CharType::Hyperbolic) continue;
    for (int branch = 0; branch < 2; ++branch) {
      const auto& root = sp.roots[static_cast<std::size_t>(branch)];
      if (!root.finite() || std::abs(root.speed()) <= kChartSwitchSpeed) continue;
      const double l = root.speed();
      const auto g = speed_gradient(eq.equation(), pt, branch);
      const double original = g[0] + l * g[1] + l * l * g[2];
      const auto swapped = lax_residual(eq, pt, branch);
      REQUIRE(swapped.swapped);
      CHECK(swapped.speed == doctest::Approx(1.0 / l));
      CHECK(swapped.residual == doctest::Approx(-original / std::pow(l, 4)).epsilon(1e-9));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("strong characteristic test") {
  const auto grid = default_t_grid();
  CHECK(grid.size() == 21);
  CHECK(grid.front() == -1.0);
  CHECK(grid.back() == 1.0);
  const PlanarEquation ma(planar_equation("u11*u22 - u12^2 + 1"));
  const JetPoint pt = planar(0, 1, 0);
  const auto sp = characteristic_speeds(ma.equation(), pt);
  for (int branch = 0; branch < 2; ++branch) {
    const auto r = strong_char_test(ma, pt, branch, grid, 1e-8);
    CHECK(r.pass);
    CHECK(r.max_deviation == 0.0);
  }
  CHECK(sp.roots[0].speed() == 0.0);

  const PlanarEquation sq(planar_equation("u11^2 - u22"));
  const JetPoint one = planar(1, 0, 1);
  const auto s2 = characteristic_speeds(sq.equation(), one);
  CHECK(s2.roots[1].speed() == doctest::Approx(std::sqrt(2.0)));
  const auto r = strong_char_test(sq, one, 1, grid, 1e-8);
  CHECK_FALSE(r.pass);
  CHECK(r.max_deviation == doctest::Approx(1.0));

  const PlanarEquation wave(planar_equation("u11 - u22"));
  for (int branch = 0; branch < 2; ++branch) CHECK(strong_char_test(wave, planar(0.3, 0.1, 0.3), branch, grid, 1e-8).pass);
}

TEST_CASE("characteristic deformations are tangent to the equation") {
  for (const auto& c : corpus()) {
    const PlanarEquation eq(planar_equation(c.expression));
    for (const auto& pt : sample_zero_locus(eq.equation(), {{}, 32, 8})) {
      const auto sp = characteristic_speeds(eq.equation(), pt);
      if (sp.type != CharType::Hyperbolic) continue;
      for (const auto& root : sp.roots) {
        const Eigen::Vector2d v(root.xi, root.eta);
        auto f = [&](double t) {
          return eq.equation().value(pt.with_hessian(rank_one_deform(pt.hessian_matrix(), v, t)));
        };
        const double f0 = std::abs(f(0.0));
        const double constant = std::max(std::abs(f(0.1)), std::abs(f(-0.1))) / 0.01;
        for (double t : {1e-2, -1e-2, 1e-3, -1e-3}) {
          INFO(c.name << " t=" << t);
          CHECK(std::abs(f(t)) <= 2.0 * constant * t * t + 1e-12 + f0);
        }
      }
    }
  }
}

TEST_CASE("roots are invariant under nonvanishing multipliers") {
  const char* multipliers[] = {"2", "1 + u1^2", "exp(u)"};
  for (const auto& c : corpus()) {
    const Expr f = parse(c.expression, 2);
    const Equation eq(f, 2);
    for (const auto& pt : sample_zero_locus(eq, {{}, 32, 10})) {
      for (const char* g : multipliers) {
        const Equation geq(parse(g, 2) * f, 2);
        const auto a = characteristic_speeds(eq, pt);
        const auto b = characteristic_speeds(geq, pt);
        INFO(c.name << " * " << g);
        CHECK(a.type == b.type);
        REQUIRE(a.roots.size() == b.roots.size());
        for (std::size_t i = 0; i < a.roots.size(); ++i) {
          CHECK(std::abs(a.roots[i].xi - b.roots[i].xi) <= 1e-9);
          CHECK(std::abs(a.roots[i].eta - b.roots[i].eta) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("hyperbolicity scan") {
  const auto scan = [](const char* text) {
    const Equation eq = planar_equation(text);
    return hyperbolicity_scan(eq, sample_zero_locus(eq, {}));
  };
  CHECK(scan("u11 - u22").fraction(CharType::Hyperbolic) == 1.0);
  CHECK(scan("u11 + u22").fraction(CharType::Elliptic) == 1.0);
  CHECK(scan("u11*u22 - u12^2 + 1").fraction(CharType::Hyperbolic) == 1.0);
  CHECK(scan("u11*u22 - u12^2").fraction(CharType::Parabolic) + scan("u11*u22 - u12^2").fraction(CharType::TotallyDegenerate) == 1.0);
}

TEST_CASE("three-way equivalence on the corpus") {
  for (const auto& c : corpus()) {
    const auto report = equivalence_report(PlanarEquation(planar_equation(c.expression)), SamplingOptions{});
    INFO(c.name);
    CHECK(report.disagreements().empty());
    CHECK(report.agreeing() == static_cast<int>(report.compared.size()));
    CHECK(report.skipped_non_hyperbolic + report.skipped_near_parabolic + static_cast<int>(report.compared.size()) ==
          report.sampled);
    if (!report.compared.empty()) CHECK(report.matrix[c.exceptional ? 7 : 0] == static_cast<int>(report.compared.size()));
  }
  const auto sq = equivalence_report(PlanarEquation(planar_equation("u11^2 - u22")), SamplingOptions{});
  CHECK(sq.matrix[0] > 0);
  const auto ma = equivalence_report(PlanarEquation(planar_equation("u11*u22 - u12^2 + 1")), SamplingOptions{});
  CHECK(ma.matrix[7] == ma.sampled);
}
