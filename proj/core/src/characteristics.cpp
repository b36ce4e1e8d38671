#include "cexpde/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

#include "cexpde/errors.hpp"

namespace cexpde {

namespace {

constexpr double kDegenerateSymbol = 1e-14;
constexpr int kDefaultGridPoints = 21;

Equation require_planar(const Equation& eq) {
  if (eq.dim() != 2) throw std::invalid_argument("characteristic analysis needs n = 2");
  return eq;
}

ProjectiveRoot normalized(double xi, double eta) {
  const double len = std::hypot(xi, eta);
  xi /= len;
  eta /= len;
  if (xi < 0.0 || (xi == 0.0 && eta < 0.0)) {
    xi = -xi;
    eta = -eta;
  }
  // Avoid -0 in reports.
  return {xi + 0.0, eta + 0.0};
}

bool root_less(const ProjectiveRoot& l, const ProjectiveRoot& r) {
  if (!l.finite()) return false;
  if (!r.finite()) return true;
  return l.speed() < r.speed();
}

double near_parabolic_bound(const CharPoly& poly, double type_tol) {
  return std::sqrt(type_tol * poly.norm2());
}

// Gradient of the root lambda of a + b l + c l^2 with respect to
// (u11, u12, u22).
std::array<double, 3> gradient_at(const Equation& eq, const JetPoint& pt, const CharPoly& poly,
                                  double lambda, double type_tol) {
  const double denom = poly.b + 2.0 * poly.c * lambda;
  if (std::abs(denom) <= near_parabolic_bound(poly, type_tol))
    throw NearParabolicError("characteristic roots nearly coincide (|b + 2 c lambda| = " +
                             std::to_string(std::abs(denom)) + ")");
  std::array<double, 3> grad{};
  for (int k = 0; k < 3; ++k) {
    const double ak = evaluate(eq.hessian_second_partial(0, k), pt);
    const double bk = evaluate(eq.hessian_second_partial(1, k), pt);
    const double ck = evaluate(eq.hessian_second_partial(2, k), pt);
    grad[static_cast<std::size_t>(k)] = -(ak + bk * lambda + ck * lambda * lambda) / denom;
  }
  return grad;
}

const ProjectiveRoot& hyperbolic_root(const CharSpeeds& sp, int branch) {
  if (sp.type == CharType::Parabolic) throw NearParabolicError("point is parabolic within tolerance");
  if (sp.type != CharType::Hyperbolic) throw std::invalid_argument("point is not hyperbolic");
  if (branch < 0 || branch > 1) throw std::out_of_range("branch must be 0 or 1");
  return sp.roots[static_cast<std::size_t>(branch)];
}

// Equation, point and finite speed of the chart a residual test runs in.
struct Chart {
  const Equation* eq;
  JetPoint pt;
  double speed;
  bool swapped;
};

Chart chart_for(const PlanarEquation& peq, const JetPoint& pt, const ProjectiveRoot& root) {
  if (root.finite() && std::abs(root.speed()) <= kChartSwitchSpeed)
    return {&peq.equation(), pt, root.speed(), false};
  return {&peq.swapped(), pt.swapped_planar(), root.xi / root.eta, true};
}

}  // namespace

PlanarEquation::PlanarEquation(const Equation& eq)
    : eq_(require_planar(eq)), swapped_(swap_planar(eq.expr()), 2) {}

PlanarEquation::PlanarEquation(const Expr& f) : PlanarEquation(Equation(f, 2)) {}

CharPoly char_poly_coeffs(const Equation& eq, const JetPoint& pt) {
  require_planar(eq);
  return {evaluate(eq.hessian_partial(0), pt), evaluate(eq.hessian_partial(1), pt),
          evaluate(eq.hessian_partial(2), pt)};
}

std::string_view to_string(CharType t) {
  switch (t) {
    case CharType::Hyperbolic: return "hyperbolic";
    case CharType::Parabolic: return "parabolic";
    case CharType::Elliptic: return "elliptic";
    case CharType::TotallyDegenerate: return "totally-degenerate";
  }
  return "totally-degenerate";
}

double ProjectiveRoot::speed() const {
  if (!finite()) throw std::domain_error("root at infinity has no affine speed");
  return eta / xi;
}

CharSpeeds characteristic_speeds(const Equation& eq, const JetPoint& pt, double type_tol) {
  CharSpeeds sp;
  sp.poly = char_poly_coeffs(eq, pt);
  const auto& [a, b, c] = sp.poly;
  if (std::abs(a) <= kDegenerateSymbol && std::abs(b) <= kDegenerateSymbol && std::abs(c) <= kDegenerateSymbol)
    throw DegenerateSymbolError("characteristic polynomial vanishes identically");
  const double disc = sp.poly.discriminant();
  if (std::abs(disc) <= type_tol * sp.poly.norm2()) {
    sp.type = CharType::Parabolic;
    // Double root: (2c : -b) or, equivalently, (-b : 2a).
    if (std::hypot(2.0 * c, b) >= std::hypot(b, 2.0 * a)) sp.roots.push_back(normalized(2.0 * c, -b));
    else sp.roots.push_back(normalized(-b, 2.0 * a));
    return sp;
  }
  if (disc < 0.0) {
    sp.type = CharType::Elliptic;
    return sp;
  }
  sp.type = CharType::Hyperbolic;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  sp.roots.push_back(normalized(c, q));
  sp.roots.push_back(normalized(q, a));
  std::sort(sp.roots.begin(), sp.roots.end(), root_less);
  return sp;
}

std::array<double, 3> speed_gradient(const Equation& eq, const JetPoint& pt, int branch, double type_tol) {
  const CharSpeeds sp = characteristic_speeds(eq, pt, type_tol);
  const ProjectiveRoot& root = hyperbolic_root(sp, branch);
  if (!root.finite()) throw std::invalid_argument("speed_gradient: root at infinity");
  return gradient_at(eq, pt, sp.poly, root.speed(), type_tol);
}

LaxResidual lax_residual(const PlanarEquation& eq, const JetPoint& pt, int branch, double type_tol) {
  const CharSpeeds sp = characteristic_speeds(eq.equation(), pt, type_tol);
  const Chart chart = chart_for(eq, pt, hyperbolic_root(sp, branch));
  const CharPoly poly = chart.swapped ? CharPoly{sp.poly.c, sp.poly.b, sp.poly.a} : sp.poly;
  const auto g = gradient_at(*chart.eq, chart.pt, poly, chart.speed, type_tol);
  const double l = chart.speed;
  return {g[0] + l * g[1] + l * l * g[2], l, chart.swapped};
}

std::vector<double> default_t_grid() {
  std::vector<double> grid(kDefaultGridPoints);
  for (int i = 0; i < kDefaultGridPoints; ++i) grid[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (kDefaultGridPoints - 1);
  return grid;
}

StrongCharResult strong_char_test(const PlanarEquation& eq, const JetPoint& pt, int branch,
                                  std::span<const double> t_grid, double tol, double type_tol) {
  const CharSpeeds sp = characteristic_speeds(eq.equation(), pt, type_tol);
  const Chart chart = chart_for(eq, pt, hyperbolic_root(sp, branch));
  const Eigen::Vector2d v(1.0, chart.speed);
  const Eigen::MatrixXd h = chart.pt.hessian_matrix();
  StrongCharResult out;
  for (double t : t_grid) {
    try {
      const Eigen::MatrixXd ht = h + t * v * v.transpose();
      const auto fv = chart.eq->value_with_magnitude(chart.pt.with_hessian(ht));
      out.max_deviation = std::max(out.max_deviation, std::abs(fv.value));
      out.scale = std::max(out.scale, fv.magnitude);
      ++out.evaluated;
    } catch (const DomainError&) {
    }
  }
  out.pass = out.evaluated > 0 && out.max_deviation <= tol * (1.0 + out.scale);
  return out;
}

int HyperbolicityScan::count(CharType t) const {
  return static_cast<int>(std::count(types.begin(), types.end(), t));
}

double HyperbolicityScan::fraction(CharType t) const {
  return types.empty() ? 0.0 : static_cast<double>(count(t)) / static_cast<double>(types.size());
}

HyperbolicityScan hyperbolicity_scan(const Equation& eq, std::span<const JetPoint> samples, double type_tol) {
  HyperbolicityScan scan;
  scan.types.reserve(samples.size());
  for (const auto& pt : samples) {
    try {
      scan.types.push_back(characteristic_speeds(eq, pt, type_tol).type);
    } catch (const DegenerateSymbolError&) {
      scan.types.push_back(CharType::TotallyDegenerate);
    }
  }
  return scan;
}

int EquivalenceReport::agreeing() const { return matrix[0] + matrix[7]; }

std::vector<EquivalenceSample> EquivalenceReport::disagreements() const {
  std::vector<EquivalenceSample> out;
  for (const auto& s : compared)
    if (!s.agree()) out.push_back(s);
  return out;
}

EquivalenceReport equivalence_report(const PlanarEquation& eq, std::span<const JetPoint> samples,
                                     const EquivalenceTolerances& tol) {
  EquivalenceReport report;
  report.sampled = static_cast<int>(samples.size());
  report.scan = hyperbolicity_scan(eq.equation(), samples, tol.type);
  const auto grid = default_t_grid();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (report.scan.types[i] != CharType::Hyperbolic) {
      ++report.skipped_non_hyperbolic;
      continue;
    }
    const JetPoint& pt = samples[i];
    EquivalenceSample s;
    s.point = pt;
    try {
      const PointCheck div = exceptionality_at_point(eq.equation(), pt, tol.divisibility);
      s.divisible = div.pass;
      s.divisibility_residual = div.residual;
      s.lax = true;
      s.strong = true;
      for (int branch = 0; branch < 2; ++branch) {
        const auto lax = lax_residual(eq, pt, branch, tol.type);
        const auto strong = strong_char_test(eq, pt, branch, grid, tol.strong, tol.type);
        s.lax_residuals[static_cast<std::size_t>(branch)] = lax.residual;
        s.strong_deviations[static_cast<std::size_t>(branch)] = strong.max_deviation;
        s.lax = s.lax && std::abs(lax.residual) <= tol.lax;
        s.strong = s.strong && strong.pass;
      }
    } catch (const NearParabolicError&) {
      ++report.skipped_near_parabolic;
      continue;
    }
    ++report.matrix[static_cast<std::size_t>(4 * s.divisible + 2 * s.lax + s.strong)];
    report.compared.push_back(std::move(s));
  }
  return report;
}

EquivalenceReport equivalence_report(const PlanarEquation& eq, const SamplingOptions& options,
                                     const EquivalenceTolerances& tol) {
  const auto samples = sample_zero_locus(eq.equation(), options);
  return equivalence_report(eq, samples, tol);
}

}  // namespace cexpde
