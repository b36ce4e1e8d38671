#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cexpde/equation.hpp"
#include "cexpde/symbol.hpp"

namespace cexpde {

// Planar (n = 2) characteristic geometry. Coordinates are (x, y) = (x1, x2).

/// Equation in two variables together with its x1 <-> x2 swapped form.
class PlanarEquation {
 public:
  explicit PlanarEquation(const Equation& eq);
  PlanarEquation(const Expr& f);

  const Equation& equation() const noexcept { return eq_; }
  /// F with x1 <-> x2, u1 <-> u2, u11 <-> u22; evaluate at pt.swapped_planar().
  const Equation& swapped() const noexcept { return swapped_; }

 private:
  Equation eq_;
  Equation swapped_;
};

/// a + b lambda + c lambda^2 with (a, b, c) = (F_u11, F_u12, F_u22).
struct CharPoly {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double discriminant() const { return b * b - 4.0 * a * c; }
  double norm2() const { return a * a + b * b + c * c; }
};

CharPoly char_poly_coeffs(const Equation& eq, const JetPoint& pt);

enum class CharType { Hyperbolic, Parabolic, Elliptic, TotallyDegenerate };
std::string_view to_string(CharType t);

/// Projective root (xi : eta) of a xi^2 + b xi eta + c eta^2, unit length,
/// xi > 0 or (xi = 0, eta > 0).
struct ProjectiveRoot {
  double xi = 1.0;
  double eta = 0.0;

  bool finite() const noexcept { return xi != 0.0; }
  /// eta / xi; only for finite roots.
  double speed() const;
};

/// |b^2 - 4ac| <= kTypeTolerance (a^2 + b^2 + c^2) counts as parabolic.
constexpr double kTypeTolerance = 1e-9;
/// Beyond this |lambda| the residual tests run in the swapped chart.
constexpr double kChartSwitchSpeed = 4.0;

struct CharSpeeds {
  CharPoly poly;
  CharType type = CharType::Elliptic;
  /// Real roots (two if hyperbolic, the double root once if parabolic),
  /// sorted by speed with the infinite root last.
  std::vector<ProjectiveRoot> roots;
};

/// Throws DegenerateSymbolError when (a, b, c) vanish.
CharSpeeds characteristic_speeds(const Equation& eq, const JetPoint& pt, double type_tol = kTypeTolerance);

/// (lambda_u11, lambda_u12, lambda_u22) for a finite root. Throws
/// NearParabolicError if |b + 2 c lambda| is below
/// sqrt(type_tol (a^2 + b^2 + c^2)), std::invalid_argument for the root at
/// infinity or a non-hyperbolic point.
std::array<double, 3> speed_gradient(const Equation& eq, const JetPoint& pt, int branch,
                                     double type_tol = kTypeTolerance);

struct LaxResidual {
  double residual = 0.0;
  /// Speed in the chart the residual was computed in.
  double speed = 0.0;
  bool swapped = false;
};

/// lambda_u11 + lambda lambda_u12 + lambda^2 lambda_u22 for root `branch`.
/// Computed in the swapped chart (speed 1/lambda) for the root at infinity or
/// |lambda| > kChartSwitchSpeed.
LaxResidual lax_residual(const PlanarEquation& eq, const JetPoint& pt, int branch,
                         double type_tol = kTypeTolerance);

struct StrongCharResult {
  bool pass = false;
  double max_deviation = 0.0;
  /// max over the grid of the magnitude bound of F.
  double scale = 0.0;
  int evaluated = 0;
};

/// 21 equally spaced t in [-1, 1].
std::vector<double> default_t_grid();

/// max |F(H + t v v^T)| over the grid with v = (1, lambda) in the chart
/// chosen as for lax_residual; pass iff it is <= tol (1 + scale). Grid points
/// outside the domain of F are skipped.
StrongCharResult strong_char_test(const PlanarEquation& eq, const JetPoint& pt, int branch,
                                  std::span<const double> t_grid, double tol,
                                  double type_tol = kTypeTolerance);

struct HyperbolicityScan {
  std::vector<CharType> types;
  int count(CharType t) const;
  double fraction(CharType t) const;
};

HyperbolicityScan hyperbolicity_scan(const Equation& eq, std::span<const JetPoint> samples,
                                     double type_tol = kTypeTolerance);

struct EquivalenceTolerances {
  double divisibility = 1e-7;
  double lax = 1e-6;
  double strong = 1e-8;
  double type = kTypeTolerance;
};

struct EquivalenceSample {
  JetPoint point{2};
  bool divisible = false;
  bool lax = false;
  bool strong = false;
  double divisibility_residual = 0.0;
  std::array<double, 2> lax_residuals{};
  std::array<double, 2> strong_deviations{};

  bool agree() const { return divisible == lax && lax == strong; }
};

struct EquivalenceReport {
  int sampled = 0;
  int skipped_non_hyperbolic = 0;
  int skipped_near_parabolic = 0;
  std::vector<EquivalenceSample> compared;
  /// Counts indexed by 4 divisible + 2 lax + strong.
  std::array<int, 8> matrix{};
  HyperbolicityScan scan;

  int agreeing() const;
  std::vector<EquivalenceSample> disagreements() const;
};

EquivalenceReport equivalence_report(const PlanarEquation& eq, const SamplingOptions& options,
                                     const EquivalenceTolerances& tol = {});
/// Same, on given on-locus samples.
EquivalenceReport equivalence_report(const PlanarEquation& eq, std::span<const JetPoint> samples,
                                     const EquivalenceTolerances& tol = {});

}  // namespace cexpde
