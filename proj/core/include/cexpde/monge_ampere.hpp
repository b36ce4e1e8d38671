#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cexpde/equation.hpp"
#include "cexpde/matrix_ops.hpp"
#include "cexpde/symbol.hpp"

namespace cexpde {

/// Values of the base (non-Hessian) coordinates.
struct BasePoint {
  std::vector<double> x;
  double u = 0.0;
  std::vector<double> p;

  JetPoint with_hessian(const Eigen::MatrixXd& h) const;
};

/// Coefficients of F in the minor basis at one base point.
struct MACoefficients {
  BasePoint base;
  std::vector<double> coefficients;  // aligned with MinorBasis order
  double fit_residual = 0.0;
  double validation_residual = 0.0;
  /// max |F| over the validation Hessians.
  double validation_scale = 0.0;
};

struct MinorFit {
  MACoefficients coefficients;
  bool accepted = false;
};

/// Least-squares fit of H -> F(base, H) against the minor basis on 4x basis
/// size random Hessians in [-2, 2], gated by an equally sized held-out set.
/// Always returns residuals; `accepted` iff the validation residual is
/// within tol (1 + max |F| on validation).
MinorFit fit_minor_expansion(const Equation& eq, const BasePoint& base, double tol, std::uint64_t seed);

/// The accepted coefficients, or nothing.
std::optional<MACoefficients> minor_expansion(const Equation& eq, const BasePoint& base, double tol,
                                              std::uint64_t seed);

enum class MAClass { Linear, QuasiLinear, MongeAmpere, NonMA };
std::string_view to_string(MAClass c);

inline bool is_monge_ampere_family(MAClass c) { return c != MAClass::NonMA; }

struct MAClassification {
  MAClass cls = MAClass::NonMA;
  std::vector<MinorFit> fits;
  /// Largest |coefficient| of a degree >= 2 minor over all base points.
  double max_higher_minor = 0.0;
  bool affine_in_jet = false;
};

MAClassification classify(const Equation& eq, const Box& box, int count, std::uint64_t seed,
                          double tol = kDefaultTolerance);

}  // namespace cexpde
