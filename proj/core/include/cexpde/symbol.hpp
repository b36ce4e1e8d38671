#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cexpde/equation.hpp"
#include "cexpde/forms.hpp"

namespace cexpde {

/// Relative residual threshold for the divisibility test.
constexpr double kDefaultTolerance = 1e-7;

/// Coordinate range used for every jet coordinate when sampling.
struct Box {
  double lo = -2.0;
  double hi = 2.0;
};

struct SamplingOptions {
  Box box{};
  int count = 64;
  std::uint64_t seed = 42;
};

/// S(F)(xi) = sum_{i<=j} dF/du_ij (pt) xi_i xi_j.
QuadraticForm principal_symbol(const Equation& eq, const JetPoint& pt);

/// S^2(F)(xi) = d^2/dt^2 F(H + t xi xi^T) at t = 0, assembled from the
/// second Hessian partials.
QuarticForm second_symbol(const Equation& eq, const JetPoint& pt);

/// Second symbol as the symbol of each coefficient dF/du_ij, contracted with
/// xi_i xi_j.
QuarticForm second_symbol_iterated(const Equation& eq, const JetPoint& pt);

/// F(H + t xi xi^T) and its first two t-derivatives at t = 0, computed by
/// propagating truncated Taylor series through the expression (no symbolic
/// differentiation involved).
struct RankOneDerivatives {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};
RankOneDerivatives rank_one_derivatives(const Expr& f, const JetPoint& pt, std::span<const double> xi);

/// Symbols recovered from rank_one_derivatives by interpolation over a fixed
/// set of covectors.
QuadraticForm principal_symbol_by_rank_one(const Expr& f, const JetPoint& pt);
QuarticForm second_symbol_by_rank_one(const Expr& f, const JetPoint& pt);

/// Points of {F = 0} inside the box. Each sample draws every coordinate
/// uniformly, then solves F = 0 for one Hessian entry (cycled over entries)
/// by bracketing and safeguarded Newton; up to 50 redraws per sample.
/// Throws SamplingError if fewer than count/2 points were found.
std::vector<JetPoint> sample_zero_locus(const Equation& eq, const SamplingOptions& options);

struct PointCheck {
  bool pass = false;
  double residual = 0.0;
  std::optional<QuadraticForm> factor;
  /// S(F) vanished at the point; then it passes iff S^2(F) vanishes.
  bool degenerate_symbol = false;
  QuadraticForm symbol{2};
  QuarticForm second_symbol{2};
};

/// Divisibility S^2(F) = g S(F) at an on-locus point. Throws
/// std::invalid_argument if pt is not on {F = 0}.
PointCheck exceptionality_at_point(const Equation& eq, const JetPoint& pt,
                                   double tol = kDefaultTolerance);

enum class Exceptionality { Exceptional, NotExceptional, Inconclusive };
std::string_view to_string(Exceptionality e);

struct SampleRecord {
  JetPoint point;
  PointCheck check;
};

struct ExceptionalityVerdict {
  std::vector<SampleRecord> samples;
  Exceptionality aggregate = Exceptionality::Inconclusive;
  int sample_count = 0;
  double tolerance = kDefaultTolerance;

  int failed_count() const;
  int degenerate_count() const;
  double max_residual() const;
};

/// exceptional iff every sample passes; not-exceptional iff some sample
/// fails with residual above 10 tol; inconclusive otherwise.
Exceptionality aggregate_verdict(std::span<const SampleRecord> samples, double tol);

ExceptionalityVerdict is_completely_exceptional(const Equation& eq, const SamplingOptions& options,
                                                double tol = kDefaultTolerance);

}  // namespace cexpde
