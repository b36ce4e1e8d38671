#include "cexpde/monge_ampere.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "cexpde/errors.hpp"
#include "cexpde/random.hpp"

namespace cexpde {

namespace {

constexpr int kOversampling = 4;
constexpr int kMaxRedraws = 50;
constexpr double kHessianRange = 2.0;
// Linearity probes: (u, p) draws per x and the rounding allowance.
constexpr int kLinearProbes = 4;
constexpr int kLinearBases = 8;
constexpr double kLinearTolerance = 1e-9;

Eigen::MatrixXd random_symmetric(int n, Rng& rng) {
  Eigen::MatrixXd h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) h(i, j) = h(j, i) = rng.uniform(-kHessianRange, kHessianRange);
  return h;
}

// Fills design rows with minor values and rhs with F, redrawing Hessians that
// leave the domain of F.
void draw_rows(const Equation& eq, const BasePoint& base, const MinorBasis& basis, Rng& rng,
               Eigen::MatrixXd& design, Eigen::VectorXd& rhs) {
  for (Eigen::Index r = 0; r < design.rows(); ++r) {
    for (int tries = 1;; ++tries) {
      const Eigen::MatrixXd h = random_symmetric(eq.dim(), rng);
      try {
        rhs(r) = eq.value(base.with_hessian(h));
        design.row(r) = basis.evaluate(h).transpose();
        break;
      } catch (const DomainError&) {
        if (tries >= kMaxRedraws) throw;
      }
    }
  }
}

BasePoint random_base(int n, const Box& box, Rng& rng) {
  BasePoint b;
  b.x.resize(static_cast<std::size_t>(n));
  b.p.resize(static_cast<std::size_t>(n));
  for (auto& v : b.x) v = rng.uniform(box.lo, box.hi);
  b.u = rng.uniform(box.lo, box.hi);
  for (auto& v : b.p) v = rng.uniform(box.lo, box.hi);
  return b;
}

double value_at(const Equation& eq, const BasePoint& base, const Eigen::MatrixXd& h) {
  return eq.value(base.with_hessian(h));
}

// F affine in (u, p) with coefficients depending on x only, probed at x.
bool affine_in_jet_at(const Equation& eq, const std::vector<double>& x, const Box& box, Rng& rng) {
  const int n = eq.dim();
  const int m = eq.hessian_size();
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(n, n);
  auto unit = [&](int k) {
    const auto [i, j] = unpack_index(n, k);
    Eigen::MatrixXd e = zero;
    e(i, j) = e(j, i) = 1.0;
    return e;
  };
  auto probe = [&]() {
    BasePoint b = random_base(n, box, rng);
    b.x = x;
    return b;
  };
  auto close = [](double a, double b) {
    return std::abs(a - b) <= kLinearTolerance * (1.0 + std::max(std::abs(a), std::abs(b)));
  };

  std::vector<double> reference;
  for (int trial = 0; trial < kLinearProbes; ++trial) {
    const BasePoint b = probe();
    const double f0 = value_at(eq, b, zero);
    // Coefficients of the Hessian entries must not move with (u, p).
    std::vector<double> b1(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) b1[static_cast<std::size_t>(k)] = value_at(eq, b, unit(k)) - f0;
    if (reference.empty()) {
      reference = b1;
    } else {
      for (int k = 0; k < m; ++k)
        if (!close(b1[static_cast<std::size_t>(k)], reference[static_cast<std::size_t>(k)])) return false;
    }
    // The H = 0 part must have vanishing second differences in (u, p).
    const BasePoint d = random_base(n, Box{-1.0, 1.0}, rng);
    BasePoint plus = b, minus = b;
    plus.u += d.u;
    minus.u -= d.u;
    for (int i = 0; i < n; ++i) {
      plus.p[static_cast<std::size_t>(i)] += d.p[static_cast<std::size_t>(i)];
      minus.p[static_cast<std::size_t>(i)] -= d.p[static_cast<std::size_t>(i)];
    }
    const double fp = value_at(eq, plus, zero);
    const double fm = value_at(eq, minus, zero);
    const double scale = std::max({std::abs(fp), std::abs(fm), std::abs(f0)});
    if (std::abs(fp - 2.0 * f0 + fm) > kLinearTolerance * (1.0 + scale)) return false;
  }
  return true;
}

}  // namespace

JetPoint BasePoint::with_hessian(const Eigen::MatrixXd& h) const {
  const int n = static_cast<int>(x.size());
  std::vector<double> upper;
  upper.reserve(static_cast<std::size_t>(hessian_size(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) upper.push_back(h(i, j));
  return JetPoint(x, u, p, std::move(upper));
}

MinorFit fit_minor_expansion(const Equation& eq, const BasePoint& base, double tol, std::uint64_t seed) {
  const int n = eq.dim();
  if (static_cast<int>(base.x.size()) != n || static_cast<int>(base.p.size()) != n)
    throw DimensionMismatch("minor_expansion: base point has wrong dimension");
  const MinorBasis basis(n);
  const Eigen::Index rows = kOversampling * basis.size();
  Rng rng(seed);

  Eigen::MatrixXd train(rows, basis.size());
  Eigen::VectorXd train_rhs(rows);
  Eigen::MatrixXd valid(rows, basis.size());
  Eigen::VectorXd valid_rhs(rows);
  draw_rows(eq, base, basis, rng, train, train_rhs);
  draw_rows(eq, base, basis, rng, valid, valid_rhs);

  // Rank-revealing: the minors of a symmetric 4x4 matrix satisfy a linear
  // relation, so the n = 4 design is rank deficient.
  const Eigen::VectorXd coef = train.completeOrthogonalDecomposition().solve(train_rhs);

  MinorFit fit;
  fit.coefficients.base = base;
  fit.coefficients.coefficients.assign(coef.data(), coef.data() + coef.size());
  fit.coefficients.fit_residual = (train * coef - train_rhs).cwiseAbs().maxCoeff();
  fit.coefficients.validation_residual = (valid * coef - valid_rhs).cwiseAbs().maxCoeff();
  fit.coefficients.validation_scale = valid_rhs.cwiseAbs().maxCoeff();
  fit.accepted = fit.coefficients.validation_residual <= tol * (1.0 + fit.coefficients.validation_scale);
  return fit;
}

std::optional<MACoefficients> minor_expansion(const Equation& eq, const BasePoint& base, double tol,
                                              std::uint64_t seed) {
  MinorFit fit = fit_minor_expansion(eq, base, tol, seed);
  if (!fit.accepted) return std::nullopt;
  return std::move(fit.coefficients);
}

std::string_view to_string(MAClass c) {
  switch (c) {
    case MAClass::Linear: return "linear";
    case MAClass::QuasiLinear: return "quasi-linear";
    case MAClass::MongeAmpere: return "monge-ampere";
    case MAClass::NonMA: return "non-ma";
  }
  return "non-ma";
}

MAClassification classify(const Equation& eq, const Box& box, int count, std::uint64_t seed, double tol) {
  if (count <= 0) throw std::invalid_argument("classify: count must be positive");
  const int n = eq.dim();
  const MinorBasis basis(n);
  Rng rng(seed);
  MAClassification out;
  bool all_accepted = true;
  bool quasi_linear = true;

  for (int i = 0; i < count; ++i) {
    const std::uint64_t fit_seed = mix64(seed + static_cast<std::uint64_t>(i) + 1);
    for (int tries = 1;; ++tries) {
      const BasePoint base = random_base(n, box, rng);
      try {
        out.fits.push_back(fit_minor_expansion(eq, base, tol, fit_seed));
        break;
      } catch (const DomainError&) {
        if (tries >= kMaxRedraws) throw;
      }
    }
    const MinorFit& fit = out.fits.back();
    all_accepted = all_accepted && fit.accepted;
    const auto& c = fit.coefficients.coefficients;
    double max_b = 0.0;
    double higher = 0.0;
    for (int k = 0; k < basis.size(); ++k) {
      const double v = std::abs(c[static_cast<std::size_t>(k)]);
      max_b = std::max(max_b, v);
      if (basis[k].k >= 2) higher = std::max(higher, v);
    }
    out.max_higher_minor = std::max(out.max_higher_minor, higher);
    if (higher > tol * (1.0 + max_b)) quasi_linear = false;
  }

  if (!all_accepted) {
    out.cls = MAClass::NonMA;
    return out;
  }
  if (!quasi_linear) {
    out.cls = MAClass::MongeAmpere;
    return out;
  }
  bool affine = true;
  const int probes = std::min(count, kLinearBases);
  for (int i = 0; i < probes && affine; ++i) {
    try {
      affine = affine_in_jet_at(eq, out.fits[static_cast<std::size_t>(i)].coefficients.base.x, box, rng);
    } catch (const DomainError&) {
      affine = false;
    }
  }
  out.affine_in_jet = affine;
  out.cls = affine ? MAClass::Linear : MAClass::QuasiLinear;
  return out;
}

}  // namespace cexpde
