#include <cmath>
#include <limits>
#include <optional>

#include "cexpde/errors.hpp"
#include "cexpde/random.hpp"
#include "cexpde/symbol.hpp"

namespace cexpde {

namespace {

constexpr int kMaxAttempts = 50;
constexpr int kGridCells = 64;
constexpr int kRefineSteps = 100;

std::optional<double> try_value(const Equation& eq, const JetPoint& pt) {
  try {
    return eq.value(pt);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

std::optional<double> try_slope(const Equation& eq, int pivot, const JetPoint& pt) {
  try {
    return evaluate(eq.hessian_partial(pivot), pt);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

// |F| at rounding level; refinement continues past the on-locus threshold
// until this holds.
bool polished(const Equation& eq, const JetPoint& pt) {
  const auto v = eq.value_with_magnitude(pt);
  return std::abs(v.value) <= 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + v.magnitude);
}

// Root of t -> F(base with H_pivot = t) inside [a, b] where the sign changes.
std::optional<JetPoint> refine(const Equation& eq, const JetPoint& base, int pivot, double a, double b,
                               double fa) {
  const auto [pi, pj] = unpack_index(eq.dim(), pivot);
  const Var var = Var::h(pi, pj);
  std::optional<JetPoint> best;
  double best_abs = std::numeric_limits<double>::infinity();
  double t = 0.5 * (a + b);
  for (int step = 0; step < kRefineSteps; ++step) {
    const JetPoint pt = base.with(var, t);
    const auto ft = try_value(eq, pt);
    if (!ft) {
      // Bisect past a domain hole.
      t = 0.5 * (a + t);
      continue;
    }
    if (std::abs(*ft) < best_abs) {
      best_abs = std::abs(*ft);
      best = pt;
    }
    if (*ft == 0.0 || polished(eq, pt)) return pt;
    if ((*ft < 0.0) == (fa < 0.0)) {
      a = t;
      fa = *ft;
    } else {
      b = t;
    }
    double next = 0.5 * (a + b);
    if (const auto slope = try_slope(eq, pivot, pt); slope && *slope != 0.0) {
      const double newton = t - *ft / *slope;
      if (newton > a && newton < b) next = newton;
    }
    if (next == t || b - a <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(t))) {
      t = next;
      break;
    }
    t = next;
  }
  if (const JetPoint pt = base.with(var, t); try_value(eq, pt) && on_locus(eq, pt)) return pt;
  if (best && on_locus(eq, *best)) return best;
  return std::nullopt;
}

std::optional<JetPoint> attempt(const Equation& eq, const Box& box, int pivot, Rng& rng) {
  const int n = eq.dim();
  const int m = eq.hessian_size();
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> p(static_cast<std::size_t>(n));
  std::vector<double> h(static_cast<std::size_t>(m));
  for (auto& v : x) v = rng.uniform(box.lo, box.hi);
  const double u = rng.uniform(box.lo, box.hi);
  for (auto& v : p) v = rng.uniform(box.lo, box.hi);
  for (auto& v : h) v = rng.uniform(box.lo, box.hi);
  const JetPoint base(std::move(x), u, std::move(p), std::move(h));
  const auto [pi, pj] = unpack_index(n, pivot);
  const Var var = Var::h(pi, pj);

  struct Bracket {
    double a, b, fa;
    bool exact;
  };
  std::vector<Bracket> brackets;
  const double step = (box.hi - box.lo) / kGridCells;
  std::optional<double> prev;
  double prev_t = box.lo;
  for (int c = 0; c <= kGridCells; ++c) {
    const double t = c == kGridCells ? box.hi : box.lo + c * step;
    const auto ft = try_value(eq, base.with(var, t));
    if (ft) {
      if (*ft == 0.0) brackets.push_back({t, t, 0.0, true});
      else if (prev && *prev != 0.0 && (*prev < 0.0) != (*ft < 0.0))
        brackets.push_back({prev_t, t, *prev, false});
    }
    prev = ft;
    prev_t = t;
  }
  if (brackets.empty()) return std::nullopt;
  const Bracket& br = brackets[static_cast<std::size_t>(rng.index(static_cast<int>(brackets.size())))];
  if (br.exact) return base.with(var, br.a);
  return refine(eq, base, pivot, br.a, br.b, br.fa);
}

}  // namespace

std::vector<JetPoint> sample_zero_locus(const Equation& eq, const SamplingOptions& options) {
  if (options.count <= 0) throw std::invalid_argument("sample_zero_locus: count must be positive");
  if (!(options.box.lo < options.box.hi)) throw std::invalid_argument("sample_zero_locus: empty box");
  const int m = eq.hessian_size();
  Rng rng(options.seed);
  std::vector<JetPoint> out;
  out.reserve(static_cast<std::size_t>(options.count));
  for (int s = 0; s < options.count; ++s) {
    for (int a = 0; a < kMaxAttempts; ++a) {
      if (auto pt = attempt(eq, options.box, (s + a) % m, rng)) {
        out.push_back(std::move(*pt));
        break;
      }
    }
  }
  if (2 * static_cast<int>(out.size()) < options.count)
    throw SamplingError("could not sample {F = 0}: found " + std::to_string(out.size()) + " of " +
                        std::to_string(options.count) + " points inside the box");
  return out;
}

}  // namespace cexpde
