#include "cexpde/forms.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <Eigen/Dense>

namespace cexpde {

namespace {

void enumerate(int n, int remaining, int var, std::vector<int>& current,
               std::vector<std::vector<int>>& out) {
  if (var == n - 1) {
    current[static_cast<std::size_t>(var)] = remaining;
    out.push_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[static_cast<std::size_t>(var)] = e;
    enumerate(n, remaining - e, var + 1, current, out);
  }
}

}  // namespace

MonomialSet::MonomialSet(int n, int degree) : n_(n), degree_(degree) {
  std::vector<int> current(static_cast<std::size_t>(n), 0);
  enumerate(n, degree, 0, current, exponents_);
}

const MonomialSet& MonomialSet::get(int n, int degree) {
  if (n < 1 || degree < 0) throw std::invalid_argument("MonomialSet: bad shape");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialSet>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, degree}];
  if (!slot) slot.reset(new MonomialSet(n, degree));
  return *slot;
}

std::span<const int> MonomialSet::exponent(int k) const {
  return exponents_.at(static_cast<std::size_t>(k));
}

int MonomialSet::index_of(std::span<const int> exps) const {
  if (static_cast<int>(exps.size()) != n_) return -1;
  // Rank in descending lex order: count monomials that precede exps.
  int total = 0;
  for (int e : exps) total += e;
  if (total != degree_) return -1;
  int rank = 0;
  int remaining = degree_;
  for (int var = 0; var + 1 < n_; ++var) {
    const int e = exps[static_cast<std::size_t>(var)];
    // Monomials with a larger exponent at `var` come first; each choice
    // e' in (e, remaining] leaves remaining - e' spread over n - var - 1
    // variables.
    const int rest_vars = n_ - var - 1;
    for (int larger = remaining; larger > e; --larger) {
      const int left = remaining - larger;
      // C(left + rest_vars - 1, rest_vars - 1)
      double c = 1.0;
      for (int k = 1; k <= rest_vars - 1; ++k) c = c * (left + k) / k;
      rank += static_cast<int>(std::lround(c));
    }
    remaining -= e;
  }
  return rank;
}

template <int Degree>
Form<Degree>::Form(int n)
    : n_(n), c_(static_cast<std::size_t>(MonomialSet::get(n, Degree).size()), 0.0) {}

template <int Degree>
Form<Degree>::Form(int n, std::vector<double> coefficients) : n_(n), c_(std::move(coefficients)) {
  if (static_cast<int>(c_.size()) != MonomialSet::get(n, Degree).size())
    throw std::invalid_argument("Form: wrong number of coefficients");
  for (double c : c_)
    if (!std::isfinite(c)) throw std::invalid_argument("Form: non-finite coefficient");
}

template <int Degree>
double Form<Degree>::coefficient(std::span<const int> exps) const {
  const int k = monomials().index_of(exps);
  if (k < 0) throw std::invalid_argument("Form: exponent vector does not match");
  return c_[static_cast<std::size_t>(k)];
}

template <int Degree>
void Form<Degree>::set_coefficient(std::span<const int> exps, double value) {
  const int k = monomials().index_of(exps);
  if (k < 0) throw std::invalid_argument("Form: exponent vector does not match");
  c_[static_cast<std::size_t>(k)] = value;
}

template <int Degree>
double Form<Degree>::evaluate(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != n_) throw DimensionMismatch("Form::evaluate: wrong length");
  const auto& m = monomials();
  double sum = 0.0;
  for (int k = 0; k < m.size(); ++k) {
    double term = c_[static_cast<std::size_t>(k)];
    const auto e = m.exponent(k);
    for (int v = 0; v < n_; ++v)
      for (int r = 0; r < e[static_cast<std::size_t>(v)]; ++r) term *= xi[static_cast<std::size_t>(v)];
    sum += term;
  }
  return sum;
}

template <int Degree>
double Form<Degree>::norm() const {
  double s = 0.0;
  for (double c : c_) s += c * c;
  return std::sqrt(s);
}

template <int Degree>
bool Form<Degree>::is_zero() const {
  for (double c : c_)
    if (c != 0.0) return false;
  return true;
}

template class Form<2>;
template class Form<4>;

double QuadraticForm::coefficient(int i, int j) const {
  std::vector<int> e(static_cast<std::size_t>(dim()), 0);
  e.at(static_cast<std::size_t>(i)) += 1;
  e.at(static_cast<std::size_t>(j)) += 1;
  return Form<2>::coefficient(e);
}

void QuadraticForm::set_coefficient(int i, int j, double value) {
  std::vector<int> e(static_cast<std::size_t>(dim()), 0);
  e.at(static_cast<std::size_t>(i)) += 1;
  e.at(static_cast<std::size_t>(j)) += 1;
  Form<2>::set_coefficient(e, value);
}

QuarticForm multiply_quadratics(const QuadraticForm& a, const QuadraticForm& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("multiply_quadratics: dimension mismatch");
  const int n = a.dim();
  const auto& m2 = MonomialSet::get(n, 2);
  const auto& m4 = MonomialSet::get(n, 4);
  QuarticForm out(n);
  std::vector<int> e(static_cast<std::size_t>(n));
  for (int i = 0; i < m2.size(); ++i) {
    const double ca = a.coefficients()[static_cast<std::size_t>(i)];
    if (ca == 0.0) continue;
    for (int j = 0; j < m2.size(); ++j) {
      const double cb = b.coefficients()[static_cast<std::size_t>(j)];
      if (cb == 0.0) continue;
      for (int v = 0; v < n; ++v)
        e[static_cast<std::size_t>(v)] = m2.exponent(i)[static_cast<std::size_t>(v)] +
                                         m2.exponent(j)[static_cast<std::size_t>(v)];
      out.add_to_coefficient(m4.index_of(e), ca * cb);
    }
  }
  return out;
}

QuarticFactorization factor_quartic(const QuarticForm& q, const QuadraticForm& s, double tol) {
  if (q.dim() != s.dim()) throw DimensionMismatch("factor_quartic: dimension mismatch");
  if (!(tol > 0.0)) throw std::invalid_argument("factor_quartic: tol must be positive");
  const int n = q.dim();
  const double eps = std::numeric_limits<double>::epsilon();
  const double q_norm = q.norm();
  const double denom = std::max(q_norm, eps);

  QuarticFactorization result;
  if (s.is_zero()) {
    result.residual = q_norm / denom;
    if (result.residual <= tol) result.factor = QuadraticForm(n);
    return result;
  }

  // Column k holds the coefficients of (monomial_k * s).
  const auto& m2 = MonomialSet::get(n, 2);
  const auto& m4 = MonomialSet::get(n, 4);
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(m4.size(), m2.size());
  for (int k = 0; k < m2.size(); ++k) {
    QuadraticForm unit(n);
    unit.add_to_coefficient(k, 1.0);
    const QuarticForm column = multiply_quadratics(unit, s);
    for (int r = 0; r < m4.size(); ++r) design(r, k) = column.coefficients()[static_cast<std::size_t>(r)];
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(q.coefficients().data(), m4.size());
  const Eigen::VectorXd g = design.colPivHouseholderQr().solve(rhs);
  result.residual = (design * g - rhs).norm() / denom;
  if (result.residual <= tol) result.factor = QuadraticForm(n, std::vector<double>(g.data(), g.data() + g.size()));
  return result;
}

}  // namespace cexpde
