#include "cexpde/equation.hpp"

#include <cmath>
#include <stdexcept>

namespace cexpde {

Equation::Equation(Expr f, int n) {
  if (n < 2) throw std::invalid_argument("Equation: dimension must be at least 2");
  if (max_variable_index(f) > n) throw std::invalid_argument("Equation: variable index exceeds dimension");
  Data d{std::move(f), n, {}, {}, true};
  const int m = cexpde::hessian_size(n);
  d.first.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const auto [i, j] = unpack_index(n, k);
    d.first.push_back(differentiate(d.f, Var::h(i, j)));
  }
  d.second.reserve(static_cast<std::size_t>(m * (m + 1) / 2));
  for (int k = 0; k < m; ++k) {
    for (int l = k; l < m; ++l) {
      const auto [i, j] = unpack_index(n, l);
      d.second.push_back(differentiate(d.first[static_cast<std::size_t>(k)], Var::h(i, j)));
      if (!d.second.back().is_constant(0.0)) d.affine = false;
    }
  }
  data_ = std::make_shared<const Data>(std::move(d));
}

const Expr& Equation::hessian_second_partial(int k, int l) const {
  const int m = hessian_size();
  if (k < 0 || l < 0 || k >= m || l >= m) throw std::out_of_range("hessian_second_partial");
  if (k > l) std::swap(k, l);
  return data_->second[static_cast<std::size_t>(packed_index(m, k, l))];
}

bool on_locus(const Equation& eq, const JetPoint& pt, double tolerance) {
  const auto vm = eq.value_with_magnitude(pt);
  return std::abs(vm.value) <= tolerance * (1.0 + vm.magnitude);
}

}  // namespace cexpde
