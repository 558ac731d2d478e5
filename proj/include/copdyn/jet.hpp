#pragma once

#include <vector>

#include "copdyn/errors.hpp"

namespace copdyn {

// Highest derivative order supported by the composition tables.
inline constexpr int kMaxJetOrder = 8;

/// Truncated derivative vector of a function at a point.
///
/// coeffs()[i] holds the raw i-th derivative f^(i)(x), NOT f^(i)(x)/i!.
/// The factorial conversion happens only inside compose().
class Jet {
 public:
  Jet(double base_point, int order);
  Jet(double base_point, std::vector<double> coeffs);

  double base_point() const noexcept { return base_point_; }
  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }

  /// f^(i)(base_point); zero-cost accessor, i must be <= order().
  double derivative(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  double value() const noexcept { return coeffs_[0]; }

  double& operator[](int i) { return coeffs_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

 private:
  double base_point_;
  std::vector<double> coeffs_;
};

/// Faa di Bruno composition: the jet of outer∘inner at inner.base_point().
///
/// Requires outer.base_point() == inner.value() (the jets must chain) and
/// equal orders. Coefficient i of the result is
///   sum over (k_1..k_i) with k_1+2k_2+...+ik_i = i of
///     i!/(k_1!..k_i!) * outer^(k) * prod_j (inner^(j)/j!)^{k_j},  k = sum k_j.
Jet compose(const Jet& outer, const Jet& inner);

/// Identity jet of the variable x at a point: (x, 1, 0, ..., 0).
Jet identity_jet(double x, int order);

/// Constant jet: (c, 0, ..., 0).
Jet constant_jet(double c, double base_point, int order);

}  // namespace copdyn
