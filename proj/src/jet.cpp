#include "copdyn/jet.hpp"

#include <array>
#include <cmath>
#include <cstdint>

namespace copdyn {
namespace {

constexpr std::array<double, kMaxJetOrder + 1> kFactorial = {
    1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0};

// One term of the Bell-polynomial sum: multiplicities k_1..k_i with
// sum j*k_j = i, plus the multinomial weight i!/(k_1!..k_i!) and k = sum k_j.
struct Partition {
  std::array<std::uint8_t, kMaxJetOrder> multiplicity;
  double weight;
  int k;
};

void enumerate(int order, int remaining, int part,
               std::array<std::uint8_t, kMaxJetOrder>& current,
               std::vector<Partition>& out) {
  if (part > order) {
    if (remaining != 0) return;
    Partition p{};
    p.multiplicity = current;
    p.k = 0;
    double denom = 1.0;
    for (int j = 1; j <= order; ++j) {
      const int kj = current[static_cast<std::size_t>(j - 1)];
      p.k += kj;
      denom *= kFactorial[static_cast<std::size_t>(kj)];
    }
    p.weight = kFactorial[static_cast<std::size_t>(order)] / denom;
    out.push_back(p);
    return;
  }
  for (int count = 0; count * part <= remaining; ++count) {
    current[static_cast<std::size_t>(part - 1)] = static_cast<std::uint8_t>(count);
    enumerate(order, remaining - count * part, part + 1, current, out);
  }
  current[static_cast<std::size_t>(part - 1)] = 0;
}

// Partition tables for orders 1..kMaxJetOrder, built once.
const std::vector<Partition>& partitions(int order) {
  static const auto tables = [] {
    std::array<std::vector<Partition>, kMaxJetOrder + 1> t;
    for (int i = 1; i <= kMaxJetOrder; ++i) {
      std::array<std::uint8_t, kMaxJetOrder> current{};
      enumerate(i, i, 1, current, t[static_cast<std::size_t>(i)]);
    }
    return t;
  }();
  return tables[static_cast<std::size_t>(order)];
}

void check_finite(double v) {
  if (!std::isfinite(v) || std::abs(v) > kOverflowGuard) {
    throw OverflowError("jet coefficient exceeded the overflow guard");
  }
}

}  // namespace

Jet::Jet(double base_point, int order) : base_point_(base_point) {
  if (order < 0 || order > kMaxJetOrder) {
    throw PreconditionViolated("jet order must be in [0, " +
                               std::to_string(kMaxJetOrder) + "]");
  }
  coeffs_.assign(static_cast<std::size_t>(order) + 1, 0.0);
}

Jet::Jet(double base_point, std::vector<double> coeffs)
    : base_point_(base_point), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty() || coeffs_.size() > kMaxJetOrder + 1) {
    throw PreconditionViolated("jet must carry 1..9 coefficients");
  }
  for (double c : coeffs_) check_finite(c);
}

Jet compose(const Jet& outer, const Jet& inner) {
  if (outer.order() != inner.order()) {
    throw OrderMismatch(outer.order(), inner.order());
  }
  const double chain_gap = std::abs(outer.base_point() - inner.value());
  if (chain_gap > 1e-9 * (1.0 + std::abs(inner.value()))) {
    throw PreconditionViolated("jets do not chain: outer base point " +
                               std::to_string(outer.base_point()) +
                               " != inner value " + std::to_string(inner.value()));
  }
  const int m = outer.order();
  Jet result(inner.base_point(), m);
  result[0] = outer[0];
  for (int i = 1; i <= m; ++i) {
    double sum = 0.0;
    for (const Partition& p : partitions(i)) {
      double term = p.weight * outer[p.k];
      for (int j = 1; j <= i; ++j) {
        const int kj = p.multiplicity[static_cast<std::size_t>(j - 1)];
        for (int rep = 0; rep < kj; ++rep) {
          term *= inner[j] / kFactorial[static_cast<std::size_t>(j)];
        }
      }
      sum += term;
    }
    check_finite(sum);
    result[i] = sum;
  }
  return result;
}

Jet identity_jet(double x, int order) {
  Jet j(x, order);
  j[0] = x;
  if (order >= 1) j[1] = 1.0;
  return j;
}

Jet constant_jet(double c, double base_point, int order) {
  Jet j(base_point, order);
  j[0] = c;
  return j;
}

}  // namespace copdyn
