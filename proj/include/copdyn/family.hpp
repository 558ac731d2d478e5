#pragma once

#include <optional>
#include <vector>

#include "copdyn/expr.hpp"

namespace copdyn {

/// Structural family of a symbol. Affine/Polynomial are returned only after
/// flattening succeeds AND the flattened coefficients reproduce the
/// expression pointwise on degree+2 distinct sample points.
struct Family {
  enum class Tag { kAffine, kPolynomial, kGeneral };

  Tag tag = Tag::kGeneral;
  double a = 0.0;               // Affine: phi(x) = a*x + b
  double b = 0.0;
  std::vector<double> coeffs;   // ascending powers; filled for both exact tags
  int degree = 0;

  bool is_affine() const noexcept { return tag == Tag::kAffine; }
  bool is_polynomial() const noexcept { return tag == Tag::kPolynomial; }
  bool is_general() const noexcept { return tag == Tag::kGeneral; }
  bool exact() const noexcept { return tag != Tag::kGeneral; }
};

Family recognize_family(const SymbolExpr& phi);

/// Flattens to ascending polynomial coefficients when the tree is built from
/// polynomial-closed node kinds (degree cap 64); nullopt otherwise.
std::optional<std::vector<double>> flatten_polynomial(const SymbolExpr& expr);

double eval_polynomial(const std::vector<double>& coeffs, double x);

/// Coefficients of the derivative polynomial.
std::vector<double> differentiate_polynomial(const std::vector<double>& coeffs);

}  // namespace copdyn
