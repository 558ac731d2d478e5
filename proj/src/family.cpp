#include "copdyn/family.hpp"

#include <cmath>

namespace copdyn {
namespace {

constexpr int kDegreeCap = 64;

using Coeffs = std::vector<double>;

std::optional<Coeffs> flatten(const ExprNode* n);

std::optional<Coeffs> convolve(const Coeffs& a, const Coeffs& b) {
  if (a.size() + b.size() > kDegreeCap + 2) return std::nullopt;
  Coeffs r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

void trim(Coeffs& c) {
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  const double tol = 1e-12 * (1.0 + scale);
  while (c.size() > 1 && std::abs(c.back()) <= tol) c.pop_back();
  if (c.size() == 1 && std::abs(c[0]) <= 0.0) c[0] = 0.0;
}

std::optional<Coeffs> poly_compose(const Coeffs& outer, const Coeffs& inner) {
  // Horner on polynomial coefficients.
  Coeffs acc{outer.back()};
  for (std::size_t k = outer.size() - 1; k-- > 0;) {
    auto prod = convolve(acc, inner);
    if (!prod) return std::nullopt;
    acc = std::move(*prod);
    acc[0] += outer[k];
  }
  return acc;
}

std::optional<Coeffs> flatten(const ExprNode* n) {
  switch (n->kind) {
    case NodeKind::kConstant:
      return Coeffs{n->constant};
    case NodeKind::kVariable:
      return Coeffs{0.0, 1.0};
    case NodeKind::kNegate: {
      auto c = flatten(n->lhs.get());
      if (!c) return std::nullopt;
      for (double& v : *c) v = -v;
      return c;
    }
    case NodeKind::kAdd: {
      auto a = flatten(n->lhs.get());
      auto b = flatten(n->rhs.get());
      if (!a || !b) return std::nullopt;
      if (b->size() > a->size()) a->resize(b->size(), 0.0);
      for (std::size_t i = 0; i < b->size(); ++i) (*a)[i] += (*b)[i];
      return a;
    }
    case NodeKind::kMul: {
      auto a = flatten(n->lhs.get());
      auto b = flatten(n->rhs.get());
      if (!a || !b) return std::nullopt;
      return convolve(*a, *b);
    }
    case NodeKind::kDiv: {
      auto a = flatten(n->lhs.get());
      auto b = flatten(n->rhs.get());
      if (!a || !b) return std::nullopt;
      trim(*b);
      if (b->size() != 1 || (*b)[0] == 0.0) return std::nullopt;
      for (double& v : *a) v /= (*b)[0];
      return a;
    }
    case NodeKind::kPow: {
      auto base = flatten(n->lhs.get());
      if (!base) return std::nullopt;
      if (n->exponent < 0) {
        trim(*base);
        if (base->size() != 1 || (*base)[0] == 0.0) return std::nullopt;
        return Coeffs{std::pow((*base)[0], n->exponent)};
      }
      Coeffs acc{1.0};
      for (int e = 0; e < n->exponent; ++e) {
        auto prod = convolve(acc, *base);
        if (!prod) return std::nullopt;
        acc = std::move(*prod);
      }
      return acc;
    }
    case NodeKind::kExp:
    case NodeKind::kLog:
    case NodeKind::kSin:
    case NodeKind::kCos:
    case NodeKind::kTanh: {
      // Constant-fold only: a transcendental of a constant is a constant.
      auto arg = flatten(n->lhs.get());
      if (!arg) return std::nullopt;
      trim(*arg);
      if (arg->size() != 1) return std::nullopt;
      const double v = (*arg)[0];
      switch (n->kind) {
        case NodeKind::kExp: return Coeffs{std::exp(v)};
        case NodeKind::kLog:
          if (!(v > 0.0)) return std::nullopt;
          return Coeffs{std::log(v)};
        case NodeKind::kSin: return Coeffs{std::sin(v)};
        case NodeKind::kCos: return Coeffs{std::cos(v)};
        default: return Coeffs{std::tanh(v)};
      }
    }
    case NodeKind::kCompose: {
      auto outer = flatten(n->lhs.get());
      auto inner = flatten(n->rhs.get());
      if (!outer || !inner) return std::nullopt;
      return poly_compose(*outer, *inner);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<double>> flatten_polynomial(const SymbolExpr& expr) {
  if (expr.empty()) return std::nullopt;
  auto c = flatten(expr.root().get());
  if (!c) return std::nullopt;
  for (double v : *c) {
    if (!std::isfinite(v) || std::abs(v) > kOverflowGuard) return std::nullopt;
  }
  trim(*c);
  return c;
}

double eval_polynomial(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

std::vector<double> differentiate_polynomial(const std::vector<double>& coeffs) {
  if (coeffs.size() <= 1) return {0.0};
  std::vector<double> d(coeffs.size() - 1);
  for (std::size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = coeffs[i] * static_cast<double>(i);
  return d;
}

Family recognize_family(const SymbolExpr& phi) {
  Family fam;
  auto coeffs = flatten_polynomial(phi);
  if (!coeffs) return fam;

  const int degree = static_cast<int>(coeffs->size()) - 1;
  // Pointwise verification on degree+2 distinct sample points.
  const int samples = degree + 2;
  for (int k = 0; k < samples; ++k) {
    const double x = -2.3 + 4.9 * static_cast<double>(k) / samples + 0.137 * k;
    double expected;
    try {
      expected = phi(x);
    } catch (const std::exception&) {
      return fam;
    }
    const double got = eval_polynomial(*coeffs, x);
    if (std::abs(expected - got) > 1e-9 * (1.0 + std::abs(expected))) return fam;
  }

  fam.coeffs = *coeffs;
  fam.degree = degree;
  if (degree <= 1) {
    fam.tag = Family::Tag::kAffine;
    fam.a = degree >= 1 ? (*coeffs)[1] : 0.0;
    fam.b = (*coeffs)[0];
  } else {
    fam.tag = Family::Tag::kPolynomial;
  }
  return fam;
}

}  // namespace copdyn
