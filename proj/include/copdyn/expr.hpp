#pragma once

#include <memory>
#include <string>

#include "copdyn/jet.hpp"

namespace copdyn {

enum class NodeKind {
  kConstant,
  kVariable,
  kNegate,
  kAdd,
  kMul,
  kDiv,
  kPow,      // integer exponent only
  kExp,
  kLog,
  kSin,
  kCos,
  kTanh,
  kCompose,  // lhs ∘ rhs, built programmatically (no surface syntax)
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind;
  double constant = 0.0;  // kConstant
  int exponent = 0;       // kPow
  ExprPtr lhs;            // sole child for unary kinds
  ExprPtr rhs;            // second child for kAdd/kMul/kDiv/kCompose
};

/// One-variable expression over the grammar
///   expr := term (('+'|'-') term)*
///   term := unary (('*'|'/') unary)*
///   unary := ('-'|'+')* postfix
///   postfix := atom ('^' signed-integer)*
///   atom := number | 'x' | name '(' expr ')' | '(' expr ')'
/// with name in {exp, log, sin, cos, tanh}. Immutable, cheap to copy.
class SymbolExpr {
 public:
  SymbolExpr() = default;
  explicit SymbolExpr(ExprPtr root) : root_(std::move(root)) {}

  const ExprPtr& root() const noexcept { return root_; }
  bool empty() const noexcept { return root_ == nullptr; }

  /// Plain evaluation; equals eval_jet(*, x, 0).value().
  double operator()(double x) const;

  std::string to_string() const;

 private:
  ExprPtr root_;
};

/// Parses the expression grammar above. Throws SyntaxError (with byte
/// offset) or UnknownIdentifier.
SymbolExpr parse(const std::string& text);

/// Derivatives of f at x up to order m. Exact for polynomial nodes,
/// series-arithmetic precision for transcendental ones.
Jet eval_jet(const SymbolExpr& f, double x, int m);

/// The expression tree for outer ∘ inner.
SymbolExpr compose(const SymbolExpr& outer, const SymbolExpr& inner);

/// n-fold composition φ∘…∘φ as a tree (n >= 1); n = 0 yields the identity.
SymbolExpr iterate_expr(const SymbolExpr& phi, int n);

// Node builders, used by tests and the classifier.
SymbolExpr make_constant(double c);
SymbolExpr make_variable();
SymbolExpr make_affine(double a, double b);  // a*x + b, folded

}  // namespace copdyn
