#include "copdyn/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace copdyn {
namespace {

// ---------------------------------------------------------------------------
// Truncated Taylor series: c[i] = f^(i)(x0)/i!. All arithmetic below keeps
// this normalization; eval_jet converts back to raw derivatives at the end.
// ---------------------------------------------------------------------------

struct Series {
  std::array<double, kMaxJetOrder + 1> c{};
  int m = 0;

  void check() const {
    for (int i = 0; i <= m; ++i) {
      if (!std::isfinite(c[static_cast<std::size_t>(i)]) ||
          std::abs(c[static_cast<std::size_t>(i)]) > kOverflowGuard) {
        throw OverflowError("series coefficient exceeded the overflow guard");
      }
    }
  }
};

Series series_const(double v, int m) {
  Series s;
  s.m = m;
  s.c[0] = v;
  s.check();
  return s;
}

Series series_var(double x, int m) {
  Series s;
  s.m = m;
  s.c[0] = x;
  if (m >= 1) s.c[1] = 1.0;
  s.check();
  return s;
}

Series neg(Series a) {
  for (int i = 0; i <= a.m; ++i) a.c[static_cast<std::size_t>(i)] = -a.c[static_cast<std::size_t>(i)];
  return a;
}

Series add(const Series& a, const Series& b) {
  Series r;
  r.m = a.m;
  for (int i = 0; i <= r.m; ++i)
    r.c[static_cast<std::size_t>(i)] =
        a.c[static_cast<std::size_t>(i)] + b.c[static_cast<std::size_t>(i)];
  r.check();
  return r;
}

Series mul(const Series& a, const Series& b) {
  Series r;
  r.m = a.m;
  for (int n = 0; n <= r.m; ++n) {
    double sum = 0.0;
    for (int k = 0; k <= n; ++k)
      sum += a.c[static_cast<std::size_t>(k)] * b.c[static_cast<std::size_t>(n - k)];
    r.c[static_cast<std::size_t>(n)] = sum;
  }
  r.check();
  return r;
}

Series div(const Series& a, const Series& b, double x) {
  if (b.c[0] == 0.0) throw DomainError("division by zero", x);
  Series r;
  r.m = a.m;
  for (int n = 0; n <= r.m; ++n) {
    double sum = a.c[static_cast<std::size_t>(n)];
    for (int k = 0; k < n; ++k)
      sum -= r.c[static_cast<std::size_t>(k)] * b.c[static_cast<std::size_t>(n - k)];
    r.c[static_cast<std::size_t>(n)] = sum / b.c[0];
  }
  r.check();
  return r;
}

Series ipow(const Series& base, int e, double x) {
  if (e == 0) return series_const(1.0, base.m);
  if (e < 0) return div(series_const(1.0, base.m), ipow(base, -e, x), x);
  Series acc = series_const(1.0, base.m);
  Series sq = base;
  int n = e;
  while (n > 0) {
    if (n & 1) acc = mul(acc, sq);
    n >>= 1;
    if (n > 0) sq = mul(sq, sq);
  }
  return acc;
}

// u'[j] as a Taylor coefficient: (j+1)*u[j+1].
double dcoeff(const Series& u, int j) {
  return (j + 1) * u.c[static_cast<std::size_t>(j + 1)];
}

Series series_exp(const Series& u) {
  Series r;
  r.m = u.m;
  r.c[0] = std::exp(u.c[0]);
  for (int n = 0; n < r.m; ++n) {
    double sum = 0.0;
    for (int k = 0; k <= n; ++k)
      sum += r.c[static_cast<std::size_t>(k)] * dcoeff(u, n - k);
    r.c[static_cast<std::size_t>(n + 1)] = sum / (n + 1);
  }
  r.check();
  return r;
}

Series series_log(const Series& u, double x) {
  if (!(u.c[0] > 0.0)) throw DomainError("log of non-positive value", x);
  Series r;
  r.m = u.m;
  r.c[0] = std::log(u.c[0]);
  for (int n = 0; n < r.m; ++n) {
    // u[0]*(n+1)*L[n+1] = (n+1)*u[n+1] - sum_{k=1}^{n} u[k]*(n+1-k)*L[n+1-k]
    double sum = (n + 1) * u.c[static_cast<std::size_t>(n + 1)];
    for (int k = 1; k <= n; ++k)
      sum -= u.c[static_cast<std::size_t>(k)] * (n + 1 - k) *
             r.c[static_cast<std::size_t>(n + 1 - k)];
    r.c[static_cast<std::size_t>(n + 1)] = sum / ((n + 1) * u.c[0]);
  }
  r.check();
  return r;
}

Series series_sin_or_cos(const Series& u, bool want_sin) {
  Series s, c;
  s.m = c.m = u.m;
  s.c[0] = std::sin(u.c[0]);
  c.c[0] = std::cos(u.c[0]);
  for (int n = 0; n < u.m; ++n) {
    double ssum = 0.0, csum = 0.0;
    for (int k = 0; k <= n; ++k) {
      ssum += c.c[static_cast<std::size_t>(k)] * dcoeff(u, n - k);
      csum += s.c[static_cast<std::size_t>(k)] * dcoeff(u, n - k);
    }
    s.c[static_cast<std::size_t>(n + 1)] = ssum / (n + 1);
    c.c[static_cast<std::size_t>(n + 1)] = -csum / (n + 1);
  }
  const Series& r = want_sin ? s : c;
  r.check();
  return r;
}

Series series_tanh(const Series& u) {
  // T' = (1 - T^2) * u'
  Series t;
  t.m = u.m;
  t.c[0] = std::tanh(u.c[0]);
  for (int n = 0; n < u.m; ++n) {
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
      double w = (k == 0) ? 1.0 : 0.0;  // w = (1 - T^2)[k], T known up to n
      for (int a = 0; a <= k; ++a)
        w -= t.c[static_cast<std::size_t>(a)] * t.c[static_cast<std::size_t>(k - a)];
      sum += w * dcoeff(u, n - k);
    }
    t.c[static_cast<std::size_t>(n + 1)] = sum / (n + 1);
  }
  t.check();
  return t;
}

// Horner composition outer(inner): valid because (inner - inner[0]) has no
// constant term, so the truncation is exact at order m.
Series series_compose(const Series& outer, Series inner) {
  inner.c[0] = 0.0;
  Series acc = series_const(outer.c[static_cast<std::size_t>(outer.m)], outer.m);
  for (int k = outer.m - 1; k >= 0; --k) {
    acc = mul(acc, inner);
    acc.c[0] += outer.c[static_cast<std::size_t>(k)];
  }
  acc.check();
  return acc;
}

Series eval_series(const ExprNode* node, double x, int m);

Series eval_series_children(const ExprNode* node, double x, int m) {
  switch (node->kind) {
    case NodeKind::kConstant:
      return series_const(node->constant, m);
    case NodeKind::kVariable:
      return series_var(x, m);
    case NodeKind::kNegate:
      return neg(eval_series(node->lhs.get(), x, m));
    case NodeKind::kAdd:
      return add(eval_series(node->lhs.get(), x, m), eval_series(node->rhs.get(), x, m));
    case NodeKind::kMul:
      return mul(eval_series(node->lhs.get(), x, m), eval_series(node->rhs.get(), x, m));
    case NodeKind::kDiv:
      return div(eval_series(node->lhs.get(), x, m), eval_series(node->rhs.get(), x, m), x);
    case NodeKind::kPow:
      return ipow(eval_series(node->lhs.get(), x, m), node->exponent, x);
    case NodeKind::kExp:
      return series_exp(eval_series(node->lhs.get(), x, m));
    case NodeKind::kLog:
      return series_log(eval_series(node->lhs.get(), x, m), x);
    case NodeKind::kSin:
      return series_sin_or_cos(eval_series(node->lhs.get(), x, m), true);
    case NodeKind::kCos:
      return series_sin_or_cos(eval_series(node->lhs.get(), x, m), false);
    case NodeKind::kTanh:
      return series_tanh(eval_series(node->lhs.get(), x, m));
    case NodeKind::kCompose: {
      Series inner = eval_series(node->rhs.get(), x, m);
      Series outer = eval_series(node->lhs.get(), inner.c[0], m);
      return series_compose(outer, inner);
    }
  }
  throw PreconditionViolated("unreachable node kind");
}

Series eval_series(const ExprNode* node, double x, int m) {
  Series s = eval_series_children(node, x, m);
  s.check();
  return s;
}

double eval_scalar(const ExprNode* node, double x);

double checked(double v) {
  if (!std::isfinite(v) || std::abs(v) > kOverflowGuard) {
    throw OverflowError("value exceeded the overflow guard");
  }
  return v;
}

double eval_scalar(const ExprNode* node, double x) {
  switch (node->kind) {
    case NodeKind::kConstant:
      return node->constant;
    case NodeKind::kVariable:
      return x;
    case NodeKind::kNegate:
      return -eval_scalar(node->lhs.get(), x);
    case NodeKind::kAdd:
      return checked(eval_scalar(node->lhs.get(), x) + eval_scalar(node->rhs.get(), x));
    case NodeKind::kMul:
      return checked(eval_scalar(node->lhs.get(), x) * eval_scalar(node->rhs.get(), x));
    case NodeKind::kDiv: {
      const double d = eval_scalar(node->rhs.get(), x);
      if (d == 0.0) throw DomainError("division by zero", x);
      return checked(eval_scalar(node->lhs.get(), x) / d);
    }
    case NodeKind::kPow: {
      const double b = eval_scalar(node->lhs.get(), x);
      int e = node->exponent;
      if (e < 0 && b == 0.0) throw DomainError("zero raised to a negative power", x);
      double acc = 1.0, sq = b;
      for (int n = std::abs(e); n > 0; n >>= 1) {
        if (n & 1) acc = checked(acc * sq);
        if (n > 1) sq = checked(sq * sq);
      }
      return e < 0 ? checked(1.0 / acc) : acc;
    }
    case NodeKind::kExp:
      return checked(std::exp(eval_scalar(node->lhs.get(), x)));
    case NodeKind::kLog: {
      const double a = eval_scalar(node->lhs.get(), x);
      if (!(a > 0.0)) throw DomainError("log of non-positive value", x);
      return std::log(a);
    }
    case NodeKind::kSin:
      return std::sin(eval_scalar(node->lhs.get(), x));
    case NodeKind::kCos:
      return std::cos(eval_scalar(node->lhs.get(), x));
    case NodeKind::kTanh:
      return std::tanh(eval_scalar(node->lhs.get(), x));
    case NodeKind::kCompose:
      return eval_scalar(node->lhs.get(), eval_scalar(node->rhs.get(), x));
  }
  throw PreconditionViolated("unreachable node kind");
}

// ---------------------------------------------------------------------------
// Parser. Offsets in errors are 1-based byte positions.
// ---------------------------------------------------------------------------

ExprPtr node(NodeKind kind, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  ExprPtr run() {
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what + " at offset " + std::to_string(pos_ + 1), pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      if (eat('+')) {
        lhs = node(NodeKind::kAdd, lhs, parse_term());
      } else if (eat('-')) {
        lhs = node(NodeKind::kAdd, lhs, node(NodeKind::kNegate, parse_term()));
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      if (eat('*')) {
        lhs = node(NodeKind::kMul, lhs, parse_unary());
      } else if (eat('/')) {
        lhs = node(NodeKind::kDiv, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    if (eat('-')) return node(NodeKind::kNegate, parse_unary());
    if (eat('+')) return parse_unary();
    return parse_postfix();
  }

  ExprPtr parse_postfix() {
    ExprPtr base = parse_atom();
    while (eat('^')) {
      auto p = std::make_shared<ExprNode>();
      p->kind = NodeKind::kPow;
      p->lhs = base;
      p->exponent = parse_int_exponent();
      base = p;
    }
    return base;
  }

  int parse_int_exponent() {
    skip_ws();
    std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    std::size_t digits_start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits_start) fail("expected integer exponent");
    long v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + digits_start, text_.data() + pos_, v);
    if (ec != std::errc() || v > 64) {
      pos_ = start;
      fail("integer exponent out of range (|e| <= 64)");
    }
    return negative ? static_cast<int>(-v) : static_cast<int>(v);
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    fail("expected a number, 'x', a function name, or '('");
  }

  ExprPtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ == start || (pos_ == start + 1 && text_[start] == '.')) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      std::size_t ds = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == ds) pos_ = mark;  // 'e' belongs to something else; not ours
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::kConstant;
    n->constant = v;
    return n;
  }

  ExprPtr parse_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    if (name == "x") return node(NodeKind::kVariable);
    NodeKind kind;
    if (name == "exp") kind = NodeKind::kExp;
    else if (name == "log") kind = NodeKind::kLog;
    else if (name == "sin") kind = NodeKind::kSin;
    else if (name == "cos") kind = NodeKind::kCos;
    else if (name == "tanh") kind = NodeKind::kTanh;
    else throw UnknownIdentifier(name, start + 1);
    if (!eat('(')) fail("expected '(' after function name");
    ExprPtr arg = parse_expr();
    if (!eat(')')) fail("expected ')'");
    return node(kind, arg);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

void print_node(const ExprNode* n, std::ostream& os) {
  switch (n->kind) {
    case NodeKind::kConstant: os << n->constant; return;
    case NodeKind::kVariable: os << 'x'; return;
    case NodeKind::kNegate: os << "(-"; print_node(n->lhs.get(), os); os << ')'; return;
    case NodeKind::kAdd:
      os << '(';
      print_node(n->lhs.get(), os);
      os << " + ";
      print_node(n->rhs.get(), os);
      os << ')';
      return;
    case NodeKind::kMul:
      os << '(';
      print_node(n->lhs.get(), os);
      os << " * ";
      print_node(n->rhs.get(), os);
      os << ')';
      return;
    case NodeKind::kDiv:
      os << '(';
      print_node(n->lhs.get(), os);
      os << " / ";
      print_node(n->rhs.get(), os);
      os << ')';
      return;
    case NodeKind::kPow:
      print_node(n->lhs.get(), os);
      os << '^' << n->exponent;
      return;
    case NodeKind::kExp: os << "exp("; print_node(n->lhs.get(), os); os << ')'; return;
    case NodeKind::kLog: os << "log("; print_node(n->lhs.get(), os); os << ')'; return;
    case NodeKind::kSin: os << "sin("; print_node(n->lhs.get(), os); os << ')'; return;
    case NodeKind::kCos: os << "cos("; print_node(n->lhs.get(), os); os << ')'; return;
    case NodeKind::kTanh: os << "tanh("; print_node(n->lhs.get(), os); os << ')'; return;
    case NodeKind::kCompose:
      os << '(';
      print_node(n->lhs.get(), os);
      os << " o ";
      print_node(n->rhs.get(), os);
      os << ')';
      return;
  }
}

}  // namespace

double SymbolExpr::operator()(double x) const {
  if (!root_) throw PreconditionViolated("empty expression");
  return eval_scalar(root_.get(), x);
}

std::string SymbolExpr::to_string() const {
  if (!root_) return "<empty>";
  std::ostringstream os;
  print_node(root_.get(), os);
  return os.str();
}

SymbolExpr parse(const std::string& text) {
  Parser p(text);
  return SymbolExpr(p.run());
}

Jet eval_jet(const SymbolExpr& f, double x, int m) {
  if (f.empty()) throw PreconditionViolated("empty expression");
  if (m < 0 || m > kMaxJetOrder) {
    throw PreconditionViolated("jet order must be in [0, " +
                               std::to_string(kMaxJetOrder) + "]");
  }
  Series s = eval_series(f.root().get(), x, m);
  std::vector<double> coeffs(static_cast<std::size_t>(m) + 1);
  double factorial = 1.0;
  for (int i = 0; i <= m; ++i) {
    if (i > 1) factorial *= i;
    coeffs[static_cast<std::size_t>(i)] = s.c[static_cast<std::size_t>(i)] * factorial;
  }
  return Jet(x, std::move(coeffs));
}

SymbolExpr compose(const SymbolExpr& outer, const SymbolExpr& inner) {
  return SymbolExpr(node(NodeKind::kCompose, outer.root(), inner.root()));
}

SymbolExpr iterate_expr(const SymbolExpr& phi, int n) {
  if (n < 0) throw PreconditionViolated("iterate count must be >= 0");
  if (n == 0) return make_variable();
  SymbolExpr acc = phi;
  for (int i = 1; i < n; ++i) acc = compose(phi, acc);
  return acc;
}

SymbolExpr make_constant(double c) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::kConstant;
  n->constant = c;
  return SymbolExpr(n);
}

SymbolExpr make_variable() { return SymbolExpr(node(NodeKind::kVariable)); }

SymbolExpr make_affine(double a, double b) {
  if (a == 0.0) return make_constant(b);
  SymbolExpr ax = a == 1.0 ? make_variable()
                           : SymbolExpr(node(NodeKind::kMul, make_constant(a).root(),
                                             make_variable().root()));
  if (b == 0.0) return ax;
  return SymbolExpr(node(NodeKind::kAdd, ax.root(), make_constant(b).root()));
}

}  // namespace copdyn
