#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "copdyn/expr.hpp"
#include "copdyn/verdict.hpp"

namespace copdyn {

/// Derivative source: jets of some C^m function at a point. SymbolExpr
/// instances wrap into this; the bump family provides its own.
using JetFn = std::function<Jet(double x, int m)>;

JetFn jet_fn(const SymbolExpr& f);

/// Weighted-sup estimate over a scan window. A sup over the whole line is
/// only ever approximated on [-x_max, x_max]; the tail field discloses how
/// the integrand behaved at the window ends.
struct SeminormEstimate {
  enum class Tail { kDecaying, kNonDecaying, kTruncated };

  double value = 0.0;   // +inf sentinel on overflow
  double witness_x = 0.0;
  int witness_i = 0;
  double grid_x_max = 0.0;
  long grid_points = 0;
  Tail tail = Tail::kTruncated;

  bool overflowed() const { return !(value <= kOverflowGuard); }
};

inline constexpr double kDefaultSeminormWindow = 100.0;

/// |f|_{m,n} = sup_x sup_{i<=m} (1+x^2)^{-n} |f^(i)(x)| on the window.
SeminormEstimate seminorm_Omn(const JetFn& f, int m, int n,
                              double x_max = kDefaultSeminormWindow);
SeminormEstimate seminorm_Omn(const SymbolExpr& f, int m, int n,
                              double x_max = kDefaultSeminormWindow);

/// p_{m,v}(f) = sup_x sup_{i<=m} |v(x)| |f^(i)(x)| on the window. The weight
/// must decay at the window ends; otherwise the tail is reported
/// non-decaying.
SeminormEstimate seminorm_weighted(const JetFn& f, int m, const SymbolExpr& v,
                                   double x_max = kDefaultSeminormWindow);
SeminormEstimate seminorm_weighted(const SymbolExpr& f, int m, const SymbolExpr& v,
                                   double x_max = kDefaultSeminormWindow);

/// Fit of |samples| <= C (1+x^2)^p with integer p (fractional slopes round
/// up). Violated when no p <= p_cap flattens the tail of the log-scale upper
/// envelope, i.e. the data grows super-polynomially on the sampled range.
struct GrowthFit {
  int exponent_p = 0;
  double constant_c = 0.0;
  double residual = 0.0;  // max log-scale tail excess at the chosen p
  bool fits = false;
  double witness_x = 0.0;  // violation witness when !fits
};

inline constexpr int kGrowthExponentCap = 64;

/// Requires >= 8 samples spanning two decades of |x| (x = 0 counts as the
/// small end). Throws InsufficientSamples otherwise.
GrowthFit fit_growth(const std::vector<std::pair<double, double>>& samples,
                     int p_cap = kGrowthExponentCap);

/// Per-derivative growth fits for membership of φ in the weighted space of
/// order m. Exact for recognized polynomials (p = ceil(d/2)), empirical
/// otherwise.
Verdict membership_Om(const SymbolExpr& phi, int m,
                      double x_max = kDefaultSeminormWindow);

/// Sweep of membership_Om over m = 0..m_max: the multiplier-space check is
/// reported per order without asserting the full projective-limit statement.
std::vector<Verdict> membership_OM(const SymbolExpr& phi, int m_max,
                                   double x_max = kDefaultSeminormWindow);

/// Escaping bump family of Remark-type: support in [n, n+1], plateau value
/// n(1+x^2)^n on [n+1/n, n+1-1/n], smooth glue with derivatives up to
/// order 3. For n = 1 the paper's plateau is empty; the peak is centered.
Jet bump_jet(int n, double x, int m);
double bump_value(int n, double x);
JetFn bump_fn(int n);

/// Sample grid spanning [0, x_max] symmetrically with log-spaced points near
/// zero; satisfies the fit_growth span precondition.
std::vector<double> growth_sample_grid(double x_max, int uniform_points = 161);

}  // namespace copdyn
