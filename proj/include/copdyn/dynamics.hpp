#pragma once

#include <optional>
#include <string>
#include <vector>

#include "copdyn/expr.hpp"

namespace copdyn {

/// Orbit x, φ(x), φ₂(x), ... with early-stop bookkeeping.
struct OrbitRecord {
  enum class Termination { kCompleted, kOverflow, kConverged };

  double start = 0.0;
  std::vector<double> values;  // values[0] = start
  Termination terminated_by = Termination::kCompleted;
  // Set when terminated_by == kConverged.
  double limit = 0.0;
  double tolerance = 0.0;
  // Set when terminated_by == kOverflow: the step that overflowed.
  int overflow_at = -1;

  bool converged() const noexcept { return terminated_by == Termination::kConverged; }
  bool overflowed() const noexcept { return terminated_by == Termination::kOverflow; }
  double last() const { return values.back(); }
};

struct FixedPoint {
  enum class Stability { kAttracting, kRepelling, kNeutral, kSuperAttracting };

  double location = 0.0;
  double derivative = 0.0;  // φ' at location
  Stability stability = Stability::kNeutral;
  double residual = 0.0;    // |φ(location) - location|
  bool tangential = false;  // found via |g| dip, not a sign change
};

struct FixedPointScan {
  std::vector<FixedPoint> points;
  double lo = 0.0;
  double hi = 0.0;
  // Endpoint growth analysis of g = φ - x: set when |g| shrinks toward a
  // window end, i.e. a root may exist beyond the scanned window.
  bool possible_root_below = false;
  bool possible_root_above = false;
};

enum class Monotonicity { kIncreasing, kDecreasing, kNonMonotone, kInconclusive };

struct MonotonicityResult {
  Monotonicity kind = Monotonicity::kInconclusive;
  // Witness pair for kNonMonotone (φ' of opposite signs), or the location
  // of a vanishing derivative for kInconclusive.
  double witness_a = 0.0;
  double witness_b = 0.0;
};

struct RunawayResult {
  enum class Status { kTrue, kFalse, kInconclusive };

  Status status = Status::kInconclusive;
  int n0 = -1;          // least escape index when status == kTrue
  std::string reason;   // e.g. "FixedPointInOrNearK"
  double witness = 0.0; // fixed point location for the kFalse case
};

// Defaults for the whole-line scan disclosed in reports.
inline constexpr double kDefaultScanHalfWidth = 1e3;
inline constexpr int kDefaultScanResolution = 10000;

/// Orbit of x0 under φ for up to n steps. Stops early on the overflow guard
/// or once |Δ| < 1e-13·(1+|value|) holds on 3 consecutive steps past the
/// first (the seed step never counts).
OrbitRecord iterate_point(const SymbolExpr& phi, double x0, int n);

/// (1/n)·Σ_{k=1..n} φ_k(x).
double cesaro_mean_point(const SymbolExpr& phi, double x, int n);

/// Sign-change scan of g = φ - x on [lo, hi] refined by bisection; |g| dips
/// without sign change are refined by local minimization and flagged
/// tangential. Roots carry φ' from eval_jet order 1.
FixedPointScan find_fixed_points(const SymbolExpr& phi, double lo, double hi,
                                 int resolution);

FixedPointScan find_fixed_points_default(const SymbolExpr& phi);

MonotonicityResult monotonicity(const SymbolExpr& phi, double lo, double hi,
                                int resolution);

/// Escape of the compact K = [a, b] under iteration. True with the least n0
/// only for increasing symbols, where endpoint orbits are monotone and a
/// crossing certifies persistent disjointness.
RunawayResult is_strongly_runaway(const SymbolExpr& phi, double a, double b,
                                  int n_max);

/// True when φ(x) = x at 32 spread sample points (exact float equality).
bool acts_as_identity(const SymbolExpr& phi);

}  // namespace copdyn
