#include "copdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace copdyn {
namespace {

constexpr double kConvergenceRel = 1e-13;
constexpr int kConvergenceRun = 3;
constexpr double kResidualRel = 1e-12;
constexpr double kNeutralTol = 1e-9;
constexpr double kSuperAttractingTol = 1e-9;

FixedPoint::Stability classify_stability(double deriv) {
  const double mag = std::abs(deriv);
  if (mag <= kSuperAttractingTol) return FixedPoint::Stability::kSuperAttracting;
  if (std::abs(mag - 1.0) <= kNeutralTol) return FixedPoint::Stability::kNeutral;
  return mag < 1.0 ? FixedPoint::Stability::kAttracting
                   : FixedPoint::Stability::kRepelling;
}

double g_of(const SymbolExpr& phi, double x) { return phi(x) - x; }

// Bisection refinement of a bracketed sign change of g = φ - x.
std::optional<FixedPoint> refine_sign_change(const SymbolExpr& phi, double lo,
                                             double hi, double glo, double ghi) {
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    double gmid;
    try {
      gmid = g_of(phi, mid);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (gmid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((glo < 0.0) != (gmid < 0.0)) {
      hi = mid;
      ghi = gmid;
    } else {
      lo = mid;
      glo = gmid;
    }
  }
  const double root = 0.5 * (lo + hi);
  const double residual = std::abs(g_of(phi, root));
  if (residual > kResidualRel * (1.0 + std::abs(root))) return std::nullopt;
  FixedPoint fp;
  fp.location = root;
  fp.residual = residual;
  fp.derivative = eval_jet(phi, root, 1).derivative(1);
  fp.stability = classify_stability(fp.derivative);
  return fp;
}

// Golden-section minimization of |g| around a dip that shows no sign change.
std::optional<FixedPoint> refine_dip(const SymbolExpr& phi, double lo, double hi) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  try {
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = std::abs(g_of(phi, c));
    double fd = std::abs(g_of(phi, d));
    for (int it = 0; it < 160 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = std::abs(g_of(phi, c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = std::abs(g_of(phi, d));
      }
    }
    const double root = 0.5 * (a + b);
    const double residual = std::abs(g_of(phi, root));
    if (residual > kResidualRel * (1.0 + std::abs(root))) return std::nullopt;
    FixedPoint fp;
    fp.location = root;
    fp.residual = residual;
    fp.derivative = eval_jet(phi, root, 1).derivative(1);
    fp.stability = classify_stability(fp.derivative);
    fp.tangential = true;
    return fp;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

OrbitRecord iterate_point(const SymbolExpr& phi, double x0, int n) {
  if (n < 0) throw PreconditionViolated("orbit length must be >= 0");
  OrbitRecord orbit;
  orbit.start = x0;
  orbit.values.reserve(static_cast<std::size_t>(n) + 1);
  orbit.values.push_back(x0);
  int run = 0;
  for (int k = 0; k < n; ++k) {
    const double prev = orbit.values.back();
    double next;
    try {
      next = phi(prev);
    } catch (const OverflowError&) {
      orbit.terminated_by = OrbitRecord::Termination::kOverflow;
      orbit.overflow_at = k + 1;
      return orbit;
    }
    orbit.values.push_back(next);
    if (k >= 1) {  // the seed step never counts toward convergence
      if (std::abs(next - prev) < kConvergenceRel * (1.0 + std::abs(prev))) {
        ++run;
      } else {
        run = 0;
      }
      if (run >= kConvergenceRun) {
        orbit.terminated_by = OrbitRecord::Termination::kConverged;
        orbit.limit = next;
        double fixed_residual = 0.0;
        try {
          fixed_residual = std::abs(phi(next) - next);
        } catch (const std::exception&) {
          fixed_residual = 0.0;
        }
        orbit.tolerance = std::max(1e-12 * (1.0 + std::abs(next)), fixed_residual);
        return orbit;
      }
    }
  }
  return orbit;
}

double cesaro_mean_point(const SymbolExpr& phi, double x, int n) {
  if (n < 1) throw PreconditionViolated("cesaro mean needs n >= 1");
  double sum = 0.0;
  double value = x;
  for (int k = 1; k <= n; ++k) {
    value = phi(value);  // OverflowError propagates
    sum += value;
    if (!std::isfinite(sum) || std::abs(sum) > kOverflowGuard) {
      throw OverflowError("cesaro sum exceeded the overflow guard");
    }
  }
  return sum / n;
}

FixedPointScan find_fixed_points(const SymbolExpr& phi, double lo, double hi,
                                 int resolution) {
  if (!(lo < hi)) throw PreconditionViolated("scan interval must satisfy lo < hi");
  if (resolution < 2) throw PreconditionViolated("scan resolution must be >= 2");

  FixedPointScan scan;
  scan.lo = lo;
  scan.hi = hi;

  const double step = (hi - lo) / (resolution - 1);
  std::vector<double> xs(static_cast<std::size_t>(resolution));
  std::vector<double> gs(static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    const double x = lo + step * i;
    xs[static_cast<std::size_t>(i)] = x;
    gs[static_cast<std::size_t>(i)] = g_of(phi, x);  // DomainError propagates
  }

  auto push_unique = [&scan](const FixedPoint& fp) {
    for (FixedPoint& seen : scan.points) {
      if (std::abs(seen.location - fp.location) <= 1e-8 * (1.0 + std::abs(fp.location))) {
        if (!fp.tangential) seen = fp;  // a certified root beats a dip
        return;
      }
    }
    scan.points.push_back(fp);
  };

  for (int i = 0; i + 1 < resolution; ++i) {
    const double ga = gs[static_cast<std::size_t>(i)];
    const double gb = gs[static_cast<std::size_t>(i + 1)];
    if (ga == 0.0) {
      if (auto fp = refine_sign_change(phi, xs[static_cast<std::size_t>(i)],
                                       xs[static_cast<std::size_t>(i)], ga, ga)) {
        push_unique(*fp);
      }
      continue;
    }
    if ((ga < 0.0) != (gb < 0.0)) {
      if (auto fp = refine_sign_change(phi, xs[static_cast<std::size_t>(i)],
                                       xs[static_cast<std::size_t>(i + 1)], ga, gb)) {
        push_unique(*fp);
      }
    }
  }

  // Dips of |g| below tolerance with no bracketed sign change.
  for (int i = 1; i + 1 < resolution; ++i) {
    const double g0 = std::abs(gs[static_cast<std::size_t>(i - 1)]);
    const double g1 = std::abs(gs[static_cast<std::size_t>(i)]);
    const double g2 = std::abs(gs[static_cast<std::size_t>(i + 1)]);
    const double x = xs[static_cast<std::size_t>(i)];
    (void)x;
    const bool local_min = g1 < g0 && g1 < g2;
    const bool deep_dip = g1 < 0.25 * std::max(g0, g2);
    const bool same_sign = (gs[static_cast<std::size_t>(i - 1)] < 0.0) ==
                               (gs[static_cast<std::size_t>(i + 1)] < 0.0) &&
                           gs[static_cast<std::size_t>(i - 1)] != 0.0;
    if (local_min && deep_dip && same_sign && g1 > 0.0) {
      if (auto fp = refine_dip(phi, xs[static_cast<std::size_t>(i - 1)],
                               xs[static_cast<std::size_t>(i + 1)])) {
        push_unique(*fp);
      }
    }
  }

  std::sort(scan.points.begin(), scan.points.end(),
            [](const FixedPoint& p, const FixedPoint& q) { return p.location < q.location; });

  // Endpoint growth analysis: |g| strictly shrinking toward a window end
  // suggests a root beyond it.
  const int tail = std::min(8, resolution / 2);
  bool shrink_below = true, shrink_above = true;
  for (int i = 0; i + 1 < tail; ++i) {
    if (std::abs(gs[static_cast<std::size_t>(i)]) >=
        std::abs(gs[static_cast<std::size_t>(i + 1)]))
      shrink_below = false;
    const int j = resolution - 1 - i;
    if (std::abs(gs[static_cast<std::size_t>(j)]) >=
        std::abs(gs[static_cast<std::size_t>(j - 1)]))
      shrink_above = false;
  }
  scan.possible_root_below = shrink_below;
  scan.possible_root_above = shrink_above;
  return scan;
}

FixedPointScan find_fixed_points_default(const SymbolExpr& phi) {
  return find_fixed_points(phi, -kDefaultScanHalfWidth, kDefaultScanHalfWidth,
                           kDefaultScanResolution);
}

MonotonicityResult monotonicity(const SymbolExpr& phi, double lo, double hi,
                                int resolution) {
  if (!(lo < hi)) throw PreconditionViolated("scan interval must satisfy lo < hi");
  if (resolution < 2) throw PreconditionViolated("scan resolution must be >= 2");

  MonotonicityResult result;
  const double step = (hi - lo) / (resolution - 1);
  bool any_pos = false, any_neg = false, any_zero = false;
  double pos_at = 0.0, neg_at = 0.0, zero_at = 0.0;
  for (int i = 0; i < resolution; ++i) {
    const double x = lo + step * i;
    const double d = eval_jet(phi, x, 1).derivative(1);
    if (std::abs(d) <= 1e-12 * (1.0 + std::abs(x))) {
      any_zero = true;
      zero_at = x;
    } else if (d > 0.0) {
      any_pos = true;
      pos_at = x;
    } else {
      any_neg = true;
      neg_at = x;
    }
    if (any_pos && any_neg) {
      result.kind = Monotonicity::kNonMonotone;
      result.witness_a = std::min(neg_at, pos_at);
      result.witness_b = std::max(neg_at, pos_at);
      return result;
    }
  }
  if (any_zero) {
    result.kind = Monotonicity::kInconclusive;
    result.witness_a = result.witness_b = zero_at;
    return result;
  }
  result.kind = any_pos ? Monotonicity::kIncreasing : Monotonicity::kDecreasing;
  return result;
}

bool acts_as_identity(const SymbolExpr& phi) {
  for (int k = 0; k < 32; ++k) {
    const double x = -7.75 + 0.5 * k;
    try {
      if (phi(x) != x) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

RunawayResult is_strongly_runaway(const SymbolExpr& phi, double a, double b,
                                  int n_max) {
  if (!(a <= b)) throw PreconditionViolated("compact [a, b] needs a <= b");
  RunawayResult result;

  if (acts_as_identity(phi)) {
    result.status = RunawayResult::Status::kFalse;
    result.reason = "FixedPointInOrNearK";
    result.witness = a;
    return result;
  }

  // Fixed points inside K never leave it.
  const double margin = std::max(1.0, 0.1 * (b - a));
  FixedPointScan scan = find_fixed_points(phi, a - margin, b + margin, 4096);
  for (const FixedPoint& fp : scan.points) {
    if (fp.location >= a && fp.location <= b) {
      result.status = RunawayResult::Status::kFalse;
      result.reason = "FixedPointInOrNearK";
      result.witness = fp.location;
      return result;
    }
  }

  const double scan_lo = std::min(a, -kDefaultScanHalfWidth);
  const double scan_hi = std::max(b, kDefaultScanHalfWidth);
  MonotonicityResult mono = monotonicity(phi, scan_lo, scan_hi, 4096);

  if (mono.kind == Monotonicity::kDecreasing) {
    // φ₂ is increasing; a fixed point of φ₂ in K traps even iterates there.
    SymbolExpr phi2 = compose(phi, phi);
    FixedPointScan scan2 = find_fixed_points(phi2, a - margin, b + margin, 4096);
    for (const FixedPoint& fp : scan2.points) {
      if (fp.location >= a && fp.location <= b) {
        result.status = RunawayResult::Status::kFalse;
        result.reason = "FixedPointInOrNearK";
        result.witness = fp.location;
        return result;
      }
    }
    result.status = RunawayResult::Status::kInconclusive;
    result.reason = "decreasing symbol; escape analysis defined for increasing only";
    return result;
  }
  if (mono.kind != Monotonicity::kIncreasing) {
    result.status = RunawayResult::Status::kInconclusive;
    result.reason = "monotonicity not established on the scan window";
    return result;
  }

  // Increasing φ: endpoint orbits are monotone, so the first crossing of K
  // persists for every later iterate.
  double image_lo = a, image_hi = b;
  for (int n = 1; n <= n_max; ++n) {
    try {
      image_lo = phi(image_lo);
      image_hi = phi(image_hi);
    } catch (const OverflowError&) {
      result.status = RunawayResult::Status::kInconclusive;
      result.reason = "overflow before a crossing was observed";
      return result;
    }
    if (image_lo > b || image_hi < a) {
      result.status = RunawayResult::Status::kTrue;
      result.n0 = n;
      return result;
    }
  }
  result.status = RunawayResult::Status::kInconclusive;
  result.reason = "no escape within n_max iterations";
  return result;
}

}  // namespace copdyn
