#include "copdyn/seminorm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "copdyn/family.hpp"

namespace copdyn {
namespace {

constexpr int kCoarsePoints = 4001;
constexpr double kRefineStep = 1e-4;
constexpr double kTailRatio = 1e-3;

using WeightFn = std::function<double(double)>;

struct Candidate {
  double x = 0.0;
  double value = -1.0;
  int i = 0;
};

// Weighted magnitude max_{i<=m} w(x) |f^(i)(x)|; OverflowError propagates.
Candidate integrand(const JetFn& f, const WeightFn& w, int m, double x) {
  const Jet jet = f(x, m);
  const double weight = std::abs(w(x));
  Candidate best;
  best.x = x;
  for (int i = 0; i <= m; ++i) {
    const double v = weight * std::abs(jet.derivative(i));
    if (!std::isfinite(v) || v > kOverflowGuard) {
      throw OverflowError("weighted integrand exceeded the overflow guard");
    }
    if (v > best.value) {
      best.value = v;
      best.i = i;
    }
  }
  return best;
}

bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.x < b.x;  // smallest-witness tie-break
}

SeminormEstimate scan(const JetFn& f, const WeightFn& w, int m, double x_max,
                      bool weight_decays) {
  if (m < 0 || m > kMaxJetOrder) {
    throw PreconditionViolated("seminorm order must be in [0, 8]");
  }
  SeminormEstimate est;
  est.grid_x_max = x_max;

  const double step = 2.0 * x_max / (kCoarsePoints - 1);
  std::vector<Candidate> grid(kCoarsePoints);
  try {
    for (int k = 0; k < kCoarsePoints; ++k) {
      grid[static_cast<std::size_t>(k)] = integrand(f, w, m, -x_max + step * k);
    }
  } catch (const OverflowError&) {
    est.value = std::numeric_limits<double>::infinity();
    est.tail = SeminormEstimate::Tail::kNonDecaying;
    est.grid_points = kCoarsePoints;
    return est;
  }
  est.grid_points = kCoarsePoints;

  // Local maxima of the coarse scan plus both endpoints seed refinement.
  std::vector<int> seeds = {0, kCoarsePoints - 1};
  for (int k = 1; k + 1 < kCoarsePoints; ++k) {
    if (grid[static_cast<std::size_t>(k)].value >= grid[static_cast<std::size_t>(k - 1)].value &&
        grid[static_cast<std::size_t>(k)].value >= grid[static_cast<std::size_t>(k + 1)].value) {
      seeds.push_back(k);
    }
  }
  std::sort(seeds.begin(), seeds.end(), [&grid](int a, int b) {
    return better(grid[static_cast<std::size_t>(a)], grid[static_cast<std::size_t>(b)]);
  });
  if (seeds.size() > 48) seeds.resize(48);

  Candidate best;
  for (int seed : seeds) {
    Candidate c = grid[static_cast<std::size_t>(seed)];
    double h = step;
    try {
      while (h > kRefineStep) {
        h *= 0.5;
        const double left = std::max(-x_max, c.x - h);
        const double right = std::min(x_max, c.x + h);
        Candidate l = integrand(f, w, m, left);
        Candidate r = integrand(f, w, m, right);
        if (better(l, c)) c = l;
        if (better(r, c)) c = r;
      }
    } catch (const OverflowError&) {
      est.value = std::numeric_limits<double>::infinity();
      est.tail = SeminormEstimate::Tail::kNonDecaying;
      return est;
    }
    est.grid_points += static_cast<long>(2.0 * std::log2(step / kRefineStep));
    if (better(c, best)) best = c;
  }

  est.value = best.value;
  est.witness_x = best.x;
  est.witness_i = best.i;

  // Tail classification at the window ends.
  const double end_value = std::max(grid.front().value, grid.back().value);
  if (!weight_decays) {
    est.tail = SeminormEstimate::Tail::kNonDecaying;
  } else if (end_value < kTailRatio * std::max(est.value, 1e-300)) {
    est.tail = SeminormEstimate::Tail::kDecaying;
  } else {
    // Still climbing at the edge vs merely not yet decayed.
    const double inner = std::max(grid[1].value, grid[grid.size() - 2].value);
    est.tail = end_value >= inner ? SeminormEstimate::Tail::kNonDecaying
                                  : SeminormEstimate::Tail::kTruncated;
  }
  return est;
}

}  // namespace

JetFn jet_fn(const SymbolExpr& f) {
  return [f](double x, int m) { return eval_jet(f, x, m); };
}

SeminormEstimate seminorm_Omn(const JetFn& f, int m, int n, double x_max) {
  if (n < 1) throw PreconditionViolated("seminorm weight exponent must be >= 1");
  const WeightFn w = [n](double x) { return std::pow(1.0 + x * x, -n); };
  return scan(f, w, m, x_max, /*weight_decays=*/true);
}

SeminormEstimate seminorm_Omn(const SymbolExpr& f, int m, int n, double x_max) {
  return seminorm_Omn(jet_fn(f), m, n, x_max);
}

SeminormEstimate seminorm_weighted(const JetFn& f, int m, const SymbolExpr& v,
                                   double x_max) {
  // The weight must decay at the window ends for the scan to stand in for a
  // global sup.
  double v_max = 0.0;
  for (int k = 0; k <= 200; ++k) {
    v_max = std::max(v_max, std::abs(v(-x_max + 2.0 * x_max * k / 200.0)));
  }
  const bool decays = std::abs(v(-x_max)) <= kTailRatio * v_max &&
                      std::abs(v(x_max)) <= kTailRatio * v_max;
  const WeightFn w = [&v](double x) { return std::abs(v(x)); };
  return scan(f, w, m, x_max, decays);
}

SeminormEstimate seminorm_weighted(const SymbolExpr& f, int m, const SymbolExpr& v,
                                   double x_max) {
  return seminorm_weighted(jet_fn(f), m, v, x_max);
}

// ---------------------------------------------------------------------------
// Growth fitting: log-scale upper envelope over s = log(1+x^2).
// ---------------------------------------------------------------------------

GrowthFit fit_growth(const std::vector<std::pair<double, double>>& samples,
                     int p_cap) {
  if (samples.size() < 8) {
    throw InsufficientSamples("growth fit needs at least 8 samples");
  }
  double abs_lo = std::numeric_limits<double>::infinity(), abs_hi = 0.0;
  for (const auto& [x, mag] : samples) {
    abs_lo = std::min(abs_lo, std::abs(x));
    abs_hi = std::max(abs_hi, std::abs(x));
  }
  if (!(abs_hi > 0.0) || abs_hi < 100.0 * abs_lo) {
    throw InsufficientSamples("growth fit needs samples spanning two decades of |x|");
  }

  struct Point {
    double s, y, x;
  };
  std::vector<Point> pts;
  pts.reserve(samples.size());
  double s_min = std::numeric_limits<double>::infinity(), s_max = 0.0;
  for (const auto& [x, mag] : samples) {
    Point p;
    p.s = std::log1p(x * x);
    p.y = std::log(std::max(std::abs(mag), 1e-300));
    p.x = x;
    s_min = std::min(s_min, p.s);
    s_max = std::max(s_max, p.s);
    pts.push_back(p);
  }
  if (!(s_max > s_min)) {
    throw InsufficientSamples("growth fit needs a nontrivial |x| range");
  }

  // Upper envelope: per-bin maxima of y over equal-width bins in s.
  constexpr int kBins = 8;
  std::array<Point, kBins> bin_max;
  std::array<bool, kBins> occupied{};
  for (const Point& p : pts) {
    int b = static_cast<int>((p.s - s_min) / (s_max - s_min) * kBins);
    b = std::clamp(b, 0, kBins - 1);
    if (!occupied[static_cast<std::size_t>(b)] ||
        p.y > bin_max[static_cast<std::size_t>(b)].y) {
      bin_max[static_cast<std::size_t>(b)] = p;
      occupied[static_cast<std::size_t>(b)] = true;
    }
  }
  std::vector<Point> env;
  for (int b = 0; b < kBins; ++b) {
    if (occupied[static_cast<std::size_t>(b)]) env.push_back(bin_max[static_cast<std::size_t>(b)]);
  }

  GrowthFit fit;
  fit.witness_x = env.back().x;

  // Envelope slopes between consecutive bins; the tail half estimates p.
  std::vector<double> slopes;
  for (std::size_t j = 0; j + 1 < env.size(); ++j) {
    const double ds = env[j + 1].s - env[j].s;
    if (ds > 1e-12) slopes.push_back((env[j + 1].y - env[j].y) / ds);
  }

  // Super-polynomial curvature: slopes climbing across the tail by more than
  // a full exponent mean no integer p can flatten the envelope.
  if (slopes.size() >= 3) {
    const std::size_t k = slopes.size();
    const double d1 = slopes[k - 1] - slopes[k - 2];
    const double d2 = slopes[k - 2] - slopes[k - 3];
    if (d1 > 0.0 && d2 > 0.0 && d1 + d2 > 1.0) {
      fit.fits = false;
      fit.exponent_p = p_cap;
      fit.residual = d1 + d2;
      return fit;
    }
  }

  double tail_slope = 0.0;
  if (!slopes.empty()) {
    const std::size_t from = slopes.size() / 2;
    for (std::size_t j = from; j < slopes.size(); ++j)
      tail_slope = std::max(tail_slope, slopes[j]);
  }

  // Smallest integer p that leaves the tail of y - p*s non-increasing.
  constexpr double kSlopeSlack = 0.05;
  constexpr double kTailSlack = 0.02;
  int p = std::max(0, static_cast<int>(std::ceil(tail_slope - kSlopeSlack)));
  for (; p <= p_cap; ++p) {
    double inner_peak = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < env.size(); ++j)
      inner_peak = std::max(inner_peak, env[j].y - p * env[j].s);
    const double last = env.back().y - p * env.back().s;
    const double excess = last - inner_peak;
    if (excess <= kTailSlack) {
      fit.fits = true;
      fit.residual = std::max(0.0, excess);
      break;
    }
  }
  if (p > p_cap) {
    fit.fits = false;
    fit.exponent_p = p_cap;
    fit.residual = std::numeric_limits<double>::infinity();
    return fit;
  }

  fit.exponent_p = p;
  double c = 0.0;
  double witness = 0.0;
  for (const Point& q : pts) {
    const double ratio = std::exp(q.y - p * q.s);
    if (ratio > c) {
      c = ratio;
      witness = q.x;
    }
  }
  fit.constant_c = c;
  fit.witness_x = witness;
  return fit;
}

std::vector<double> growth_sample_grid(double x_max, int uniform_points) {
  std::vector<double> xs;
  xs.push_back(0.0);
  const int log_points = 40;
  for (int k = 0; k <= log_points; ++k) {
    const double t = -2.5 + (std::log10(x_max) + 2.5) * k / log_points;
    const double x = std::pow(10.0, t);
    xs.push_back(x);
    xs.push_back(-x);
  }
  for (int k = 1; k < uniform_points; ++k) {
    const double x = -x_max + 2.0 * x_max * k / uniform_points;
    xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

Verdict membership_Om(const SymbolExpr& phi, int m, double x_max) {
  if (m < 0 || m > kMaxJetOrder) {
    throw PreconditionViolated("membership order must be in [0, 8]");
  }
  Verdict v;
  v.property = Property::kSymbolFor;
  v.space = SpaceTag::om(m);
  v.citation = "thcomp";

  const Family fam = recognize_family(phi);
  if (fam.exact()) {
    v.status = Status::kProvenTrue;
    v.provenance = Provenance::kExact;
    v.witnesses.push_back({"degree", static_cast<double>(fam.degree)});
    v.witnesses.push_back({"exponent_p", std::ceil(fam.degree / 2.0)});
    return v;
  }

  const std::vector<double> xs = growth_sample_grid(x_max);
  for (int i = 0; i <= m; ++i) {
    std::vector<std::pair<double, double>> samples;
    samples.reserve(xs.size());
    bool overflowed = false;
    double overflow_x = 0.0;
    for (double x : xs) {
      try {
        samples.emplace_back(x, std::abs(eval_jet(phi, x, m).derivative(i)));
      } catch (const OverflowError&) {
        overflowed = true;
        overflow_x = x;
        break;
      }
    }
    if (overflowed) {
      v.status = Status::kEmpiricalFalse;
      v.provenance = Provenance::kGrid;
      v.witnesses.push_back({"derivative_i", static_cast<double>(i)});
      v.witnesses.push_back({"overflow_x", overflow_x});
      return v;
    }
    const GrowthFit fit = fit_growth(samples);
    if (!fit.fits) {
      v.status = Status::kEmpiricalFalse;
      v.provenance = Provenance::kGrid;
      v.witnesses.push_back({"derivative_i", static_cast<double>(i)});
      v.witnesses.push_back({"witness_x", fit.witness_x});
      return v;
    }
    v.witnesses.push_back({"p_i" + std::to_string(i), static_cast<double>(fit.exponent_p)});
    v.witnesses.push_back({"C_i" + std::to_string(i), fit.constant_c});
  }
  v.status = Status::kEmpiricalTrue;
  v.provenance = Provenance::kGrid;
  return v;
}

std::vector<Verdict> membership_OM(const SymbolExpr& phi, int m_max, double x_max) {
  std::vector<Verdict> out;
  for (int m = 0; m <= m_max; ++m) {
    Verdict v = membership_Om(phi, m, x_max);
    v.citation = "chasymom";
    v.space = SpaceTag::oM();
    v.witnesses.insert(v.witnesses.begin(), {"order_m", static_cast<double>(m)});
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bump family. w(x) rises on [n, n+h], is 1 on the plateau, falls on
// [n+1-h, n+1], h = min(1/n, 1/2); f_n = w * n(1+x^2)^n.
// ---------------------------------------------------------------------------

namespace {

// Order-3 raw-derivative jet of sigma(t) = exp(-1/t) (0 for t <= 0).
std::array<double, 4> sigma_jet(double t) {
  if (t <= 0.0) return {0.0, 0.0, 0.0, 0.0};
  const double s = std::exp(-1.0 / t);
  const double t2 = t * t, t3 = t2 * t, t4 = t2 * t2;
  return {s, s / t2, s * (1.0 / t4 - 2.0 / t3),
          s * (1.0 / (t4 * t2) - 6.0 / (t4 * t) + 6.0 / t4)};
}

// Leibniz quotient q = u / v to order 3 (raw derivatives).
std::array<double, 4> jet_div(const std::array<double, 4>& u,
                              const std::array<double, 4>& v) {
  std::array<double, 4> q{};
  q[0] = u[0] / v[0];
  q[1] = (u[1] - q[0] * v[1]) / v[0];
  q[2] = (u[2] - q[0] * v[2] - 2.0 * q[1] * v[1]) / v[0];
  q[3] = (u[3] - q[0] * v[3] - 3.0 * q[1] * v[2] - 3.0 * q[2] * v[1]) / v[0];
  return q;
}

// Smooth step s(t) = sigma(t) / (sigma(t) + sigma(1-t)) with derivatives.
std::array<double, 4> step_jet(double t) {
  if (t <= 0.0) return {0.0, 0.0, 0.0, 0.0};
  if (t >= 1.0) return {1.0, 0.0, 0.0, 0.0};
  const auto a = sigma_jet(t);
  auto b = sigma_jet(1.0 - t);
  b[1] = -b[1];
  b[3] = -b[3];
  std::array<double, 4> denom{};
  for (int i = 0; i < 4; ++i) denom[static_cast<std::size_t>(i)] =
      a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
  return jet_div(a, denom);
}

double transition_width(int n) { return std::min(1.0 / n, 0.5); }

// w(x) and derivatives up to order 3.
std::array<double, 4> window_jet(int n, double x) {
  const double h = transition_width(n);
  const double lo = n, hi = n + 1.0;
  if (x <= lo || x >= hi) return {0.0, 0.0, 0.0, 0.0};
  if (x < lo + h) {
    auto s = step_jet((x - lo) / h);
    double scale = 1.0;
    for (int i = 1; i < 4; ++i) {
      scale /= h;
      s[static_cast<std::size_t>(i)] *= scale;
    }
    return s;
  }
  if (x > hi - h) {
    auto s = step_jet((hi - x) / h);
    double scale = 1.0;
    for (int i = 1; i < 4; ++i) {
      scale /= -h;
      s[static_cast<std::size_t>(i)] *= scale;
    }
    return s;
  }
  return {1.0, 0.0, 0.0, 0.0};
}

SymbolExpr plateau_expr(int n) {
  return parse(std::to_string(n) + "*(1+x^2)^" + std::to_string(n));
}

}  // namespace

Jet bump_jet(int n, double x, int m) {
  if (n < 1) throw PreconditionViolated("bump index must be >= 1");
  if (m < 0 || m > 3) {
    throw PreconditionViolated("bump derivatives are coded up to order 3");
  }
  const auto w = window_jet(n, x);
  if (w[0] == 0.0 && w[1] == 0.0 && w[2] == 0.0 && w[3] == 0.0) {
    return Jet(x, std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
  }
  const Jet p = eval_jet(plateau_expr(n), x, m);
  // Leibniz product (w * p)^(i) = sum C(i,k) w^(k) p^(i-k).
  static const double kBinom[4][4] = {
      {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  std::vector<double> coeffs(static_cast<std::size_t>(m) + 1, 0.0);
  for (int i = 0; i <= m; ++i) {
    double sum = 0.0;
    for (int k = 0; k <= i; ++k) {
      sum += kBinom[i][k] * w[static_cast<std::size_t>(k)] * p.derivative(i - k);
    }
    coeffs[static_cast<std::size_t>(i)] = sum;
  }
  return Jet(x, std::move(coeffs));
}

double bump_value(int n, double x) { return bump_jet(n, x, 0).value(); }

JetFn bump_fn(int n) {
  return [n](double x, int m) { return bump_jet(n, x, m); };
}

}  // namespace copdyn
