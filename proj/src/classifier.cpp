#include "copdyn/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "copdyn/polyroot.hpp"

namespace copdyn {
namespace {

constexpr double kAttractingMargin = 1e-9;

// ---------------------------------------------------------------------------
// Shared obstruction analysis: certified facts (exact provenance) vs grid
// observations. A fixed point is certified by a bracketed sign change of
// φ - x (bisected to residual) or by exact polynomial root isolation; a zero
// of φ' likewise.
// ---------------------------------------------------------------------------

struct Analysis {
  Family family;
  bool identity = false;

  std::vector<FixedPoint> certified_fixed_points;
  std::optional<double> derivative_zero;
  bool exact_fixed_point_free = false;
  bool exact_derivative_positive = false;

  FixedPointScan scan;
  MonotonicityResult mono;
  double derivative_min = std::numeric_limits<double>::infinity();
  bool grid_fixed_point_free = false;
  std::optional<std::pair<double, double>> not_increasing_witness;
};

FixedPoint certify_poly_root(const SymbolExpr& phi, const std::vector<double>& g,
                             double root) {
  // Newton polish on g = φ - x for the residual bound.
  const auto dg = polyroot::derivative(g);
  for (int it = 0; it < 8; ++it) {
    const double v = polyroot::eval(g, root);
    const double d = polyroot::eval(dg, root);
    if (d == 0.0) break;
    const double next = root - v / d;
    if (!std::isfinite(next)) break;
    root = next;
  }
  FixedPoint fp;
  fp.location = root;
  fp.residual = std::abs(phi(root) - root);
  fp.derivative = eval_jet(phi, root, 1).derivative(1);
  const double mag = std::abs(fp.derivative);
  if (mag <= kAttractingMargin) {
    fp.stability = FixedPoint::Stability::kSuperAttracting;
  } else if (std::abs(mag - 1.0) <= kAttractingMargin) {
    fp.stability = FixedPoint::Stability::kNeutral;
  } else {
    fp.stability = mag < 1.0 ? FixedPoint::Stability::kAttracting
                             : FixedPoint::Stability::kRepelling;
  }
  return fp;
}

Analysis analyze(const SymbolExpr& phi, const ClassifierConfig& config) {
  Analysis a;
  a.family = recognize_family(phi);
  a.identity = a.family.is_affine() && a.family.a == 1.0 && a.family.b == 0.0;
  if (a.family.is_general()) a.identity = acts_as_identity(phi);

  if (a.family.exact() && !a.identity) {
    std::vector<double> g = a.family.coeffs;
    if (g.size() < 2) g.resize(2, 0.0);
    g[1] -= 1.0;
    for (double root : polyroot::real_roots(g)) {
      FixedPoint fp = certify_poly_root(phi, g, root);
      if (fp.residual <= 1e-9 * (1.0 + std::abs(fp.location))) {
        a.certified_fixed_points.push_back(fp);
      }
    }
    a.exact_fixed_point_free = a.certified_fixed_points.empty() &&
                               polyroot::degree(polyroot::trimmed(g)) >= 0 &&
                               !(g.size() == 1 && g[0] == 0.0);
    if (polyroot::degree(polyroot::trimmed(g)) == 0 && polyroot::trimmed(g)[0] == 0.0) {
      a.exact_fixed_point_free = false;  // zero polynomial: identity
    }

    const auto dphi = differentiate_polynomial(a.family.coeffs);
    const auto droots = polyroot::real_roots(dphi);
    if (!droots.empty()) {
      a.derivative_zero = droots.front();
    } else if (polyroot::degree(polyroot::trimmed(dphi)) == 0 &&
               polyroot::trimmed(dphi)[0] == 0.0) {
      a.derivative_zero = 0.0;  // constant symbol: φ' vanishes identically
    }
    a.exact_derivative_positive = polyroot::positive_everywhere(dphi);
    a.mono = MonotonicityResult{};
    if (a.exact_derivative_positive) {
      a.mono.kind = Monotonicity::kIncreasing;
    } else {
      std::vector<double> neg = dphi;
      for (double& c : neg) c = -c;
      if (polyroot::positive_everywhere(neg)) {
        a.mono.kind = Monotonicity::kDecreasing;
      } else if (polyroot::nonnegative_everywhere(dphi)) {
        a.mono.kind = Monotonicity::kInconclusive;  // nondecreasing, flat spot
        if (a.derivative_zero) a.mono.witness_a = a.mono.witness_b = *a.derivative_zero;
      } else if (polyroot::nonnegative_everywhere(neg)) {
        a.mono.kind = Monotonicity::kInconclusive;
        if (a.derivative_zero) a.mono.witness_a = a.mono.witness_b = *a.derivative_zero;
      } else {
        a.mono.kind = Monotonicity::kNonMonotone;
        if (a.derivative_zero) a.mono.witness_a = a.mono.witness_b = *a.derivative_zero;
      }
    }
    a.grid_fixed_point_free = a.exact_fixed_point_free;
    for (const FixedPoint& fp : a.certified_fixed_points) {
      a.scan.points.push_back(fp);
    }
    if (!droots.empty() || a.family.a < 0.0) {
      // derivative_min only meaningful as a sign summary here
      a.derivative_min = a.exact_derivative_positive ? 1.0 : -1.0;
    } else {
      a.derivative_min = a.exact_derivative_positive ? 1.0 : 0.0;
    }
    return a;
  }

  // General symbols: grid scan + bisection certificates.
  a.scan = find_fixed_points_default(phi);
  for (const FixedPoint& fp : a.scan.points) {
    if (!fp.tangential) a.certified_fixed_points.push_back(fp);
  }
  a.grid_fixed_point_free = a.scan.points.empty() && !a.scan.possible_root_below &&
                            !a.scan.possible_root_above;
  a.mono = monotonicity(phi, -kDefaultScanHalfWidth, kDefaultScanHalfWidth, 4096);

  const int resolution = 4096;
  const double lo = -kDefaultScanHalfWidth, hi = kDefaultScanHalfWidth;
  const double step = (hi - lo) / (resolution - 1);
  double prev_x = lo;
  double prev_d = eval_jet(phi, lo, 1).derivative(1);
  double prev_v = phi(lo);
  a.derivative_min = prev_d;
  for (int i = 1; i < resolution; ++i) {
    const double x = lo + step * i;
    const double d = eval_jet(phi, x, 1).derivative(1);
    const double v = phi(x);
    a.derivative_min = std::min(a.derivative_min, d);
    if (!a.not_increasing_witness && v <= prev_v) {
      a.not_increasing_witness = std::make_pair(prev_x, x);
    }
    if (!a.derivative_zero && ((prev_d < 0.0) != (d < 0.0)) && prev_d != 0.0 && d != 0.0) {
      // Bisect φ' to certify the zero.
      double za = prev_x, zb = x, ga = prev_d;
      for (int it = 0; it < 120 && zb - za > 1e-14 * (1.0 + std::abs(za)); ++it) {
        const double mid = 0.5 * (za + zb);
        const double gm = eval_jet(phi, mid, 1).derivative(1);
        if (gm == 0.0) {
          za = zb = mid;
          break;
        }
        if ((ga < 0.0) != (gm < 0.0)) {
          zb = mid;
        } else {
          za = mid;
          ga = gm;
        }
      }
      a.derivative_zero = 0.5 * (za + zb);
    }
    prev_x = x;
    prev_d = d;
    prev_v = v;
  }
  return a;
}

Verdict make_verdict(Property prop, Status status, std::string citation,
                     Provenance prov) {
  Verdict v;
  v.property = prop;
  v.status = status;
  v.citation = std::move(citation);
  v.provenance = prov;
  return v;
}

std::string space_note(const SpaceTag& space) { return "space=" + space.to_string(); }

}  // namespace

// ---------------------------------------------------------------------------
// Theorem table for polynomial symbols.
// ---------------------------------------------------------------------------

std::vector<Verdict> classify_polynomial(const Family& family, const SpaceTag& space) {
  if (!family.exact()) {
    throw PreconditionViolated("classify_polynomial needs a recognized family");
  }
  if (space.kind == SpaceTag::Kind::kSchwartz) {
    throw PreconditionViolated(
        "the polynomial table does not cover the rapidly-decreasing space");
  }

  Verdict pb = make_verdict(Property::kPowerBounded, Status::kProvenFalse, "E.PB",
                            Provenance::kExact);
  Verdict me = make_verdict(Property::kMeanErgodic, Status::kProvenFalse, "E.PB",
                            Provenance::kExact);
  pb.note = space_note(space);
  me.note = space_note(space);

  if (family.is_affine()) {
    const double a = family.a, b = family.b;
    pb.witnesses.push_back({"a", a});
    pb.witnesses.push_back({"b", b});
    if (std::abs(a) < 1.0) {
      pb.status = me.status = Status::kProvenTrue;
      const double limit = b / (1.0 - a);
      pb.witnesses.push_back({"iterate_limit", limit});
      pb.note += "; iterates converge to the constant " + std::to_string(limit);
      if (a == 0.0) pb.note += "; C_phi is the evaluation at b";
    } else if (a == -1.0) {
      pb.status = me.status = Status::kProvenTrue;
      pb.witnesses.push_back({"fixed_point", b / 2.0});
      pb.note += "; a = -1 gives an involution, phi_2 = identity, so C_phi squares "
                 "to the identity (the theorem's printed phi_2 = phi holds only "
                 "for b = 0)";
    } else if (a == 1.0 && b == 0.0) {
      pb.status = me.status = Status::kProvenTrue;
      pb.note += "; identity symbol";
    } else if (a == 1.0) {
      pb.status = me.status = Status::kProvenFalse;
      pb.witnesses.push_back({"phi_n_at_0_per_n", b});
      pb.note += "; phi_n(0) = n*b diverges";
      me.witnesses = pb.witnesses;
    } else {  // |a| > 1
      const double n0 = std::ceil((1.0 + std::abs(b)) / (std::abs(a) - 1.0)) + 1.0;
      pb.witnesses.push_back({"escape_base_n0", n0});
      pb.note += "; |phi_n(n0)| >= n0 + n";
      me.witnesses = pb.witnesses;
    }
    audit_verdict(pb);
    audit_verdict(me);
    return {pb, me};
  }

  // Degree >= 2: |φ(x)| > |x| + 1 beyond a computable base point.
  double coeff_sum = 0.0;
  for (double c : family.coeffs) coeff_sum += std::abs(c);
  const double lead = std::abs(family.coeffs.back());
  const double n0 = std::ceil((coeff_sum + 2.0) / lead) + 1.0;
  pb.witnesses.push_back({"degree", static_cast<double>(family.degree)});
  pb.witnesses.push_back({"escape_base_n0", n0});
  pb.note += "; degree >= 2 forces |phi_n(n0)| >= n0 + n";
  me.witnesses = pb.witnesses;
  audit_verdict(pb);
  audit_verdict(me);
  return {pb, me};
}

// ---------------------------------------------------------------------------
// Weak supercyclicity obstructions.
// ---------------------------------------------------------------------------

std::vector<Verdict> supercyclicity_obstructions(const SymbolExpr& phi,
                                                 const SpaceTag& space,
                                                 const ClassifierConfig& config) {
  const Analysis a = analyze(phi, config);
  Verdict ws = make_verdict(Property::kWeaklySupercyclic, Status::kInconclusive,
                            "wsimpmix", Provenance::kGrid);
  ws.note = space_note(space);

  if (!space.embeds_in_c1()) {
    // Continuous case: supercyclicity needs an increasing symbol without
    // fixed points.
    ws.citation = "Psuper";
    if (a.identity) {
      ws.status = Status::kProvenFalse;
      ws.provenance = Provenance::kExact;
      ws.note += "; identity symbol has fixed points everywhere";
      audit_verdict(ws);
      return {ws};
    }
    if (!a.certified_fixed_points.empty()) {
      const FixedPoint& fp = a.certified_fixed_points.front();
      ws.status = Status::kProvenFalse;
      ws.provenance = Provenance::kExact;
      ws.witnesses.push_back({"fixed_point", fp.location});
      audit_verdict(ws);
      return {ws};
    }
    if (a.not_increasing_witness) {
      ws.status = Status::kProvenFalse;
      ws.provenance = Provenance::kExact;
      ws.witnesses.push_back({"not_increasing_x1", a.not_increasing_witness->first});
      ws.witnesses.push_back({"not_increasing_x2", a.not_increasing_witness->second});
      ws.note += "; phi(x1) >= phi(x2) with x1 < x2 witnesses non-injectivity "
                 "or decrease";
      audit_verdict(ws);
      return {ws};
    }
    if (a.family.exact() && (a.mono.kind == Monotonicity::kDecreasing ||
                             a.mono.kind == Monotonicity::kNonMonotone)) {
      ws.status = Status::kProvenFalse;
      ws.provenance = Provenance::kExact;
      ws.note += "; polynomial derivative changes sign or is negative";
      audit_verdict(ws);
      return {ws};
    }
    if (a.mono.kind == Monotonicity::kIncreasing && a.grid_fixed_point_free) {
      ws.status = Status::kEmpiricalTrue;
      ws.witnesses.push_back({"increasing", 1.0});
      ws.witnesses.push_back({"fixed_point_free_on_scan", 1.0});
      ws.note += "; necessary profile holds on the scan";
    }
    audit_verdict(ws);
    return {ws};
  }

  // Spaces inside C^1: a fixed point or a vanishing derivative kills weak
  // supercyclicity.
  if (a.identity) {
    ws.citation = "nwsup";
    ws.status = Status::kProvenFalse;
    ws.provenance = Provenance::kExact;
    ws.note += "; identity symbol has fixed points everywhere";
    audit_verdict(ws);
    return {ws};
  }
  if (!a.certified_fixed_points.empty() || a.derivative_zero) {
    ws.citation = "nwsup";
    ws.status = Status::kProvenFalse;
    ws.provenance = Provenance::kExact;
    if (!a.certified_fixed_points.empty()) {
      const FixedPoint& fp = a.certified_fixed_points.front();
      ws.witnesses.push_back({"fixed_point", fp.location});
      ws.witnesses.push_back({"fixed_point_derivative", fp.derivative});
    }
    if (a.derivative_zero) {
      ws.witnesses.push_back({"derivative_zero_at", *a.derivative_zero});
    }
    audit_verdict(ws);
    return {ws};
  }

  const bool exact_profile = a.family.exact() && a.exact_fixed_point_free &&
                             a.exact_derivative_positive;
  const bool grid_profile = a.mono.kind == Monotonicity::kIncreasing &&
                            a.grid_fixed_point_free && a.derivative_min > 0.0;
  if (exact_profile || grid_profile) {
    ws.status = Status::kEmpiricalTrue;
    ws.witnesses.push_back({"increasing", 1.0});
    ws.witnesses.push_back({"fixed_point_free", 1.0});
    ws.witnesses.push_back({"derivative_min", a.family.exact() ? a.family.a
                                                               : a.derivative_min});
    ws.note += "; necessary profile (increasing, no fixed point, phi' > 0) holds"
               "; candidate for the runaway/mixing route";
  } else {
    ws.note += "; profile not established";
  }
  audit_verdict(ws);
  return {ws};
}

// ---------------------------------------------------------------------------
// Mixing.
// ---------------------------------------------------------------------------

Verdict mixing_classification(const SymbolExpr& phi, const SpaceTag& space,
                              const ClassifierConfig& config) {
  using Kind = SpaceTag::Kind;
  if (space.kind == Kind::kSchwartz) {
    throw PreconditionViolated(
        "mixing rules cover C^m, C^0, the analytic space, and the weighted spaces");
  }
  const Analysis a = analyze(phi, config);

  std::string citation;
  switch (space.kind) {
    case Kind::kCm:
      citation = space.m == 0 ? "BDK.iii" : "BDK.ii";
      break;
    case Kind::kAnalytic:
      citation = "BDK.i";
      break;
    default:
      citation = "translation.mixing";
      break;
  }
  Verdict v = make_verdict(Property::kMixing, Status::kInconclusive, citation,
                           Provenance::kGrid);
  v.note = space_note(space);

  const bool weighted = space.kind == Kind::kOm || space.kind == Kind::kOM;

  // Certified obstructions first (they refute weak supercyclicity, hence
  // mixing, on every covered space).
  if (a.identity || !a.certified_fixed_points.empty() ||
      (space.embeds_in_c1() && a.derivative_zero) ||
      (!space.embeds_in_c1() && a.not_increasing_witness)) {
    v.status = Status::kProvenFalse;
    v.provenance = Provenance::kExact;
    if (weighted || space.embeds_in_c1()) {
      v.citation = weighted ? "nwsup" : citation;
    }
    if (a.identity) {
      v.note += "; identity symbol";
    } else if (!a.certified_fixed_points.empty()) {
      v.witnesses.push_back({"fixed_point", a.certified_fixed_points.front().location});
    } else if (a.derivative_zero) {
      v.witnesses.push_back({"derivative_zero_at", *a.derivative_zero});
    } else if (a.not_increasing_witness) {
      v.witnesses.push_back({"not_increasing_x1", a.not_increasing_witness->first});
      v.witnesses.push_back({"not_increasing_x2", a.not_increasing_witness->second});
    }
    audit_verdict(v);
    return v;
  }

  const bool translation = a.family.is_affine() && a.family.a == 1.0 && a.family.b != 0.0;

  if (weighted) {
    // Only translations are settled; the general runaway case is open.
    if (translation) {
      v.status = Status::kProvenTrue;
      v.provenance = Provenance::kExact;
      v.citation = "translation.mixing";
      v.witnesses.push_back({"shift_d", a.family.b});
    } else {
      v.status = Status::kInconclusive;
      v.note += "; mixing for general runaway symbols on the weighted spaces is open";
    }
    audit_verdict(v);
    return v;
  }

  const bool exact_profile = a.family.exact() && a.exact_fixed_point_free &&
                             (space.embeds_in_c1() ? a.exact_derivative_positive
                                                   : a.mono.kind == Monotonicity::kIncreasing);
  const bool grid_profile = a.mono.kind == Monotonicity::kIncreasing &&
                            a.grid_fixed_point_free &&
                            (!space.embeds_in_c1() || a.derivative_min > 0.0);
  if (exact_profile) {
    v.status = Status::kProvenTrue;
    v.provenance = Provenance::kExact;
    v.note += "; increasing without fixed points, hence strongly runaway";
  } else if (grid_profile) {
    v.status = Status::kEmpiricalTrue;
    v.note += "; runaway profile holds on the scan";
  } else {
    v.note += "; no certified obstruction and no certified runaway profile";
  }
  audit_verdict(v);
  return v;
}

// ---------------------------------------------------------------------------
// Mean ergodicity: necessary conditions on a compact.
// ---------------------------------------------------------------------------

namespace {

// Exact expanding-tail obstruction for recognized families: φ nondecreasing
// beyond β with φ(x) - x of one sign and bounded away from zero.
struct TailObstruction {
  double beta;
  double delta;
  bool right;  // right tail (x >= β) or mirrored left tail
};

std::optional<TailObstruction> poly_tail_obstruction(const Family& family) {
  std::vector<double> g = family.coeffs;
  if (g.size() < 2) g.resize(2, 0.0);
  g[1] -= 1.0;
  g = polyroot::trimmed(g);
  if (polyroot::degree(g) == 0 && g[0] == 0.0) return std::nullopt;  // identity
  const auto d = polyroot::trimmed(differentiate_polynomial(family.coeffs));

  auto outermost = [](const std::vector<double>& p) {
    double r = 0.0;
    for (double root : polyroot::real_roots(p)) r = std::max(r, std::abs(root));
    return r;
  };
  const double beta = 1.0 + std::max(outermost(g), outermost(d));

  // Right tail: φ(x) > x and φ' >= 0 for all x >= β.
  if (polyroot::eval(g, beta) > 0.0 && polyroot::eval(d, beta) >= 0.0 &&
      polyroot::eval(d, beta + 1.0) >= 0.0) {
    return TailObstruction{beta, polyroot::eval(g, beta), true};
  }
  // Left tail: φ(x) < x and φ' >= 0 for all x <= -β.
  if (polyroot::eval(g, -beta) < 0.0 && polyroot::eval(d, -beta) >= 0.0 &&
      polyroot::eval(d, -beta - 1.0) >= 0.0) {
    return TailObstruction{-beta, -polyroot::eval(g, -beta), false};
  }
  return std::nullopt;
}

// Grid version on the default window.
std::optional<TailObstruction> grid_tail_obstruction(const SymbolExpr& phi) {
  const double hi = kDefaultScanHalfWidth;
  const double beta = 0.75 * hi;
  constexpr int kPts = 257;
  double delta_right = std::numeric_limits<double>::infinity();
  double delta_left = std::numeric_limits<double>::infinity();
  bool right_ok = true, left_ok = true;
  for (int i = 0; i < kPts; ++i) {
    const double xr = beta + (hi - beta) * i / (kPts - 1);
    const double xl = -xr;
    try {
      if (eval_jet(phi, xr, 1).derivative(1) < 0.0) right_ok = false;
      delta_right = std::min(delta_right, phi(xr) - xr);
      if (eval_jet(phi, xl, 1).derivative(1) < 0.0) left_ok = false;
      delta_left = std::min(delta_left, xl - phi(xl));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (right_ok && delta_right > 1e-6) return TailObstruction{beta, delta_right, true};
  if (left_ok && delta_left > 1e-6) return TailObstruction{-beta, delta_left, false};
  return std::nullopt;
}

}  // namespace

std::vector<Verdict> mean_ergodic_necessary(const SymbolExpr& phi,
                                            const SpaceTag& space, int n_max,
                                            double k_lo, double k_hi,
                                            const ClassifierConfig& config) {
  if (n_max < 10) throw PreconditionViolated("mean-ergodic probe needs n_max >= 10");
  const Analysis a = analyze(phi, config);

  Verdict v = make_verdict(Property::kMeanErgodic, Status::kEmpiricalTrue, "P.ME0",
                           Provenance::kGrid);
  v.note = space_note(space);

  // (c) Expanding monotone tail (exact for recognized families).
  if (a.family.exact() && !a.identity) {
    if (auto tail = poly_tail_obstruction(a.family)) {
      v.status = Status::kProvenFalse;
      v.provenance = Provenance::kExact;
      v.citation = "P.ME1";
      v.witnesses.push_back({"beta", tail->beta});
      v.witnesses.push_back({"delta", tail->delta});
      v.note += tail->right ? "; phi(x) > x + delta beyond beta"
                            : "; phi(x) < x - delta below beta";
      audit_verdict(v);
      return {v};
    }
  } else if (!a.identity) {
    if (auto tail = grid_tail_obstruction(phi)) {
      v.status = Status::kEmpiricalFalse;
      v.citation = "P.ME1";
      v.witnesses.push_back({"beta", tail->beta});
      v.witnesses.push_back({"delta", tail->delta});
      v.note += "; expanding monotone tail on the scan window";
      audit_verdict(v);
      return {v};
    }
  }

  // (d) Non-decreasing symbols need a single fixed point.
  const bool nondecreasing =
      a.mono.kind == Monotonicity::kIncreasing ||
      (a.family.exact() &&
       polyroot::nonnegative_everywhere(differentiate_polynomial(a.family.coeffs)));
  if (!a.identity && nondecreasing && a.certified_fixed_points.size() >= 2) {
    v.status = a.family.exact() ? Status::kProvenFalse : Status::kEmpiricalFalse;
    v.provenance = a.family.exact() ? Provenance::kExact : Provenance::kGrid;
    v.citation = "C.ME";
    v.witnesses.push_back({"fixed_point_count",
                           static_cast<double>(a.certified_fixed_points.size())});
    v.witnesses.push_back({"fixed_point_1", a.certified_fixed_points[0].location});
    v.witnesses.push_back({"fixed_point_2", a.certified_fixed_points[1].location});
    v.note += "; Fix(phi) is not a single point";
    audit_verdict(v);
    return {v};
  }

  // (a)+(b) Orbit and Cesàro trends on the compact.
  constexpr int kGridPts = 41;
  std::vector<double> xs(kGridPts), orbit(kGridPts), cesaro(kGridPts);
  for (int i = 0; i < kGridPts; ++i) {
    xs[static_cast<std::size_t>(i)] = k_lo + (k_hi - k_lo) * i / (kGridPts - 1);
    orbit[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>(i)];
    cesaro[static_cast<std::size_t>(i)] = 0.0;
  }
  const int n2 = n_max / 2, n4 = n_max / 4;
  double sup_half = 0.0, sup_full = 0.0;
  std::vector<double> cesaro_q(kGridPts, 0.0), cesaro_h(kGridPts, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    double sup = 0.0;
    for (int i = 0; i < kGridPts; ++i) {
      try {
        orbit[static_cast<std::size_t>(i)] = phi(orbit[static_cast<std::size_t>(i)]);
      } catch (const OverflowError&) {
        v.status = Status::kEmpiricalFalse;
        v.citation = "P.ME0";
        v.witnesses.push_back({"overflow_x", xs[static_cast<std::size_t>(i)]});
        v.witnesses.push_back({"overflow_n", static_cast<double>(n)});
        v.note += "; orbit overflow on the compact";
        audit_verdict(v);
        return {v};
      }
      cesaro[static_cast<std::size_t>(i)] += orbit[static_cast<std::size_t>(i)];
      sup = std::max(sup, std::abs(orbit[static_cast<std::size_t>(i)]) / n);
    }
    if (n == n4) {
      for (int i = 0; i < kGridPts; ++i)
        cesaro_q[static_cast<std::size_t>(i)] = cesaro[static_cast<std::size_t>(i)] / n;
    }
    if (n == n2) {
      sup_half = sup;
      for (int i = 0; i < kGridPts; ++i)
        cesaro_h[static_cast<std::size_t>(i)] = cesaro[static_cast<std::size_t>(i)] / n;
    }
    if (n == n_max) sup_full = sup;
  }
  double dev_recent = 0.0, dev_old = 0.0;
  for (int i = 0; i < kGridPts; ++i) {
    const double c_full = cesaro[static_cast<std::size_t>(i)] / n_max;
    dev_recent = std::max(dev_recent,
                          std::abs(c_full - cesaro_h[static_cast<std::size_t>(i)]));
    dev_old = std::max(dev_old, std::abs(cesaro_h[static_cast<std::size_t>(i)] -
                                         cesaro_q[static_cast<std::size_t>(i)]));
  }

  const bool orbits_vanish = sup_full <= std::max(1e-9, 0.75 * sup_half);
  const bool cesaro_cauchy = dev_recent <= std::max(1e-9, 0.8 * dev_old);
  v.witnesses.push_back({"sup_phin_over_n", sup_full});
  v.witnesses.push_back({"cesaro_dev", dev_recent});
  if (!orbits_vanish || !cesaro_cauchy) {
    v.status = Status::kEmpiricalFalse;
    v.note += !orbits_vanish ? "; phi_n/n does not trend to 0 on K"
                             : "; Cesaro means not Cauchy on K";
  } else {
    v.status = Status::kEmpiricalTrue;
    v.note += "; phi_n/n -> 0 and Cesaro means Cauchy on K (necessary only)";
  }
  audit_verdict(v);
  return {v};
}

// ---------------------------------------------------------------------------
// Iterate boundedness (empirical power-boundedness battery).
// ---------------------------------------------------------------------------

Verdict power_bounded_empirical(const SymbolExpr& phi, int m, int n_max,
                                const ClassifierConfig& config) {
  if (m < 0 || m > kMaxJetOrder) {
    throw PreconditionViolated("power_bounded_empirical needs 0 <= m <= 8");
  }
  Verdict v = make_verdict(Property::kPowerBounded, Status::kEmpiricalTrue,
                           "T.PowerBm", Provenance::kGrid);

  std::vector<double> xs = growth_sample_grid(config.growth_window);
  xs.push_back(1.0);
  xs.push_back(-1.0);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // mags[i] holds (x, |phi_n^(i)(x)|) pooled over n; series[x][i][n] the
  // per-point trajectories for the growth-in-n test.
  std::vector<std::vector<std::pair<double, double>>> pooled(
      static_cast<std::size_t>(m) + 1);
  std::vector<std::vector<std::vector<double>>> series(
      xs.size(), std::vector<std::vector<double>>(static_cast<std::size_t>(m) + 1));

  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    const double x = xs[xi];
    Jet jn = identity_jet(x, m);
    for (int n = 1; n <= n_max; ++n) {
      try {
        jn = compose(eval_jet(phi, jn.value(), m), jn);
      } catch (const OverflowError&) {
        v.status = Status::kEmpiricalFalse;
        v.witnesses.push_back({"overflow_x", x});
        v.witnesses.push_back({"overflow_n", static_cast<double>(n)});
        v.note = "iterate jets exceeded the overflow guard";
        audit_verdict(v);
        return v;
      }
      for (int i = 0; i <= m; ++i) {
        const double mag = std::abs(jn.derivative(i));
        pooled[static_cast<std::size_t>(i)].emplace_back(x, mag);
        series[xi][static_cast<std::size_t>(i)].push_back(mag);
      }
    }
  }

  // Growth in n at fixed x: the magnitude keeps climbing through the tail.
  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    for (int i = 0; i <= m; ++i) {
      const auto& g = series[xi][static_cast<std::size_t>(i)];
      if (g.size() < 8) continue;
      const std::size_t half = g.size() / 2;
      double max_half = 0.0, max_all = 0.0;
      for (std::size_t n = 0; n < g.size(); ++n) {
        max_all = std::max(max_all, g[n]);
        if (n < half) max_half = std::max(max_half, g[n]);
      }
      const double last = g.back();
      const bool still_max = last >= max_all * (1.0 - 1e-12);
      const bool grew = last - max_half > 0.05 * (1.0 + max_half);
      if (still_max && grew) {
        v.status = Status::kEmpiricalFalse;
        v.witnesses.push_back({"growth_x", xs[xi]});
        v.witnesses.push_back({"growth_i", static_cast<double>(i)});
        v.witnesses.push_back({"growth_n", static_cast<double>(g.size())});
        v.witnesses.push_back({"magnitude", last});
        v.note = "magnitudes grow in n at fixed x";
        audit_verdict(v);
        return v;
      }
    }
  }

  // Pooled growth fit per derivative order.
  for (int i = 0; i <= m; ++i) {
    const GrowthFit fit = fit_growth(pooled[static_cast<std::size_t>(i)]);
    if (!fit.fits) {
      v.status = Status::kEmpiricalFalse;
      v.witnesses.push_back({"violated_i", static_cast<double>(i)});
      v.witnesses.push_back({"witness_x", fit.witness_x});
      v.note = "pooled growth fit violated";
      audit_verdict(v);
      return v;
    }
    v.witnesses.push_back({"p_i" + std::to_string(i), static_cast<double>(fit.exponent_p)});
    v.witnesses.push_back({"C_i" + std::to_string(i), fit.constant_c});
  }
  v.note = "single (C, p) fits all iterates per derivative order";
  audit_verdict(v);
  return v;
}

// ---------------------------------------------------------------------------
// Monotone power-bounded analysis.
// ---------------------------------------------------------------------------

Verdict monotone_pb_analysis(const SymbolExpr& phi, const SpaceTag& space,
                             const ClassifierConfig& config) {
  const Analysis a = analyze(phi, config);

  if (a.family.is_affine()) {
    auto table = classify_polynomial(a.family, space);
    return table.front();
  }

  if (a.mono.kind == Monotonicity::kNonMonotone ||
      a.mono.kind == Monotonicity::kInconclusive) {
    throw PreconditionViolated("monotone_pb_analysis needs a monotone symbol");
  }

  Verdict v = make_verdict(Property::kPowerBounded, Status::kInconclusive,
                           "onefixed", Provenance::kGrid);
  v.note = space_note(space);

  SymbolExpr psi = phi;
  bool reduced = false;
  if (a.mono.kind == Monotonicity::kDecreasing) {
    psi = compose(phi, phi);
    reduced = true;
    if (acts_as_identity(psi)) {
      throw PreconditionViolated("phi_2 is the identity (trivial involution)");
    }
    v.note += "; decreasing symbol, reduced to phi_2";
  }

  const Analysis ap = reduced ? analyze(psi, config) : a;

  if (ap.certified_fixed_points.empty()) {
    if (!ap.grid_fixed_point_free) {
      v.status = Status::kInconclusive;
      v.note += "; fixed-point scan inconclusive (tangential dip or window edge)";
      audit_verdict(v);
      return v;
    }
    if (a.family.exact()) {
      v.status = Status::kProvenFalse;
      v.provenance = Provenance::kExact;
      v.note += "; no fixed point, hence runaway iterates";
    } else {
      v.status = Status::kEmpiricalFalse;
      v.note += "; no fixed point on the scan window [-1e3, 1e3]";
    }
    audit_verdict(v);
    return v;
  }

  if (ap.certified_fixed_points.size() >= 2) {
    v.status = a.family.exact() ? Status::kProvenFalse : Status::kEmpiricalFalse;
    v.provenance = a.family.exact() ? Provenance::kExact : Provenance::kGrid;
    v.citation = "C.ME";
    v.witnesses.push_back({"fixed_point_count",
                           static_cast<double>(ap.certified_fixed_points.size())});
    v.note += "; several fixed points preclude mean ergodicity, hence power "
              "boundedness on the Montel spaces";
    audit_verdict(v);
    return v;
  }

  const FixedPoint& fp = ap.certified_fixed_points.front();
  v.witnesses.push_back({"fixed_point", fp.location});
  v.witnesses.push_back({"derivative_at_fixed_point", fp.derivative});
  const double mag = std::abs(fp.derivative);

  if (mag > 1.0 + kAttractingMargin) {
    v.status = Status::kProvenFalse;
    v.provenance = Provenance::kExact;
    v.note += "; the unique candidate fixed point is repelling";
    audit_verdict(v);
    return v;
  }
  if (mag >= 1.0 - kAttractingMargin) {
    v.status = Status::kInconclusive;
    v.note += "; neutral fixed point, derivative test inconclusive";
    audit_verdict(v);
    return v;
  }

  // Attracting candidate: orbit probes from 8 seeds around it.
  const double spread = 1.0 + std::abs(fp.location);
  int converged = 0;
  for (int s = 0; s < 8; ++s) {
    const double offset = (s % 2 == 0 ? 1.0 : -1.0) * spread * (0.05 + 0.3 * (s / 2));
    OrbitRecord orbit = iterate_point(psi, fp.location + offset, 512);
    if (orbit.converged() &&
        std::abs(orbit.limit - fp.location) <= 1e-6 * (1.0 + std::abs(fp.location))) {
      ++converged;
    }
  }
  if (converged == 8) {
    v.status = Status::kEmpiricalTrue;
    v.witnesses.push_back({"iterate_limit", fp.location});
    v.note += "; attracting fixed point with confirming orbit probes; "
              "confirmation delegated to the iterate battery and the "
              "convergence probe";
  } else {
    v.status = Status::kInconclusive;
    v.witnesses.push_back({"orbit_probes_converged", static_cast<double>(converged)});
    v.note += "; orbit probes did not all confirm attraction";
  }
  audit_verdict(v);
  return v;
}

// ---------------------------------------------------------------------------
// Schwartz-space symbol and power-boundedness conditions.
// ---------------------------------------------------------------------------

namespace {

// Smallest integer p <= cap making the log-scale upper envelope of
// mag / base^p flat toward large |x|; ordering by |x|, bound base given.
struct BoundFitResult {
  bool fits = false;
  int p = 0;
  double constant_c = 0.0;
  double witness_x = 0.0;
};

BoundFitResult fit_bound(const std::vector<double>& order_abs,
                         const std::vector<double>& bases,
                         const std::vector<double>& mags, int p_cap) {
  BoundFitResult out;
  const std::size_t n = order_abs.size();
  if (n < 8) return out;
  double s_min = std::numeric_limits<double>::infinity(), s_max = 0.0;
  std::vector<double> s(n), yb(n), ym(n);
  for (std::size_t k = 0; k < n; ++k) {
    s[k] = std::log1p(order_abs[k] * order_abs[k]);
    yb[k] = std::log(std::max(bases[k], 1e-300));
    ym[k] = std::log(std::max(mags[k], 1e-300));
    s_min = std::min(s_min, s[k]);
    s_max = std::max(s_max, s[k]);
  }
  if (!(s_max > s_min)) return out;

  constexpr int kBins = 8;
  constexpr double kTailSlack = 0.02;
  for (int p = 0; p <= p_cap; ++p) {
    std::array<double, kBins> bin_max;
    std::array<double, kBins> bin_x{};
    std::array<bool, kBins> occupied{};
    bin_max.fill(-std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < n; ++k) {
      int b = static_cast<int>((s[k] - s_min) / (s_max - s_min) * kBins);
      b = std::clamp(b, 0, kBins - 1);
      const double rho = ym[k] - p * yb[k];
      if (rho > bin_max[static_cast<std::size_t>(b)]) {
        bin_max[static_cast<std::size_t>(b)] = rho;
        bin_x[static_cast<std::size_t>(b)] = order_abs[k];
        occupied[static_cast<std::size_t>(b)] = true;
      }
    }
    int last = -1;
    double inner_peak = -std::numeric_limits<double>::infinity();
    for (int b = 0; b < kBins; ++b) {
      if (occupied[static_cast<std::size_t>(b)]) last = b;
    }
    if (last < 0) return out;
    for (int b = 0; b < last; ++b) {
      if (occupied[static_cast<std::size_t>(b)])
        inner_peak = std::max(inner_peak, bin_max[static_cast<std::size_t>(b)]);
    }
    const double excess = bin_max[static_cast<std::size_t>(last)] - inner_peak;
    if (excess <= kTailSlack) {
      out.fits = true;
      out.p = p;
      double c = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        c = std::max(c, std::exp(ym[k] - p * yb[k]));
      out.constant_c = c;
      out.witness_x = bin_x[static_cast<std::size_t>(last)];
      return out;
    }
    out.witness_x = bin_x[static_cast<std::size_t>(last)];
  }
  return out;
}

constexpr double kEscapeCap = 1e60;

}  // namespace

Verdict schwartz_symbol_check(const SymbolExpr& phi, int j_max,
                              const ClassifierConfig& config) {
  if (j_max < 0 || j_max > kMaxJetOrder) {
    throw PreconditionViolated("schwartz_symbol_check needs 0 <= j_max <= 8");
  }
  Verdict v = make_verdict(Property::kSymbolFor, Status::kEmpiricalTrue, "GaJo.2.3",
                           Provenance::kGrid);
  v.space = SpaceTag::schwartz();

  const double x_max = 10.0;
  const std::vector<double> xs = growth_sample_grid(x_max);

  // Condition (1): |phi^(j)(x)| <= C (1 + phi(x)^2)^p per j.
  for (int j = 0; j <= j_max; ++j) {
    std::vector<double> order_abs, bases, mags;
    for (double x : xs) {
      const Jet jet = eval_jet(phi, x, j_max);  // DomainError propagates
      order_abs.push_back(std::abs(x));
      bases.push_back(1.0 + jet.value() * jet.value());
      mags.push_back(std::abs(jet.derivative(j)));
    }
    const BoundFitResult fit = fit_bound(order_abs, bases, mags, kGrowthExponentCap);
    if (!fit.fits) {
      v.status = Status::kEmpiricalFalse;
      v.witnesses.push_back({"condition", 1.0});
      v.witnesses.push_back({"derivative_j", static_cast<double>(j)});
      v.witnesses.push_back({"witness_x", fit.witness_x});
      v.note = "derivative growth not dominated by (1+phi^2)^p";
      audit_verdict(v);
      return v;
    }
    v.witnesses.push_back({"p_j" + std::to_string(j), static_cast<double>(fit.p)});
  }

  // Condition (2): |phi(x)| >= |x|^{1/k} for |x| >= k, some k.
  constexpr int kCap = 16;
  int good_k = -1;
  double bad_x = 0.0;
  for (int k = 1; k <= kCap && good_k < 0; ++k) {
    bool ok = true;
    constexpr int kPts = 400;
    for (int t = 0; t <= kPts && ok; ++t) {
      const double ax = k + (x_max * 10.0 - k) * t / kPts;  // check beyond x_max too
      for (double x : {ax, -ax}) {
        if (std::abs(phi(x)) < std::pow(std::abs(x), 1.0 / k)) {
          ok = false;
          bad_x = x;
          break;
        }
      }
    }
    if (ok) good_k = k;
  }
  if (good_k < 0) {
    v.status = Status::kEmpiricalFalse;
    v.witnesses.push_back({"condition", 2.0});
    v.witnesses.push_back({"witness_x", bad_x});
    v.note = "lower bound |phi(x)| >= |x|^{1/k} fails for k <= 16";
  } else {
    v.witnesses.push_back({"lower_bound_k", static_cast<double>(good_k)});
  }
  audit_verdict(v);
  return v;
}

Verdict schwartz_pb_check(const SymbolExpr& phi, int j_max, int n_max,
                          const ClassifierConfig& config) {
  if (j_max < 0 || j_max > kMaxJetOrder) {
    throw PreconditionViolated("schwartz_pb_check needs 0 <= j_max <= 8");
  }
  Verdict v = make_verdict(Property::kPowerBounded, Status::kEmpiricalTrue,
                           "FeGaJo.P4", Provenance::kGrid);
  v.space = SpaceTag::schwartz();

  const double x_max = 10.0;
  const std::vector<double> xs = growth_sample_grid(x_max);

  std::vector<std::vector<double>> order_abs(static_cast<std::size_t>(j_max) + 1),
      bases(static_cast<std::size_t>(j_max) + 1), mags(static_cast<std::size_t>(j_max) + 1);
  bool cond2_ok = true;
  double cond2_x = 0.0, cond2_n = 0.0;
  int best_k = -1;

  // Gather pooled samples; per-point orbits soft-stop once the magnitude
  // escapes beyond any relevant scale.
  std::vector<std::vector<std::vector<double>>> orbit_values(xs.size());
  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    const double x = xs[xi];
    Jet jn = identity_jet(x, j_max);
    std::vector<double> values;
    for (int n = 1; n <= n_max; ++n) {
      bool stopped = false;
      try {
        jn = compose(eval_jet(phi, jn.value(), j_max), jn);
      } catch (const OverflowError&) {
        stopped = true;
      }
      if (stopped) break;
      values.push_back(jn.value());
      for (int j = 0; j <= j_max; ++j) {
        order_abs[static_cast<std::size_t>(j)].push_back(std::abs(x));
        bases[static_cast<std::size_t>(j)].push_back(1.0 + jn.value() * jn.value());
        mags[static_cast<std::size_t>(j)].push_back(std::abs(jn.derivative(j)));
      }
      if (std::abs(jn.value()) > kEscapeCap) break;  // escaped every compact
    }
    orbit_values[xi] = {values};
  }

  // Condition (1) pooled per j.
  for (int j = 0; j <= j_max; ++j) {
    const BoundFitResult fit =
        fit_bound(order_abs[static_cast<std::size_t>(j)],
                  bases[static_cast<std::size_t>(j)],
                  mags[static_cast<std::size_t>(j)], kGrowthExponentCap);
    if (!fit.fits) {
      v.status = Status::kEmpiricalFalse;
      v.witnesses.push_back({"condition", 1.0});
      v.witnesses.push_back({"derivative_j", static_cast<double>(j)});
      v.witnesses.push_back({"witness_x", fit.witness_x});
      v.note = "uniform derivative bound fails";
      audit_verdict(v);
      return v;
    }
    v.witnesses.push_back({"p_j" + std::to_string(j), static_cast<double>(fit.p)});
  }

  // Condition (2) uniform in n: |phi_n(x)| >= |x|^{1/k} for |x| >= k.
  constexpr int kCap = 16;
  for (int k = 1; k <= kCap && best_k < 0; ++k) {
    bool ok = true;
    for (std::size_t xi = 0; xi < xs.size() && ok; ++xi) {
      const double x = xs[xi];
      if (std::abs(x) < k) continue;
      const double bound = std::pow(std::abs(x), 1.0 / k);
      const auto& values = orbit_values[xi].front();
      bool escaped = false;
      double prev = std::abs(x);
      for (std::size_t n = 0; n < values.size(); ++n) {
        const double mag = std::abs(values[n]);
        if (mag > kEscapeCap && mag > prev) escaped = true;
        if (mag < bound) {
          ok = false;
          cond2_x = x;
          cond2_n = static_cast<double>(n + 1);
          break;
        }
        prev = mag;
      }
      // Orbits that escaped past every compact keep satisfying the bound;
      // truncated non-escaping orbits stay unverified and we do not claim
      // them.
      if (ok && !escaped && values.size() < static_cast<std::size_t>(n_max) &&
          !values.empty()) {
        ok = false;
        cond2_x = x;
        cond2_n = static_cast<double>(values.size());
      }
    }
    if (ok) best_k = k;
  }
  if (best_k < 0) {
    v.status = Status::kEmpiricalFalse;
    v.witnesses.push_back({"condition", 2.0});
    v.witnesses.push_back({"witness_x", cond2_x});
    v.witnesses.push_back({"witness_n", cond2_n});
    v.note = "uniform lower bound |phi_n(x)| >= |x|^{1/k} fails";
  } else {
    v.witnesses.push_back({"lower_bound_k", static_cast<double>(best_k)});
  }
  (void)config;
  audit_verdict(v);
  return v;
}

// ---------------------------------------------------------------------------
// Strong runaway and the full pipeline.
// ---------------------------------------------------------------------------

Verdict runaway_classification(const SymbolExpr& phi, const ClassifierConfig& config) {
  const Analysis a = analyze(phi, config);
  Verdict v = make_verdict(Property::kStronglyRunaway, Status::kInconclusive,
                           "runaway.eq", Provenance::kGrid);

  if (a.identity || !a.certified_fixed_points.empty()) {
    v.status = Status::kProvenFalse;
    v.provenance = Provenance::kExact;
    if (a.identity) {
      v.note = "identity symbol";
    } else {
      v.witnesses.push_back({"fixed_point", a.certified_fixed_points.front().location});
      v.note = "a fixed point never leaves any compact containing it";
    }
    audit_verdict(v);
    return v;
  }
  if (a.family.exact() && a.exact_fixed_point_free &&
      a.mono.kind == Monotonicity::kIncreasing) {
    v.status = Status::kProvenTrue;
    v.provenance = Provenance::kExact;
    v.note = "increasing without fixed points";
    audit_verdict(v);
    return v;
  }
  if (a.mono.kind == Monotonicity::kIncreasing && a.grid_fixed_point_free) {
    v.status = Status::kEmpiricalTrue;
    v.note = "increasing with no fixed point on the scan window";
    audit_verdict(v);
    return v;
  }
  if (a.mono.kind == Monotonicity::kDecreasing) {
    // A decreasing continuous symbol always has a fixed point; the scan just
    // failed to bracket it if we reach here.
    v.status = Status::kInconclusive;
    v.note = "decreasing symbol; fixed point expected but not bracketed";
    audit_verdict(v);
    return v;
  }
  v.note = "escape behavior not established for non-monotone symbols";
  audit_verdict(v);
  return v;
}

namespace {

Verdict symbol_for_space(const SymbolExpr& phi, const SpaceTag& space,
                         const ClassifierConfig& config) {
  Verdict v = make_verdict(Property::kSymbolFor, Status::kEmpiricalTrue, "empirical",
                           Provenance::kGrid);
  v.space = space;
  const Family fam = recognize_family(phi);
  if (fam.exact()) {
    v.status = Status::kProvenTrue;
    v.provenance = Provenance::kExact;
    v.citation = "E.PB";
    v.note = "polynomial symbols act on every space in the theorem table";
    audit_verdict(v);
    return v;
  }
  // Totality check on the scan window; grammar primitives are smooth (and
  // real-analytic) on their domains.
  constexpr int kPts = 512;
  for (int i = 0; i <= kPts; ++i) {
    const double x = -kDefaultScanHalfWidth +
                     2.0 * kDefaultScanHalfWidth * i / kPts;
    try {
      (void)phi(x);
    } catch (const DomainError& e) {
      v.status = Status::kEmpiricalFalse;
      v.witnesses.push_back({"undefined_at", e.at()});
      v.note = "symbol undefined inside the scan window";
      audit_verdict(v);
      return v;
    } catch (const OverflowError&) {
      continue;  // growth is handled by membership checks, not domain ones
    }
  }
  v.note = space.kind == SpaceTag::Kind::kAnalytic
               ? "defined on the scan window; real-analyticity of the grammar "
                 "primitives is cited, not certified"
               : "defined on the scan window";
  (void)config;
  audit_verdict(v);
  return v;
}

}  // namespace

std::vector<Verdict> full_classification(const SymbolExpr& phi, const SpaceTag& space,
                                         const ClassifierConfig& config) {
  std::vector<Verdict> out;
  const Family fam = recognize_family(phi);
  const int order = std::clamp(space.numeric_order(config.order), 0, kMaxJetOrder);

  if (space.kind == SpaceTag::Kind::kSchwartz) {
    Verdict pb = schwartz_pb_check(phi, std::min(order, 3), std::min(config.iterations, 8),
                                   config);
    if (fam.is_polynomial() && fam.degree % 2 == 0) {
      const Analysis a = analyze(phi, config);
      if (a.exact_fixed_point_free) {
        pb.note += "; even-degree polynomial without fixed points (FeGaJo 3.7 case)";
      }
    }
    out.push_back(pb);

    Verdict me = make_verdict(Property::kMeanErgodic,
                              pb.status == Status::kEmpiricalTrue
                                  ? Status::kEmpiricalTrue
                                  : Status::kInconclusive,
                              "montel.pbme", Provenance::kGrid);
    me.space = space;
    me.note = pb.status == Status::kEmpiricalTrue
                  ? "power bounded on a Montel space is mean ergodic"
                  : "mean ergodicity undetermined without power boundedness";
    out.push_back(me);

    auto ws = supercyclicity_obstructions(phi, space, config);
    out.insert(out.end(), ws.begin(), ws.end());
    out.push_back(runaway_classification(phi, config));
    out.push_back(schwartz_symbol_check(phi, std::min(order, 3), config));
  } else {
    // Power boundedness and mean ergodicity.
    if (fam.exact()) {
      auto table = classify_polynomial(fam, space);
      out.insert(out.end(), table.begin(), table.end());
    } else {
      Verdict pb;
      bool have_pb = false;
      try {
        pb = monotone_pb_analysis(phi, space, config);
        have_pb = true;
      } catch (const PreconditionViolated&) {
      }
      if (have_pb && pb.status == Status::kEmpiricalTrue) {
        Verdict confirm = power_bounded_empirical(phi, order, config.iterations, config);
        if (confirm.status == Status::kEmpiricalTrue) {
          for (const Witness& w : confirm.witnesses) pb.witnesses.push_back(w);
          pb.note += "; iterate battery confirms boundedness";
        } else {
          pb.status = Status::kInconclusive;
          pb.note += "; iterate battery disagrees with the fixed-point analysis";
        }
      } else if (!have_pb) {
        pb = power_bounded_empirical(phi, order, config.iterations, config);
      }
      out.push_back(pb);

      auto me = mean_ergodic_necessary(phi, space, config.iterations,
                                       config.compact_lo, config.compact_hi, config);
      out.insert(out.end(), me.begin(), me.end());
    }

    auto ws = supercyclicity_obstructions(phi, space, config);
    out.insert(out.end(), ws.begin(), ws.end());
    out.push_back(mixing_classification(phi, space, config));
    out.push_back(runaway_classification(phi, config));

    if (space.kind == SpaceTag::Kind::kOm) {
      out.push_back(membership_Om(phi, order, config.membership_window));
    } else if (space.kind == SpaceTag::Kind::kOM) {
      auto sweep = membership_OM(phi, std::min(order, 3), config.membership_window);
      out.insert(out.end(), sweep.begin(), sweep.end());
    } else {
      out.push_back(symbol_for_space(phi, space, config));
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const Verdict& a, const Verdict& b) {
    return static_cast<int>(a.property) < static_cast<int>(b.property);
  });
  for (const Verdict& v : out) audit_verdict(v);
  return out;
}

}  // namespace copdyn
