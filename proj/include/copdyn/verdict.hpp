#pragma once

#include <optional>
#include <string>
#include <vector>

namespace copdyn {

/// The function space a classification targets.
struct SpaceTag {
  enum class Kind { kCm, kOm, kOM, kSchwartz, kAnalytic };

  Kind kind = Kind::kCm;
  // For kCm: the smoothness order, kInfinity for C^inf.
  // For kOm: the derivative order of the weighted space.
  int m = kInfinity;

  static constexpr int kInfinity = -1;

  static SpaceTag cm(int order) { return {Kind::kCm, order}; }
  static SpaceTag cinf() { return {Kind::kCm, kInfinity}; }
  static SpaceTag om(int order) { return {Kind::kOm, order}; }
  static SpaceTag oM() { return {Kind::kOM, kInfinity}; }
  static SpaceTag schwartz() { return {Kind::kSchwartz, kInfinity}; }
  static SpaceTag analytic() { return {Kind::kAnalytic, kInfinity}; }

  /// CLI spelling: c0, c1, cinf, om:<m>, oM, schwartz, analytic.
  static std::optional<SpaceTag> parse(const std::string& text);
  std::string to_string() const;

  bool embeds_in_c1() const {
    return !(kind == Kind::kCm && m == 0);
  }
  /// Derivative order the numerics may use (clamped by callers).
  int numeric_order(int fallback) const {
    if (kind == Kind::kCm || kind == Kind::kOm) return m == kInfinity ? fallback : m;
    return fallback;
  }

  bool operator==(const SpaceTag&) const = default;
};

enum class Property {
  kPowerBounded,
  kMeanErgodic,
  kWeaklySupercyclic,
  kMixing,
  kStronglyRunaway,
  kSymbolFor,
};

enum class Status {
  kProvenTrue,
  kProvenFalse,
  kEmpiricalTrue,
  kEmpiricalFalse,
  kInconclusive,
};

/// Whether a verdict followed from a recognized structural family or a
/// certified witness (exact) or from grid evidence alone (grid). Proven
/// statuses require exact provenance.
enum class Provenance { kExact, kGrid };

struct Witness {
  std::string description;
  double value = 0.0;
};

struct Verdict {
  Property property = Property::kPowerBounded;
  Status status = Status::kInconclusive;
  std::string citation;  // theorem tag from citations(), or "empirical"
  Provenance provenance = Provenance::kGrid;
  std::vector<Witness> witnesses;
  std::string note;                  // optional clarification
  std::optional<SpaceTag> space;     // for kSymbolFor

  bool proven() const {
    return status == Status::kProvenTrue || status == Status::kProvenFalse;
  }
};

const char* property_name(Property p);
const char* status_name(Status s);

/// The fixed citation table; every non-empirical verdict cites one of these.
const std::vector<std::string>& citation_table();
bool known_citation(const std::string& tag);

/// Throws PreconditionViolated when a verdict breaks the soundness
/// invariants (Proven* with grid provenance, empty/unknown citation).
void audit_verdict(const Verdict& v);

}  // namespace copdyn
