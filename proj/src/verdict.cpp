#include "copdyn/verdict.hpp"

#include <algorithm>

#include "copdyn/errors.hpp"

namespace copdyn {

std::optional<SpaceTag> SpaceTag::parse(const std::string& text) {
  if (text == "c0") return cm(0);
  if (text == "c1") return cm(1);
  if (text == "cinf") return cinf();
  if (text == "oM") return oM();
  if (text == "schwartz") return schwartz();
  if (text == "analytic") return analytic();
  if (text.rfind("om:", 0) == 0) {
    const std::string rest = text.substr(3);
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
      return std::nullopt;
    const long m = std::stol(rest);
    if (m < 0 || m > 8) return std::nullopt;
    return om(static_cast<int>(m));
  }
  if (text.rfind("c", 0) == 0 && text.size() > 1 &&
      text.find_first_not_of("0123456789", 1) == std::string::npos) {
    const long m = std::stol(text.substr(1));
    if (m < 0 || m > 8) return std::nullopt;
    return cm(static_cast<int>(m));
  }
  return std::nullopt;
}

std::string SpaceTag::to_string() const {
  switch (kind) {
    case Kind::kCm:
      return m == kInfinity ? "cinf" : "c" + std::to_string(m);
    case Kind::kOm:
      return "om:" + std::to_string(m);
    case Kind::kOM:
      return "oM";
    case Kind::kSchwartz:
      return "schwartz";
    case Kind::kAnalytic:
      return "analytic";
  }
  return "?";
}

const char* property_name(Property p) {
  switch (p) {
    case Property::kPowerBounded: return "PowerBounded";
    case Property::kMeanErgodic: return "MeanErgodic";
    case Property::kWeaklySupercyclic: return "WeaklySupercyclic";
    case Property::kMixing: return "Mixing";
    case Property::kStronglyRunaway: return "StronglyRunaway";
    case Property::kSymbolFor: return "SymbolFor";
  }
  return "?";
}

const char* status_name(Status s) {
  switch (s) {
    case Status::kProvenTrue: return "ProvenTrue";
    case Status::kProvenFalse: return "ProvenFalse";
    case Status::kEmpiricalTrue: return "EmpiricalTrue";
    case Status::kEmpiricalFalse: return "EmpiricalFalse";
    case Status::kInconclusive: return "Inconclusive";
  }
  return "?";
}

const std::vector<std::string>& citation_table() {
  static const std::vector<std::string> table = {
      "E.PB",          // polynomial symbols: PB/ME iff ax+b with |a|<1, a=-1, or identity
      "onefixed",      // monotone symbols: PB iff attracting fixed point + SOT convergence
      "T.PowerBm",     // iterate boundedness in the weighted space of order m
      "T.PowerB",      // iterate boundedness across all orders
      "BDK.i",         // analytic case: weakly supercyclic implies mixing
      "BDK.ii",        // C^m case: weakly supercyclic iff mixing
      "BDK.iii",       // continuous case: supercyclic iff mixing
      "nwsup",         // fixed point or vanishing derivative kills weak supercyclicity
      "Psuper",        // supercyclic on C(R) needs increasing without fixed points
      "wsimpmix",      // weakly supercyclic implies strongly runaway with positive derivative
      "P.ME0",         // mean ergodic implies phi_[n] converges and phi_n/n -> 0
      "P.ME1",         // phi(x)>x on a tail obstructs mean ergodicity
      "P.ME2",         // mean ergodic implies Fix(phi) a nonempty closed interval
      "C.ME",          // non-decreasing mean ergodic symbol has a single fixed point
      "corsup",        // SOT convergence of composition operators
      "superposition", // continuity of the superposition operator
      "thcomp",        // symbol membership for the weighted order-m space
      "chasymom",      // symbol membership for the multiplier space
      "schurr",        // bounded sets carry the C^m topology
      "convom",        // convergence criterion and the escaping-bump counterexample
      "OC.remark",     // sin(x^2) blow-up for very slowly increasing functions
      "translation.mixing",  // translations are mixing on the weighted spaces
      "runaway.eq",    // increasing without fixed points iff strongly runaway
      "GaJo.2.3",      // Schwartz symbol characterization
      "FeGaJo.P4",     // Schwartz power-boundedness characterization
      "FeGaJo.3.7",    // even-degree polynomials without fixed points on S(R)
      "stable",        // C^m power boundedness iff iterates bounded in C^m
      "pbs",           // weighted-space power boundedness transfers to C^m
      "S5.corollary",  // increasing symbols: SOT convergence iff power bounded
      "montel.pbme",   // power bounded implies mean ergodic on Montel spaces
      "empirical",
  };
  return table;
}

bool known_citation(const std::string& tag) {
  const auto& t = citation_table();
  return std::find(t.begin(), t.end(), tag) != t.end();
}

void audit_verdict(const Verdict& v) {
  if (v.citation.empty() || !known_citation(v.citation)) {
    throw PreconditionViolated("verdict with missing or unknown citation: '" +
                               v.citation + "'");
  }
  if (v.proven() && v.provenance != Provenance::kExact) {
    throw PreconditionViolated(
        "proven verdict with grid provenance: " +
        std::string(property_name(v.property)));
  }
}

}  // namespace copdyn
