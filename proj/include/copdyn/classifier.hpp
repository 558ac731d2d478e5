#pragma once

#include <vector>

#include "copdyn/dynamics.hpp"
#include "copdyn/family.hpp"
#include "copdyn/seminorm.hpp"
#include "copdyn/verdict.hpp"

namespace copdyn {

struct ClassifierConfig {
  double growth_window = 20.0;     // |x| window for iterate growth sampling
  double membership_window = 100.0;
  int iterations = 64;             // n_max for empirical batteries
  int order = 3;                   // derivative order for empirical checks
  double compact_lo = -5.0;        // K for mean-ergodic probes
  double compact_hi = 5.0;
};

/// Exact (Theorem-table) classification of affine and polynomial symbols:
/// PB and ME hold iff φ = ax+b with |a| < 1, a = -1, or the identity.
/// The |a| < 1 case also records the iterate limit b/(1-a) on the PB verdict.
std::vector<Verdict> classify_polynomial(const Family& family, const SpaceTag& space);

/// Obstructions to weak supercyclicity: a certified fixed point or a
/// certified zero of φ' (sign change, or exact polynomial root isolation).
/// For C^0 the rules are injectivity/monotonicity based instead.
std::vector<Verdict> supercyclicity_obstructions(const SymbolExpr& phi,
                                                 const SpaceTag& space,
                                                 const ClassifierConfig& config = {});

Verdict mixing_classification(const SymbolExpr& phi, const SpaceTag& space,
                              const ClassifierConfig& config = {});

/// Necessary conditions for mean ergodicity on a compact K: φ_n/n -> 0,
/// Cauchy Cesàro means, no expanding monotone tail, single fixed point for
/// non-decreasing symbols. Never returns ProvenTrue.
std::vector<Verdict> mean_ergodic_necessary(const SymbolExpr& phi,
                                            const SpaceTag& space, int n_max,
                                            double k_lo, double k_hi,
                                            const ClassifierConfig& config = {});

/// Iterate-boundedness probe: jets of φ_n pooled over n <= n_max per
/// derivative order, fed to the growth fit; growth in n at fixed x or
/// overflow falsifies.
Verdict power_bounded_empirical(const SymbolExpr& phi, int m, int n_max,
                                const ClassifierConfig& config = {});

/// Monotone-symbol power-bounded analysis; decreasing symbols reduce to φ₂.
/// Throws PreconditionViolated for non-monotone symbols or when φ₂ is the
/// identity (trivial involution).
Verdict monotone_pb_analysis(const SymbolExpr& phi, const SpaceTag& space,
                             const ClassifierConfig& config = {});

/// The two symbol conditions for the rapidly-decreasing space: derivative
/// growth against (1+φ(x)²)^p and the lower bound |φ(x)| >= |x|^{1/k}.
Verdict schwartz_symbol_check(const SymbolExpr& phi, int j_max,
                              const ClassifierConfig& config = {});

/// The uniform-in-n versions of the two conditions over n <= n_max.
Verdict schwartz_pb_check(const SymbolExpr& phi, int j_max, int n_max,
                          const ClassifierConfig& config = {});

/// Strong-runaway verdict from the global characterization: increasing
/// without fixed points (exact for recognized families).
Verdict runaway_classification(const SymbolExpr& phi,
                               const ClassifierConfig& config = {});

/// Everything the CLI report carries, ordered by property tag.
std::vector<Verdict> full_classification(const SymbolExpr& phi, const SpaceTag& space,
                                         const ClassifierConfig& config = {});

}  // namespace copdyn
