#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torq/morphism.hpp"

namespace torq {

struct TraceStep {
  Cone tau, tau_prime;  // the merged pair (tau cap tau_prime not a face of tau_prime)
  Cone rho_prime;       // smallest face of tau_prime containing the intersection
  Cone merged;          // tau + rho_prime
};

/// Result of the quotient quasi-fan merge loop in N/L coordinates.
struct QuotientQuasiFan {
  Fan sigma;             // quasi-fan, given by its maximal cones
  Sublattice lineality;  // L' = V(Sigma) as a sublattice of N/L
  std::vector<TraceStep> trace;
};

inline constexpr long kDefaultIterationCap = 10000;

/// The merge loop: start from the maximal images of the system's cones under
/// the projection killing L, repeatedly replace a non-face-to-face pair
/// (tau, tau') by tau + rho'. Deterministic: the violating ordered pair with
/// the lexicographically smallest cone keys is chosen each step.
QuotientQuasiFan quotient_quasifan(const AffineSystemOfFans& s, const QuotientLattice& p,
                                   long iteration_cap = kDefaultIterationCap);

struct SeparatedToricQuotient {
  AffineSystemOfFans source;
  Sublattice l;
  QuotientLattice p;        // N -> N/L
  QuotientQuasiFan quasifan;
  QuotientLattice p_prime;  // N/L -> (N/L)/L'
  Fan fan;                  // Delta, strictly convex, face-to-face

  /// Composite projection N -> (N/L)/L'.
  IntMatrix composite() const { return p_prime.projection * p.projection; }
  ToricMorphism morphism() const;
};

/// The separated toric quotient of the system by the saturated sublattice L.
/// A caller-supplied projection matrix (surjective, kernel exactly L) may be
/// passed to fix the coordinates on N/L; by default the canonical Hermite
/// form projection is used.
SeparatedToricQuotient separated_toric_quotient(
    const AffineSystemOfFans& s, const Sublattice& l,
    const std::optional<IntMatrix>& projection = std::nullopt,
    long iteration_cap = kDefaultIterationCap);

struct Thm62Result {
  bool holds = false;
  /// One covering decision per maximal cone of the quotient fan: is the
  /// preimage covered by the images of the source cones?
  std::vector<CoveringCertificate> certificates;
};

/// Decides P(|S|) = (P')^{-1}(|Delta|).
Thm62Result check_thm62(const SeparatedToricQuotient& q);

struct Certification {
  bool weakly_proper = false;       // quotient morphism surjective on supports
  bool expected_dimension = false;  // L' = 0
  bool convex_support = false;      // source is a separated fan with convex support
  bool codim_le_2 = false;          // rank N - rank L <= 2
  bool thm62 = false;
  bool certified = false;
  std::vector<std::string> reasons;  // the sufficient conditions that fired
};

Certification certify_categorical(const AffineSystemOfFans& s, const Sublattice& l,
                                  const std::optional<IntMatrix>& projection = std::nullopt,
                                  long iteration_cap = kDefaultIterationCap);

struct UniformityReport {
  Fan restricted_quotient;  // quotient of the face closure of `sub` by L
  Fan image_subfan;         // images of sub's cones inside the full quotient fan
  bool equal = false;       // compared up to unimodular equivalence
};

/// Probes uniformity at a saturated open subset given by cones of the system.
UniformityReport uniformity_probe(const AffineSystemOfFans& s, const Sublattice& l,
                                  const std::vector<Cone>& sub,
                                  const std::optional<IntMatrix>& projection = std::nullopt,
                                  long iteration_cap = kDefaultIterationCap);

}  // namespace torq
