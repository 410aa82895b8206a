#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "torq/fan.hpp"

namespace torq {

/// Toric morphism: a lattice map F carrying every cone of the source system
/// into some cone of the target fan.
struct ToricMorphism {
  AffineSystemOfFans source;
  Fan target;
  IntMatrix map;  // target.ambient_rank x source.ambient_rank
};

struct CompatibilityResult {
  bool compatible = false;
  std::optional<Cone> witness;  // source cone whose image fits no target cone
};

CompatibilityResult check_compatible(const IntMatrix& f, const AffineSystemOfFans& s,
                                     const Fan& target);

/// Validating constructor; throws PreconditionViolated when incompatible.
ToricMorphism toric_morphism(const AffineSystemOfFans& s, const Fan& target, const IntMatrix& f);

struct WeakProperness {
  bool weakly_proper = false;
  /// One covering decision per maximal target cone, same order as target.max_cones.
  std::vector<CoveringCertificate> certificates;
};

/// Surjectivity on supports: every maximal target cone is covered by the
/// images of the source cones.
WeakProperness is_weakly_proper(const ToricMorphism& m);

struct EquivalenceClass {
  Cone target_cone;            // tau, with F(sigma degrees) inside its relative interior
  std::vector<Cone> members;   // source cones of the class
  Sublattice support_lattice;  // saturated span of all members
};

struct EquivalenceClasses {
  std::vector<EquivalenceClass> classes;

  /// Index of the class containing the given source cone; -1 when absent.
  int class_of(const Cone& source_cone) const;
};

EquivalenceClasses equivalence_classes(const ToricMorphism& m);

struct FiberData {
  Cone target_cone;
  /// Representatives of the orbit classes [sigma, i] lying over the target
  /// cone's relative interior.
  std::vector<LabelledFace> orbit_members;
  Sublattice stabilizer_lattice;
};

FiberData fiber_data(const ToricMorphism& m, const Cone& sigma_prime);

struct FactorsResult {
  bool factors = false;
  std::optional<IntVector> kernel_witness;          // kernel vector not killed by f
  std::optional<std::pair<Cone, Cone>> pair_witness;  // p-equivalent, not f-equivalent
};

/// Does f factor through p (both toric, same source)? Requires p weakly
/// proper with saturated kernel.
FactorsResult factors_through(const ToricMorphism& f, const ToricMorphism& p);

struct Restriction {
  AffineSystemOfFans system;  // S cut with sigma
  QuotientLattice projection;  // by the saturated span of sigma's minimal face
  Cone target;                 // image of sigma, strictly convex
};

Restriction restrict_to_cone(const AffineSystemOfFans& s, const Cone& sigma);

/// Is the face closure of `sub` closed under the p-equivalence relation?
bool is_saturated_subfan(const ToricMorphism& p, const std::vector<Cone>& sub);

}  // namespace torq
