#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torq/errors.hpp"
#include "torq/morphism.hpp"

using namespace torq;

namespace {

Cone rays(int rank, const std::vector<IntVector>& gens) { return Cone::from_rays(rank, gens); }

// The plane fan with one maximal cone cone(e1, e2), as a system.
AffineSystemOfFans c2_system() {
  return system_from_fan(fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}})}));
}

Fan line_fan() { return fan_from_max_cones(1, {rays(1, {{1}})}); }

ToricMorphism c2_projection() {
  return toric_morphism(c2_system(), line_fan(), IntMatrix{{1, 0}});
}

}  // namespace

TEST_CASE("compatibility: identity and failures") {
  AffineSystemOfFans s = c2_system();
  Fan same = fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}})});
  CHECK(check_compatible(IntMatrix::identity(2), s, same).compatible);
  CHECK(check_compatible(IntMatrix{{1, 0}}, s, line_fan()).compatible);

  Fan negative = fan_from_max_cones(1, {rays(1, {{-1}})});
  CompatibilityResult r = check_compatible(IntMatrix{{1, 0}}, s, negative);
  CHECK_FALSE(r.compatible);
  REQUIRE(r.witness.has_value());
  CHECK_THROWS_AS(toric_morphism(s, negative, IntMatrix{{1, 0}}), PreconditionViolated);
}

TEST_CASE("weak properness of the plane-to-line projection") {
  CHECK(is_weakly_proper(c2_projection()).weakly_proper);
}

TEST_CASE("identity morphisms are weakly proper") {
  for (const Fan& f : {fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}})}),
                       fan_from_max_cones(2, {rays(2, {{1, 0}, {1, 2}}), rays(2, {{1, 2}, {0, 1}})})}) {
    AffineSystemOfFans s = system_from_fan(f);
    CHECK(is_weakly_proper(toric_morphism(s, f, IntMatrix::identity(2))).weakly_proper);
  }
}

TEST_CASE("weak properness fails across the gap-merge system") {
  AffineSystemOfFans s = system_from_charts(
      3, {rays(3, {{1, 0, 0}, {0, 1, 0}}), rays(3, {{1, 1, 0}, {0, 0, 1}})}, {});
  Fan octant = fan_from_max_cones(3, {rays(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})});
  ToricMorphism m = toric_morphism(s, octant, IntMatrix::identity(3));
  WeakProperness wp = is_weakly_proper(m);
  CHECK_FALSE(wp.weakly_proper);
  REQUIRE(wp.certificates.size() == 1);
  REQUIRE(wp.certificates[0].witness.has_value());
  IntVector w = *wp.certificates[0].witness;
  CHECK(octant.max_cones[0].contains(w));
  for (const auto& chart : s.charts) CHECK_FALSE(chart.contains(w));
}

TEST_CASE("equivalence classes of the plane-to-line projection") {
  EquivalenceClasses cls = equivalence_classes(c2_projection());
  REQUIRE(cls.classes.size() == 2);
  // Classes are keyed by target cone; the zero cone sorts apart from the ray.
  const EquivalenceClass* over_zero = nullptr;
  const EquivalenceClass* over_ray = nullptr;
  for (const auto& c : cls.classes)
    (c.target_cone.is_zero() ? over_zero : over_ray) = &c;
  REQUIRE(over_zero != nullptr);
  REQUIRE(over_ray != nullptr);
  // 0 ~ tau2 over the origin; tau1 ~ sigma over the positive ray.
  CHECK(over_zero->members ==
        std::vector<Cone>{Cone::zero(2), rays(2, {{0, 1}})});
  CHECK(over_ray->members ==
        std::vector<Cone>{rays(2, {{1, 0}}), rays(2, {{1, 0}, {0, 1}})});
  CHECK(over_zero->support_lattice.basis.row(0) == IntVector{0, 1});
  CHECK(over_ray->support_lattice.rank() == 2);
}

TEST_CASE("identity morphism: every cone is its own class") {
  Fan f = fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}})});
  AffineSystemOfFans s = system_from_fan(f);
  EquivalenceClasses cls = equivalence_classes(toric_morphism(s, f, IntMatrix::identity(2)));
  CHECK(cls.classes.size() == cones_of(s).size());
  for (const auto& c : cls.classes) {
    CHECK(c.members.size() == 1);
    CHECK(c.members[0] == c.target_cone);
  }
}

TEST_CASE("class partition: assigned target cones partition the support") {
  EquivalenceClasses cls = equivalence_classes(c2_projection());
  for (const auto& c : cls.classes)
    for (const auto& member : c.members) {
      IntVector w{dot({1, 0}, member.relative_interior_point())};
      CHECK(c.target_cone.membership(w) == Membership::relative_interior);
    }
}

TEST_CASE("fiber data of the plane-to-line projection") {
  ToricMorphism m = c2_projection();
  FiberData fd = fiber_data(m, rays(1, {{1}}));
  CHECK(fd.orbit_members.size() == 2);
  CHECK(fd.stabilizer_lattice.rank() == 2);  // lin|sigma|_f = R^2

  FiberData origin = fiber_data(m, Cone::zero(1));
  CHECK(origin.orbit_members.size() == 2);  // 0 and tau2
  CHECK(origin.stabilizer_lattice.rank() == 1);
  CHECK(origin.stabilizer_lattice.basis.row(0) == IntVector{0, 1});
}

TEST_CASE("fiber data over an untouched cone still carries the kernel") {
  ToricMorphism m = c2_projection();
  // No source cone maps into the relative interior of... use a fresh target
  // fan with an extra ray that receives nothing.
  Fan target = fan_from_max_cones(1, {rays(1, {{1}}), rays(1, {{-1}})});
  ToricMorphism m2 = toric_morphism(c2_system(), target, IntMatrix{{1, 0}});
  FiberData fd = fiber_data(m2, rays(1, {{-1}}));
  CHECK(fd.orbit_members.empty());
  CHECK(fd.stabilizer_lattice.basis.row(0) == IntVector{0, 1});
}

TEST_CASE("fiber data for the identity") {
  Fan f = fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}})});
  AffineSystemOfFans s = system_from_fan(f);
  ToricMorphism m = toric_morphism(s, f, IntMatrix::identity(2));
  Cone tau = rays(2, {{1, 0}});
  FiberData fd = fiber_data(m, tau);
  REQUIRE(fd.orbit_members.size() == 1);
  CHECK(fd.orbit_members[0].cone == tau);
  CHECK(fd.stabilizer_lattice.basis == span_lattice(tau).basis);
}

TEST_CASE("factorization") {
  ToricMorphism p = c2_projection();
  CHECK(factors_through(p, p).factors);

  // The identity does not factor through the projection: e2 is not killed.
  Fan plane = fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}})});
  ToricMorphism id = toric_morphism(c2_system(), plane, IntMatrix::identity(2));
  FactorsResult r = factors_through(id, p);
  CHECK_FALSE(r.factors);
  REQUIRE(r.kernel_witness.has_value());
  CHECK(*r.kernel_witness == IntVector{0, 1});

  // A second projection with the same kernel and class partition factors.
  Fan line_pair = fan_from_max_cones(1, {rays(1, {{1}}), rays(1, {{-1}})});
  ToricMorphism f = toric_morphism(c2_system(), line_pair, IntMatrix{{1, 0}});
  CHECK(factors_through(f, p).factors);
}

TEST_CASE("factorization rejects a non weakly proper p") {
  AffineSystemOfFans s = c2_system();
  Fan big_line = fan_from_max_cones(1, {rays(1, {{1}}), rays(1, {{-1}})});
  ToricMorphism p = toric_morphism(s, big_line, IntMatrix{{1, 0}});  // misses the -ray
  CHECK_THROWS_AS(factors_through(p, p), PreconditionViolated);
}

TEST_CASE("restriction to a strictly convex cone is trivial") {
  AffineSystemOfFans s = c2_system();
  Cone sigma = rays(2, {{1, 1}, {1, 0}});
  Restriction r = restrict_to_cone(s, sigma);
  CHECK(r.projection.projection == IntMatrix::identity(2));
  CHECK(r.target == sigma);
  CHECK(r.system.charts.size() == 1);
  CHECK(r.system.charts[0] == sigma);
}

TEST_CASE("restriction rejects cones outside the support") {
  CHECK_THROWS_AS(restrict_to_cone(c2_system(), rays(2, {{1, 0}, {-1, 0}, {0, 1}})),
                  PreconditionViolated);
}

TEST_CASE("restriction along a line collapses it") {
  // Charts covering the upper halfplane.
  AffineSystemOfFans s = system_from_fan(
      fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}}), rays(2, {{0, 1}, {-1, 0}})}));
  Cone line = rays(2, {{1, 0}, {-1, 0}});
  Restriction r = restrict_to_cone(s, line);
  CHECK(r.projection.target_rank == 1);
  CHECK(r.target == Cone::zero(1));
}

TEST_CASE("saturated subfans of the plane-to-line projection") {
  ToricMorphism p = c2_projection();
  // The whole system is saturated.
  CHECK(is_saturated_subfan(p, {rays(2, {{1, 0}, {0, 1}})}));
  // {0, tau2} is a class union: saturated.
  CHECK(is_saturated_subfan(p, {rays(2, {{0, 1}})}));
  // {0, tau1} rips tau2 out of its class and sigma out of tau1's.
  CHECK_FALSE(is_saturated_subfan(p, {rays(2, {{1, 0}})}));
}
