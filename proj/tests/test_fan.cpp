#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torq/errors.hpp"
#include "torq/fan.hpp"

using namespace torq;

namespace {
Cone rays(int rank, const std::vector<IntVector>& gens) { return Cone::from_rays(rank, gens); }
}  // namespace

TEST_CASE("fan construction drops duplicates and non-maximal cones") {
  Fan f = fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}}), rays(2, {{1, 0}}),
                                 rays(2, {{2, 0}, {0, 3}})});
  CHECK(f.max_cones.size() == 1);
  CHECK(f.max_cones[0] == rays(2, {{1, 0}, {0, 1}}));
}

TEST_CASE("fan rejects overlapping cones that do not meet in a face") {
  CHECK_THROWS_AS(
      fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}}), rays(2, {{1, 1}, {-1, 1}})}),
      FaceToFaceViolation);
}

TEST_CASE("fan rejects lineality unless quasi") {
  std::vector<Cone> cones = {rays(2, {{1, 0}, {-1, 0}, {0, 1}})};
  CHECK_THROWS_AS(fan_from_max_cones(2, cones), NotStrictlyConvex);
  Fan q = fan_from_max_cones(2, cones, /*quasi=*/true);
  CHECK(q.max_cones.size() == 1);
}

TEST_CASE("fan cones and dimension filter") {
  Fan f = fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}}), rays(2, {{0, 1}, {-1, 0}})});
  CHECK(fan_cones(f).size() == 6);  // 0, three rays, two quadrants
  CHECK(fan_cones(f, 1).size() == 3);
  CHECK(fan_support_contains(f, {-3, 5}));
  CHECK_FALSE(fan_support_contains(f, {0, -1}));
}

TEST_CASE("system validation: charts must be strictly convex") {
  CHECK_THROWS_AS(system_from_charts(2, {rays(2, {{1, 0}, {-1, 0}})}, {}),
                  NotStrictlyConvex);
}

TEST_CASE("system validation: glue cones must be common faces") {
  Cone a = rays(2, {{1, 0}, {0, 1}});
  Cone b = rays(2, {{0, 1}, {-1, 0}});
  std::map<std::pair<int, int>, std::vector<Cone>> bad{{{0, 1}, {rays(2, {{1, 1}})}}};
  CHECK_THROWS_AS(system_from_charts(2, {a, b}, bad), NotSubfan);
  std::map<std::pair<int, int>, std::vector<Cone>> good{{{0, 1}, {rays(2, {{0, 1}})}}};
  AffineSystemOfFans s = system_from_charts(2, {a, b}, good);
  CHECK(s.glued(0, 1, rays(2, {{0, 1}})));
  CHECK(s.glued(0, 1, Cone::zero(2)));
  CHECK_FALSE(s.glued(0, 1, a));
}

TEST_CASE("system from a fan glues along intersections") {
  Fan f = fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}}), rays(2, {{0, 1}, {-1, 0}})});
  AffineSystemOfFans s = system_from_fan(f);
  CHECK(s.charts.size() == 2);
  CHECK(s.glued(0, 1, rays(2, {{0, 1}})));
  CHECK(cones_of(s).size() == 6);
  CHECK(support_contains(s, {-1, 2}));
}

TEST_CASE("orbit classes: non-separated doubled origin vs separated line") {
  // Two copies of the ray cone(e1) glued only along {0}: the rays stay
  // distinct labelled faces, the origins are identified.
  AffineSystemOfFans doubled =
      system_from_charts(1, {rays(1, {{1}}), rays(1, {{1}})}, {});
  OrbitClasses oc = orbit_classes(doubled);
  CHECK(oc.classes.size() == 3);  // shared origin + two copies of the ray
  CHECK(oc.index_of({Cone::zero(1), 0}) == oc.index_of({Cone::zero(1), 1}));
  CHECK(oc.index_of({rays(1, {{1}}), 0}) != oc.index_of({rays(1, {{1}}), 1}));

  // Same charts glued along the ray itself: everything is identified.
  std::map<std::pair<int, int>, std::vector<Cone>> glue{{{0, 1}, {rays(1, {{1}})}}};
  OrbitClasses sep = orbit_classes(system_from_charts(1, {rays(1, {{1}}), rays(1, {{1}})}, glue));
  CHECK(sep.classes.size() == 2);
}

TEST_CASE("orbit order uses the chart of the bigger cone") {
  AffineSystemOfFans doubled =
      system_from_charts(1, {rays(1, {{1}}), rays(1, {{1}})}, {});
  OrbitClasses oc = orbit_classes(doubled);
  CHECK(oc.precedes({Cone::zero(1), 1}, {rays(1, {{1}}), 0}));
  CHECK_FALSE(oc.precedes({rays(1, {{1}}), 0}, {rays(1, {{1}}), 1}));
}

TEST_CASE("intersecting a system with a cone") {
  Fan f = fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}}), rays(2, {{0, 1}, {-1, 0}})});
  AffineSystemOfFans s = system_from_fan(f);
  AffineSystemOfFans cut = intersect_system_with_cone(s, rays(2, {{1, 1}, {-1, 1}}));
  CHECK(cut.charts.size() == 2);
  auto has_chart = [&](const Cone& c) {
    return cut.charts[0] == c || cut.charts[1] == c;
  };
  CHECK(has_chart(rays(2, {{1, 1}, {0, 1}})));
  CHECK(has_chart(rays(2, {{0, 1}, {-1, 1}})));
}

TEST_CASE("covers: positive and negative decisions") {
  Cone quad = rays(2, {{1, 0}, {0, 1}});
  CHECK(covers(quad, {rays(2, {{1, 0}, {1, 1}}), rays(2, {{1, 1}, {0, 1}})}).covered);
  CoveringCertificate gap = covers(quad, {rays(2, {{1, 0}, {2, 1}}), rays(2, {{1, 2}, {0, 1}})});
  CHECK_FALSE(gap.covered);
  REQUIRE(gap.witness.has_value());
  CHECK(quad.contains(*gap.witness));
  CHECK_FALSE(rays(2, {{1, 0}, {2, 1}}).contains(*gap.witness));
  CHECK_FALSE(rays(2, {{1, 2}, {0, 1}}).contains(*gap.witness));
}

TEST_CASE("covers: pieces may stick out of the target") {
  Cone quad = rays(2, {{1, 0}, {0, 1}});
  CHECK(covers(quad, {Cone::full_space(2)}).covered);
  CHECK(covers(quad, {rays(2, {{1, 0}, {-1, 1}}), rays(2, {{1, 1}, {0, 1}})}).covered);
}

TEST_CASE("covers: lower-dimensional target inside its span") {
  Cone ray = rays(3, {{1, 1, 0}});
  CHECK(covers(ray, {rays(3, {{1, 1, 0}, {0, 0, 1}})}).covered);
  CHECK_FALSE(covers(ray, {rays(3, {{1, 0, 0}, {0, 0, 1}})}).covered);
  CHECK(covers(Cone::zero(2), {rays(2, {{1, 0}})}).covered);
  CHECK_FALSE(covers(Cone::zero(2), {}).covered);
}

TEST_CASE("covers: the gap-merge octant is not covered by the two charts") {
  Cone octant = rays(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  std::vector<Cone> charts = {rays(3, {{1, 0, 0}, {0, 1, 0}}),
                              rays(3, {{1, 1, 0}, {0, 0, 1}})};
  CoveringCertificate c = covers(octant, charts);
  CHECK_FALSE(c.covered);
  REQUIRE(c.witness.has_value());
  CHECK(octant.contains(*c.witness));
  for (const auto& chart : charts) CHECK_FALSE(chart.contains(*c.witness));
}

TEST_CASE("support convexity") {
  Fan halfplane = fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}}), rays(2, {{0, 1}, {-1, 0}})});
  CHECK(support_is_convex(system_from_fan(halfplane)).convex);
  Fan wedge = fan_from_max_cones(2, {rays(2, {{1, 0}, {1, 1}}), rays(2, {{1, 2}, {0, 1}})});
  CHECK_FALSE(support_is_convex(system_from_fan(wedge)).convex);
}

TEST_CASE("fan equality, exact and up to unimodular change of coordinates") {
  Fan a = fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}})});
  Fan b = fan_from_max_cones(2, {rays(2, {{1, 0}, {1, 1}})});
  CHECK(fans_equal(a, a));
  CHECK_FALSE(fans_equal(a, b));
  CHECK(fans_equal(a, b, FanCompareMode::up_to_unimodular));
  Fan c = fan_from_max_cones(2, {rays(2, {{1, 0}, {1, 2}})});
  CHECK_FALSE(fans_equal(a, c, FanCompareMode::up_to_unimodular));  // index-2 cone
  Fan two = fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}}), rays(2, {{0, 1}, {-1, 0}})});
  CHECK_FALSE(fans_equal(a, two, FanCompareMode::up_to_unimodular));
}

TEST_CASE("fan equality across ranks restricts to the common span") {
  Fan plane2 = fan_from_max_cones(2, {rays(2, {{1, 0}, {0, 1}})});
  Fan plane3 = fan_from_max_cones(3, {rays(3, {{1, 0, 0}, {0, 1, 0}})});
  CHECK(fans_equal(plane2, plane3, FanCompareMode::up_to_unimodular));
  Fan other3 = fan_from_max_cones(3, {rays(3, {{1, 0, 0}, {1, 2, 0}})});
  CHECK_FALSE(fans_equal(plane2, other3, FanCompareMode::up_to_unimodular));
}
