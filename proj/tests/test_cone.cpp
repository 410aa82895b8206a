#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torq/cone.hpp"
#include "torq/errors.hpp"

using namespace torq;

TEST_CASE("octant canonical form") {
  Cone c = Cone::from_rays(3, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  CHECK(c.dim() == 3);
  CHECK(c.is_strictly_convex());
  CHECK(c.rays() == std::vector<IntVector>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  CHECK(c.facet_normals() == std::vector<IntVector>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  CHECK(c.span_equations().empty());
}

TEST_CASE("redundant generators are dropped") {
  Cone a = Cone::from_rays(2, {{1, 0}, {0, 1}, {1, 1}, {2, 2}});
  Cone b = Cone::from_rays(2, {{1, 0}, {0, 1}});
  CHECK(a == b);
  CHECK(a.key() == b.key());
}

TEST_CASE("non-primitive generators normalize") {
  Cone a = Cone::from_rays(2, {{3, 0}, {0, 7}});
  CHECK(a.rays() == std::vector<IntVector>{{0, 1}, {1, 0}});
}

TEST_CASE("halfplane has lineality") {
  Cone c = Cone::from_rays(2, {{1, 0}, {-1, 0}, {0, 1}});
  CHECK(c.dim() == 2);
  CHECK_FALSE(c.is_strictly_convex());
  CHECK(c.lineality().rank() == 1);
  CHECK(c.lineality().basis.row(0) == IntVector{1, 0});
  CHECK(c.rays() == std::vector<IntVector>{{0, 1}});
  CHECK(c.facet_normals() == std::vector<IntVector>{{0, 1}});
}

TEST_CASE("zero and full cones") {
  Cone z = Cone::zero(3);
  CHECK(z.dim() == 0);
  CHECK(z.is_zero());
  CHECK(z.span_equations().size() == 3);
  Cone f = Cone::full_space(3);
  CHECK(f.dim() == 3);
  CHECK(f.is_linear_subspace());
  CHECK(f.facet_normals().empty());
  CHECK(dual(z) == f);
  CHECK(dual(f) == z);
}

TEST_CASE("dual of the octant is the octant") {
  Cone c = Cone::from_rays(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(dual(c) == c);
  CHECK(dual(dual(c)) == c);
}

TEST_CASE("dual of a low-dimensional cone") {
  Cone ray = Cone::from_rays(2, {{1, 0}});
  Cone d = dual(ray);
  // dual = {u : u1 >= 0}, a halfplane
  CHECK(d.dim() == 2);
  CHECK(d.lineality().rank() == 1);
  CHECK(d.contains(IntVector{1, 5}));
  CHECK(d.contains(IntVector{0, -3}));
  CHECK_FALSE(d.contains(IntVector{-1, 0}));
  CHECK(dual(d) == ray);
}

TEST_CASE("membership trichotomy") {
  Cone c = Cone::from_rays(2, {{1, 0}, {1, 2}});
  CHECK(c.membership({1, 1}) == Membership::relative_interior);
  CHECK(c.membership({1, 0}) == Membership::boundary);
  CHECK(c.membership({0, 0}) == Membership::boundary);
  CHECK(c.membership({-1, 0}) == Membership::outside);
  CHECK(c.membership({0, 1}) == Membership::outside);
}

TEST_CASE("containment of cones") {
  Cone big = Cone::from_rays(2, {{1, 0}, {0, 1}});
  Cone small = Cone::from_rays(2, {{1, 1}, {1, 2}});
  CHECK(big.contains(small));
  CHECK_FALSE(small.contains(big));
}

TEST_CASE("intersection of adjacent quadrant cones in rank 3") {
  Cone a = Cone::from_rays(3, {{1, 0, 0}, {0, 1, 0}});
  Cone b = Cone::from_rays(3, {{0, 1, 0}, {0, 0, 1}});
  CHECK(intersect(a, b) == Cone::from_rays(3, {{0, 1, 0}}));
}

TEST_CASE("sum of rays") {
  Cone a = Cone::from_rays(2, {{1, 0}});
  Cone b = Cone::from_rays(2, {{0, 1}});
  CHECK(sum(a, b) == Cone::from_rays(2, {{1, 0}, {0, 1}}));
}

TEST_CASE("face lattice of the octant") {
  Cone c = Cone::from_rays(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  auto fs = faces(c);
  CHECK(fs.size() == 8);
  int by_dim[4] = {0, 0, 0, 0};
  for (const auto& f : fs) ++by_dim[f.cone.dim()];
  CHECK(by_dim[0] == 1);
  CHECK(by_dim[1] == 3);
  CHECK(by_dim[2] == 3);
  CHECK(by_dim[3] == 1);
  for (const auto& f : fs) CHECK(is_face_of(f.cone, c));
}

TEST_CASE("faces of a cone with lineality never split the lineality") {
  Cone c = Cone::from_rays(3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  for (const auto& f : faces(c)) {
    CHECK(f.cone.lineality().rank() == 1);
    CHECK(is_face_of(f.cone, c));
  }
  CHECK(minimal_face(c) == Cone::from_rays(3, {{1, 0, 0}, {-1, 0, 0}}));
}

TEST_CASE("smallest face containing a subcone") {
  Cone c = Cone::from_rays(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  Cone diag = Cone::from_rays(3, {{1, 1, 0}});
  Face f = smallest_face_containing(c, diag);
  CHECK(f.cone == Cone::from_rays(3, {{1, 0, 0}, {0, 1, 0}}));
  Cone inner = Cone::from_rays(3, {{1, 1, 1}});
  CHECK(smallest_face_containing(c, inner).cone == c);
  CHECK(smallest_face_containing(c, Cone::zero(3)).cone == Cone::zero(3));
}

TEST_CASE("image and preimage cones") {
  IntMatrix drop_z{{1, 0, 0}, {0, 1, 0}};
  Cone oct = Cone::from_rays(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(image_cone(oct, drop_z) == Cone::from_rays(2, {{1, 0}, {0, 1}}));
  Cone quad = Cone::from_rays(2, {{1, 0}, {0, 1}});
  Cone pre = preimage_cone(quad, drop_z);
  CHECK(pre.dim() == 3);
  CHECK(pre.lineality().rank() == 1);
  CHECK(pre.contains(IntVector{1, 1, -7}));
  CHECK_FALSE(pre.contains(IntVector{-1, 0, 0}));
}

TEST_CASE("halfspace split") {
  Cone quad = Cone::from_rays(2, {{1, 0}, {0, 1}});
  HalfspaceSplit s = halfspace_split(quad, {1, -1});
  CHECK(s.pos == Cone::from_rays(2, {{1, 0}, {1, 1}}));
  CHECK(s.neg == Cone::from_rays(2, {{1, 1}, {0, 1}}));
  CHECK(s.zero == Cone::from_rays(2, {{1, 1}}));
}

TEST_CASE("relative interior point is interior") {
  for (const Cone& c : {Cone::from_rays(2, {{1, 0}, {0, 1}}),
                        Cone::from_rays(3, {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}}),
                        Cone::from_rays(2, {{1, 0}, {-1, 0}})}) {
    CHECK(c.membership(c.relative_interior_point()) == Membership::relative_interior);
  }
  CHECK(Cone::zero(2).relative_interior_point() == IntVector{0, 0});
}

TEST_CASE("inequality construction matches ray construction") {
  Cone c = Cone::from_inequalities(2, {{1, 0}, {-1, 2}});
  CHECK(c == Cone::from_rays(2, {{0, 1}, {2, 1}}));
  Cone line = Cone::from_inequalities(2, {}, {{0, 1}});
  CHECK(line == Cone::from_rays(2, {{1, 0}, {-1, 0}}));
}

TEST_CASE("span lattice and span cone") {
  Cone c = Cone::from_rays(3, {{1, 1, 0}, {1, -1, 0}});
  Sublattice s = span_lattice(c);
  CHECK(s.rank() == 2);
  CHECK(s.saturated);
  CHECK(s.contains({1, 0, 0}));
  Cone sp = span_cone(c);
  CHECK(sp.is_linear_subspace());
  CHECK(sp.dim() == 2);
  CHECK(sp.contains(IntVector{-5, 3, 0}));
  CHECK_FALSE(sp.contains(IntVector{0, 0, 1}));
}

TEST_CASE("4d example cones are three-dimensional with four extreme rays") {
  std::vector<Cone> cones = {
      Cone::from_rays(4, {{0, 0, 1, 0}, {0, 1, 1, 0}, {1, 1, 1, 0}, {1, 0, 1, 0}}),
      Cone::from_rays(4, {{1, 0, 0, 0}, {1, 0, 1, 0}, {1, 1, 1, 0}, {1, 1, 0, 0}}),
      Cone::from_rays(4, {{0, 1, 0, 0}, {1, 1, 0, 0}, {1, 1, 1, 0}, {0, 1, 1, 0}})};
  for (const auto& c : cones) {
    CHECK(c.dim() == 3);
    CHECK(c.rays().size() == 4);
    CHECK(c.is_strictly_convex());
  }
  Cone sigma4 = Cone::from_rays(4, {{1, 0, 0, 0}, {1, -1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(sigma4.dim() == 4);
  CHECK(sigma4.rays().size() == 4);
}

TEST_CASE("deterministic total order") {
  Cone a = Cone::from_rays(2, {{1, 0}});
  Cone b = Cone::from_rays(2, {{0, 1}});
  CHECK(((a < b) != (b < a)));
  CHECK(a == Cone::from_rays(2, {{2, 0}}));
}
