#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torq/errors.hpp"
#include "torq/lattice.hpp"

using namespace torq;

TEST_CASE("hermite normal form basics") {
  IntMatrix m{{2, 4}, {1, 3}};
  HnfResult r = hermite_normal_form(m);
  CHECK(r.h == IntMatrix{{1, 1}, {0, 2}});
  CHECK(r.u * m == r.h);
  Integer du = determinant(r.u);
  CHECK((du == 1 || du == -1));
}

TEST_CASE("hermite normal form: zero rows sink, pivots positive") {
  IntMatrix m{{0, 0, 0}, {0, 2, 4}, {0, -1, -2}};
  HnfResult r = hermite_normal_form(m);
  CHECK(r.h.at(0, 1) == 1);
  CHECK(r.h.at(0, 2) == 2);
  for (int c = 0; c < 3; ++c) {
    CHECK(r.h.at(1, c) == 0);
    CHECK(r.h.at(2, c) == 0);
  }
  CHECK(r.u * m == r.h);
}

TEST_CASE("smith normal form") {
  IntMatrix m{{2, 4}, {1, 3}};
  SnfResult r = smith_normal_form(m);
  CHECK(r.d == r.u * m * r.v);
  CHECK(r.d.at(0, 0) == 1);
  CHECK(r.d.at(1, 1) == 2);
  CHECK(r.d.at(0, 1) == 0);
  CHECK(r.d.at(1, 0) == 0);
}

TEST_CASE("smith normal form divisibility on a rectangular matrix") {
  IntMatrix m{{6, 10, 15}, {4, 6, 6}};
  SnfResult r = smith_normal_form(m);
  CHECK(r.d == r.u * m * r.v);
  Integer d0 = r.d.at(0, 0), d1 = r.d.at(1, 1);
  CHECK(d0 > 0);
  CHECK(d1 % d0 == 0);
}

TEST_CASE("kernel lattice of a single functional") {
  IntMatrix a{{1, 0, 1, -1}};
  Sublattice k = kernel_lattice(a);
  CHECK(k.rank() == 3);
  CHECK(k.saturated);
  for (const auto& row : k.basis.row_list()) CHECK(dot(a.row(0), row) == 0);
}

TEST_CASE("kernel of the rank-3 projection is the expected line") {
  IntMatrix p{{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 1}};
  Sublattice k = kernel_lattice(p);
  CHECK(k.rank() == 1);
  CHECK(k.basis.row(0) == IntVector{1, 0, 1, -1});
}

TEST_CASE("saturation") {
  Sublattice l = Sublattice::from_generators(2, {{2, 0}});
  Sublattice s = saturate(l);
  CHECK(s.rank() == 1);
  CHECK(s.basis.row(0) == IntVector{1, 0});
  Sublattice diag = Sublattice::from_generators(2, {{1, 1}});
  CHECK(saturate(diag).basis == canonicalize(diag).basis);
}

TEST_CASE("saturated sum") {
  Sublattice a = Sublattice::from_generators(3, {{2, 0, 0}});
  Sublattice b = Sublattice::from_generators(3, {{0, 3, 0}});
  Sublattice s = saturated_sum(a, b);
  CHECK(s.rank() == 2);
  CHECK(s.contains({1, 0, 0}));
  CHECK(s.contains({0, 1, 0}));
  CHECK_FALSE(s.contains({0, 0, 1}));
}

TEST_CASE("quotient projection by a coordinate line") {
  QuotientLattice q = quotient_projection(2, Sublattice::from_generators(2, {{0, 1}}, true));
  CHECK(q.target_rank == 1);
  CHECK(q.projection == IntMatrix{{1, 0}});
  CHECK(q.projection * q.section == IntMatrix::identity(1));
}

TEST_CASE("quotient projection kills exactly the sublattice") {
  Sublattice l = Sublattice::from_generators(4, {{1, 0, 1, -1}}, true);
  QuotientLattice q = quotient_projection(4, l);
  CHECK(q.target_rank == 3);
  CHECK(torq::is_zero(q.projection * IntVector{1, 0, 1, -1}));
  CHECK(q.projection * q.section == IntMatrix::identity(3));
  CHECK(kernel_lattice(q.projection).basis == canonicalize(l).basis);
}

TEST_CASE("quotient projection rejects unsaturated input") {
  Sublattice l = Sublattice::from_generators(2, {{2, 0}});
  CHECK_THROWS_AS(quotient_projection(2, l), NotSaturated);
}

TEST_CASE("quotient by the zero lattice is the identity") {
  QuotientLattice q = quotient_projection(3, Sublattice::zero(3));
  CHECK(q.projection == IntMatrix::identity(3));
  CHECK(q.target_rank == 3);
}

TEST_CASE("quotient by the full lattice is the zero-rank map") {
  QuotientLattice q = quotient_projection(2, Sublattice::full(2));
  CHECK(q.target_rank == 0);
  CHECK(q.projection.rows() == 0);
  CHECK(q.projection.cols() == 2);
}

TEST_CASE("unimodular inverse") {
  IntMatrix u{{1, 2}, {0, 1}};
  CHECK(unimodular_inverse(u) * u == IntMatrix::identity(2));
  CHECK(u * unimodular_inverse(u) == IntMatrix::identity(2));
}

TEST_CASE("determinant via exact elimination") {
  CHECK(determinant(IntMatrix{{2, 4}, {1, 3}}) == 2);
  CHECK(determinant(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}) == -3);
  CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("sublattice membership") {
  Sublattice l = Sublattice::from_generators(3, {{1, 0, 1}, {0, 2, 0}});
  CHECK(l.contains({1, 2, 1}));
  CHECK_FALSE(l.contains({1, 1, 1}));
  CHECK_FALSE(l.contains({1, 0, 0}));
}
