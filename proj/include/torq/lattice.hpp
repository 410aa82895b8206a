#pragma once

#include <optional>
#include <vector>

#include "torq/numeric.hpp"

namespace torq {

/// A sublattice of Z^n given by a row basis. The basis rows are linearly
/// independent over the rationals. When `saturated` holds, the sublattice
/// equals its saturation, i.e. Z^n / L is torsion-free.
struct Sublattice {
  int ambient_rank = 0;
  IntMatrix basis;  // rank() x ambient_rank
  bool saturated = false;

  int rank() const { return basis.rows(); }
  bool operator==(const Sublattice& o) const = default;

  static Sublattice zero(int ambient_rank);
  static Sublattice full(int ambient_rank);
  static Sublattice from_generators(int ambient_rank, const std::vector<IntVector>& gens,
                                    bool saturated = false);
  bool contains(const IntVector& v) const;  // integral membership
};

/// Surjective projection Z^n -> Z^k with a designated kernel sublattice and
/// an integral right inverse as surjectivity witness.
struct QuotientLattice {
  int source_rank = 0;
  int target_rank = 0;
  IntMatrix projection;  // target_rank x source_rank
  Sublattice kernel;
  IntMatrix section;  // source_rank x target_rank, projection * section = id
};

struct HnfResult {
  IntMatrix h;  // row Hermite normal form
  IntMatrix u;  // unimodular, u * m = h
};

/// Row Hermite normal form: pivots positive, entries above a pivot reduced
/// into [0, pivot), zero rows at the bottom.
HnfResult hermite_normal_form(const IntMatrix& m);

struct SnfResult {
  IntMatrix d;  // diagonal, d = u * m * v
  IntMatrix u;  // unimodular
  IntMatrix v;  // unimodular
};

SnfResult smith_normal_form(const IntMatrix& m);

/// Saturated sublattice {v : A v = 0}, canonical HNF basis.
Sublattice kernel_lattice(const IntMatrix& a);

/// Smallest saturated sublattice containing L (same rational span).
Sublattice saturate(const Sublattice& l);

/// Canonical representative: HNF of the basis. Does not change the lattice.
Sublattice canonicalize(const Sublattice& l);

/// Sum of sublattices followed by saturation.
Sublattice saturated_sum(const Sublattice& a, const Sublattice& b);

/// Projection of Z^n by a saturated sublattice L. Rejects unsaturated input.
/// The projection matrix is normalized to row Hermite form, which makes the
/// construction deterministic.
QuotientLattice quotient_projection(int ambient_rank, const Sublattice& l);

/// Exact integer inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& u);

/// Determinant of a square integer matrix (Bareiss elimination).
Integer determinant(const IntMatrix& m);

}  // namespace torq
