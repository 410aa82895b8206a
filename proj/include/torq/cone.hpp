#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torq/lattice.hpp"
#include "torq/numeric.hpp"

namespace torq {

enum class Membership { outside, boundary, relative_interior };

/// Rational polyhedral cone in canonical dual-pair form.
///
/// Both descriptions are kept: extreme rays modulo lineality plus a lineality
/// basis on the generator side, facet normals plus span equations on the
/// inequality side. The representation is unique per geometric cone, so cone
/// equality is plain field equality:
///   - rays are primitive, orthogonally projected off the lineality space,
///     sorted lexicographically;
///   - the lineality and span lattices are saturated with HNF bases;
///   - facet normals are primitive, projected into the span, sorted.
class Cone {
 public:
  Cone() = default;

  static Cone from_rays(int ambient_rank, const std::vector<IntVector>& generators);
  static Cone from_inequalities(int ambient_rank, const std::vector<IntVector>& inequalities,
                                const std::vector<IntVector>& equations = {});
  static Cone zero(int ambient_rank);
  static Cone full_space(int ambient_rank);

  int ambient_rank() const { return ambient_rank_; }
  int dim() const { return dim_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const Sublattice& lineality() const { return lineality_; }
  const std::vector<IntVector>& facet_normals() const { return facet_normals_; }
  /// Basis of the linear equations cutting out the span (rows annihilate the cone).
  const std::vector<IntVector>& span_equations() const { return span_equations_; }

  bool is_strictly_convex() const { return lineality_.rank() == 0; }
  bool is_zero() const { return dim_ == 0; }
  bool is_linear_subspace() const { return facet_normals_.empty(); }

  /// Generators: rays plus +-lineality basis. Their conic hull is the cone.
  std::vector<IntVector> generators() const;

  Membership membership(const IntVector& v) const;
  bool contains(const IntVector& v) const { return membership(v) != Membership::outside; }
  bool contains(const Cone& sub) const;

  /// Deterministic integral relative interior point: sum of the canonical rays
  /// and the lineality basis vectors. The zero cone yields the zero vector.
  IntVector relative_interior_point() const;

  /// Total order compatible with equality; used for deterministic tie-breaks.
  std::strong_ordering operator<=>(const Cone& o) const;
  bool operator==(const Cone& o) const;

  std::string key() const;

 private:
  int ambient_rank_ = 0;
  int dim_ = 0;
  std::vector<IntVector> rays_;
  Sublattice lineality_;
  std::vector<IntVector> facet_normals_;
  std::vector<IntVector> span_equations_;
};

struct Face {
  Cone cone;
  /// Supporting normal in the dual of the parent; empty for the improper face.
  std::optional<IntVector> supporting_normal;
};

Cone dual(const Cone& c);
Cone intersect(const Cone& a, const Cone& b);
Cone sum(const Cone& a, const Cone& b);

/// Complete face lattice, including the cone itself and its minimal face,
/// sorted canonically.
std::vector<Face> faces(const Cone& c);

Cone minimal_face(const Cone& c);

/// True iff f is a face of c.
bool is_face_of(const Cone& f, const Cone& c);

/// The unique face of c whose relative interior meets the relative interior
/// of sub. Throws if sub is not contained in c.
Face smallest_face_containing(const Cone& c, const Cone& sub);

Cone image_cone(const Cone& c, const IntMatrix& a);
Cone preimage_cone(const Cone& c, const IntMatrix& a);

struct HalfspaceSplit {
  Cone pos, neg, zero;
};
HalfspaceSplit halfspace_split(const Cone& c, const IntVector& u);

/// Saturated lattice N `intersect` span(c).
Sublattice span_lattice(const Cone& c);

/// The span of c as a cone (a linear subspace).
Cone span_cone(const Cone& c);

}  // namespace torq
