#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "torq/cone.hpp"

namespace torq {

/// Finite face-to-face collection of cones given by its inclusion-maximal
/// members. With quasi = true a common lineality space is permitted.
struct Fan {
  int ambient_rank = 0;
  std::vector<Cone> max_cones;
  bool quasi = false;

  bool operator==(const Fan& o) const = default;
};

Fan fan_from_max_cones(int ambient_rank, const std::vector<Cone>& cones, bool quasi = false);

/// All faces of all maximal cones, deduplicated and sorted.
std::vector<Cone> fan_cones(const Fan& f, std::optional<int> dim = std::nullopt);

bool fan_support_contains(const Fan& f, const IntVector& v);

/// Toric prevariety data: strictly convex charts plus glueing subfans.
/// glueings[(i,j)] (stored for i < j) lists the maximal cones of the common
/// subfan Delta_ij; the fan itself is its face closure. Delta_ii is the fan
/// of faces of chart i.
struct AffineSystemOfFans {
  int ambient_rank = 0;
  std::vector<Cone> charts;
  std::map<std::pair<int, int>, std::vector<Cone>> glueings;

  std::vector<Cone> glue_fan(int i, int j) const;  // face closure of Delta_ij
  bool glued(int i, int j, const Cone& c) const;

  bool operator==(const AffineSystemOfFans& o) const = default;
};

AffineSystemOfFans system_from_charts(
    int ambient_rank, const std::vector<Cone>& charts,
    const std::map<std::pair<int, int>, std::vector<Cone>>& glueings);

/// A fan embeds as the system glueing chart pairs along their intersections.
AffineSystemOfFans system_from_fan(const Fan& f);

/// The largest valid system on the given charts: each pair is glued along
/// every cone that is a face of both charts and lies in their intersection.
/// Accepts chart collections that are not face-to-face.
AffineSystemOfFans system_from_charts_common_faces(int ambient_rank,
                                                   const std::vector<Cone>& charts);

/// C(S): all cones occurring in the system, optionally filtered by dimension.
std::vector<Cone> cones_of(const AffineSystemOfFans& s, std::optional<int> dim = std::nullopt);

bool support_contains(const AffineSystemOfFans& s, const IntVector& v);

struct LabelledFace {
  Cone cone;
  int chart;
  auto operator<=>(const LabelledFace& o) const = default;
};

struct OrbitClass {
  LabelledFace representative;
  std::vector<LabelledFace> members;
};

struct OrbitClasses {
  std::vector<OrbitClass> classes;
  /// class index of each labelled face
  std::map<std::pair<std::string, int>, int> class_of;

  int index_of(const LabelledFace& f) const;
  /// The orbit order: [tau,j] < [sigma,i] iff tau is a face of sigma and
  /// [tau,j] = [tau,i].
  bool precedes(const LabelledFace& tau_j, const LabelledFace& sigma_i) const;
};

OrbitClasses orbit_classes(const AffineSystemOfFans& s);

AffineSystemOfFans intersect_system_with_cone(const AffineSystemOfFans& s, const Cone& sigma);

struct CoveringCertificate {
  Cone target;
  std::vector<Cone> pieces;
  bool covered = false;
  std::optional<IntVector> witness;  // point of target outside all pieces
};

/// Exact covering decision: cell enumeration of the hyperplane arrangement
/// spanned by all facet data, restricted to span(target), one rational
/// interior sample per full-dimensional cell.
CoveringCertificate covers(const Cone& target, const std::vector<Cone>& pieces);

struct ConvexSupport {
  bool convex = false;
  Cone hull;
};
ConvexSupport support_is_convex(const AffineSystemOfFans& s);

enum class FanCompareMode { exact, up_to_unimodular };
bool fans_equal(const Fan& a, const Fan& b, FanCompareMode mode = FanCompareMode::exact);

}  // namespace torq
