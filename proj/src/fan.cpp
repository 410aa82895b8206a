#include "torq/fan.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "torq/errors.hpp"

namespace torq {

namespace {

std::vector<Cone> dedup_cones(std::vector<Cone> cones) {
  std::sort(cones.begin(), cones.end());
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  return cones;
}

std::vector<Cone> face_closure(const std::vector<Cone>& cones) {
  std::vector<Cone> out;
  for (const auto& c : cones)
    for (const auto& f : faces(c)) out.push_back(f.cone);
  return dedup_cones(std::move(out));
}

std::vector<Cone> maximal_elements(std::vector<Cone> cones) {
  cones = dedup_cones(std::move(cones));
  std::vector<Cone> out;
  for (size_t i = 0; i < cones.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < cones.size() && !dominated; ++j)
      if (i != j && cones[j].contains(cones[i]) && !(cones[i] == cones[j])) dominated = true;
    if (!dominated) out.push_back(cones[i]);
  }
  return out;
}

}  // namespace

Fan fan_from_max_cones(int ambient_rank, const std::vector<Cone>& cones, bool quasi) {
  for (const auto& c : cones)
    if (c.ambient_rank() != ambient_rank)
      throw DimensionMismatch("fan: cone ambient rank mismatch");
  Fan f;
  f.ambient_rank = ambient_rank;
  f.quasi = quasi;
  f.max_cones = maximal_elements(cones);
  if (!quasi) {
    for (const auto& c : f.max_cones)
      if (!c.is_strictly_convex())
        throw NotStrictlyConvex("fan: cone " + c.key() + " has nonzero lineality");
  } else {
    // Quasi-fan axiom: all cones share the common lineality space V(Sigma).
    for (size_t i = 1; i < f.max_cones.size(); ++i)
      if (!(f.max_cones[i].lineality() == f.max_cones[0].lineality()))
        throw FaceToFaceViolation("quasi-fan: cones do not share a common lineality space");
  }
  for (size_t i = 0; i < f.max_cones.size(); ++i)
    for (size_t j = i + 1; j < f.max_cones.size(); ++j) {
      Cone meet = intersect(f.max_cones[i], f.max_cones[j]);
      if (!is_face_of(meet, f.max_cones[i]) || !is_face_of(meet, f.max_cones[j]))
        throw FaceToFaceViolation("fan: cones " + f.max_cones[i].key() + " and " +
                                  f.max_cones[j].key() + " do not meet in a common face");
    }
  return f;
}

std::vector<Cone> fan_cones(const Fan& f, std::optional<int> dim) {
  std::vector<Cone> all = face_closure(f.max_cones);
  if (!dim) return all;
  std::vector<Cone> out;
  for (auto& c : all)
    if (c.dim() == *dim) out.push_back(std::move(c));
  return out;
}

bool fan_support_contains(const Fan& f, const IntVector& v) {
  for (const auto& c : f.max_cones)
    if (c.contains(v)) return true;
  return false;
}

std::vector<Cone> AffineSystemOfFans::glue_fan(int i, int j) const {
  if (i == j) {
    std::vector<Cone> out;
    for (const auto& f : faces(charts[i])) out.push_back(f.cone);
    return dedup_cones(std::move(out));
  }
  auto it = glueings.find({std::min(i, j), std::max(i, j)});
  std::vector<Cone> listed;
  if (it != glueings.end()) listed = it->second;
  listed.push_back(Cone::zero(ambient_rank));  // the torus is always shared
  return face_closure(listed);
}

bool AffineSystemOfFans::glued(int i, int j, const Cone& c) const {
  auto fan = glue_fan(i, j);
  return std::binary_search(fan.begin(), fan.end(), c);
}

AffineSystemOfFans system_from_charts(
    int ambient_rank, const std::vector<Cone>& charts,
    const std::map<std::pair<int, int>, std::vector<Cone>>& glueings) {
  if (charts.empty()) throw ValidationError("system of fans requires at least one chart");
  for (const auto& c : charts) {
    if (c.ambient_rank() != ambient_rank)
      throw DimensionMismatch("system: chart ambient rank mismatch");
    if (!c.is_strictly_convex())
      throw NotStrictlyConvex("system: chart " + c.key() + " is not strictly convex");
  }
  AffineSystemOfFans s;
  s.ambient_rank = ambient_rank;
  s.charts = charts;
  int nc = static_cast<int>(charts.size());
  for (const auto& [idx, cones] : glueings) {
    auto [i, j] = idx;
    if (i < 0 || j < 0 || i >= nc || j >= nc)
      throw ValidationError("system: glueing refers to a missing chart");
    if (i == j) continue;  // Delta_ii is implied
    auto key = std::make_pair(std::min(i, j), std::max(i, j));
    auto mirror = glueings.find(std::make_pair(key.second, key.first));
    if (mirror != glueings.end() && dedup_cones(mirror->second) != dedup_cones(cones))
      throw SymmetryViolation("system: Delta_ij and Delta_ji differ");
    auto& slot = s.glueings[key];
    for (const auto& c : cones) slot.push_back(c);
    slot = dedup_cones(std::move(slot));
  }
  // Every glue cone is a face of both charts.
  for (const auto& [idx, cones] : s.glueings)
    for (const auto& c : cones) {
      if (!is_face_of(c, charts[idx.first]) || !is_face_of(c, charts[idx.second]))
        throw NotSubfan("system: glue cone " + c.key() + " is not a common face of charts " +
                        std::to_string(idx.first) + "," + std::to_string(idx.second));
    }
  // Triple condition Delta_ij ^ Delta_jk <= Delta_ik on face closures.
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j)
      for (int k = 0; k < nc; ++k) {
        if (i == j || j == k || i == k) continue;
        auto dij = s.glue_fan(i, j);
        auto djk = s.glue_fan(j, k);
        auto dik = s.glue_fan(i, k);
        for (const auto& c : dij)
          if (std::binary_search(djk.begin(), djk.end(), c) &&
              !std::binary_search(dik.begin(), dik.end(), c))
            throw TripleConditionViolation("system: triple condition fails for cone " + c.key() +
                                           " at charts " + std::to_string(i) + "," +
                                           std::to_string(j) + "," + std::to_string(k));
      }
  return s;
}

AffineSystemOfFans system_from_fan(const Fan& f) {
  if (f.max_cones.empty())
    return system_from_charts(f.ambient_rank, {Cone::zero(f.ambient_rank)}, {});
  std::map<std::pair<int, int>, std::vector<Cone>> glue;
  for (size_t i = 0; i < f.max_cones.size(); ++i)
    for (size_t j = i + 1; j < f.max_cones.size(); ++j)
      glue[{static_cast<int>(i), static_cast<int>(j)}] = {
          intersect(f.max_cones[i], f.max_cones[j])};
  return system_from_charts(f.ambient_rank, f.max_cones, glue);
}

AffineSystemOfFans system_from_charts_common_faces(int ambient_rank,
                                                   const std::vector<Cone>& charts) {
  std::map<std::pair<int, int>, std::vector<Cone>> glue;
  for (size_t i = 0; i < charts.size(); ++i)
    for (size_t j = i + 1; j < charts.size(); ++j) {
      const Cone meet = intersect(charts[i], charts[j]);
      std::vector<Cone> common;
      for (const Face& f : faces(meet))
        if (is_face_of(f.cone, charts[i]) && is_face_of(f.cone, charts[j]))
          common.push_back(f.cone);
      glue[{static_cast<int>(i), static_cast<int>(j)}] = std::move(common);
    }
  return system_from_charts(ambient_rank, charts, glue);
}

std::vector<Cone> cones_of(const AffineSystemOfFans& s, std::optional<int> dim) {
  std::vector<Cone> all = face_closure(s.charts);
  if (!dim) return all;
  std::vector<Cone> out;
  for (auto& c : all)
    if (c.dim() == *dim) out.push_back(std::move(c));
  return out;
}

bool support_contains(const AffineSystemOfFans& s, const IntVector& v) {
  for (const auto& c : s.charts)
    if (c.contains(v)) return true;
  return false;
}

int OrbitClasses::index_of(const LabelledFace& f) const {
  auto it = class_of.find({f.cone.key(), f.chart});
  if (it == class_of.end()) throw ValidationError("labelled face not in system");
  return it->second;
}

bool OrbitClasses::precedes(const LabelledFace& tau_j, const LabelledFace& sigma_i) const {
  if (!is_face_of(tau_j.cone, sigma_i.cone)) return false;
  return index_of(tau_j) == index_of({tau_j.cone, sigma_i.chart});
}

OrbitClasses orbit_classes(const AffineSystemOfFans& s) {
  std::vector<LabelledFace> labelled;
  for (int i = 0; i < static_cast<int>(s.charts.size()); ++i)
    for (const auto& f : faces(s.charts[i])) labelled.push_back({f.cone, i});
  std::sort(labelled.begin(), labelled.end(),
            [](const LabelledFace& a, const LabelledFace& b) {
              if (a.cone < b.cone) return true;
              if (b.cone < a.cone) return false;
              return a.chart < b.chart;
            });

  // Union-find over labelled faces under the glueing relation.
  std::vector<int> parent(labelled.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto locate = [&](const Cone& c, int chart) {
    LabelledFace probe{c, chart};
    auto it = std::lower_bound(labelled.begin(), labelled.end(), probe,
                               [](const LabelledFace& a, const LabelledFace& b) {
                                 if (a.cone < b.cone) return true;
                                 if (b.cone < a.cone) return false;
                                 return a.chart < b.chart;
                               });
    assert(it != labelled.end() && it->cone == c && it->chart == chart);
    return static_cast<int>(it - labelled.begin());
  };
  int nc = static_cast<int>(s.charts.size());
  for (int i = 0; i < nc; ++i)
    for (int j = i + 1; j < nc; ++j)
      for (const auto& c : s.glue_fan(i, j)) {
        int a = find(locate(c, i));
        int b = find(locate(c, j));
        if (a != b) parent[b] = a;
      }

  OrbitClasses out;
  std::map<int, int> root_to_class;
  for (size_t i = 0; i < labelled.size(); ++i) {
    int r = find(static_cast<int>(i));
    auto [it, fresh] = root_to_class.emplace(r, static_cast<int>(out.classes.size()));
    if (fresh) out.classes.push_back({labelled[i], {}});
    out.classes[it->second].members.push_back(labelled[i]);
    out.class_of[{labelled[i].cone.key(), labelled[i].chart}] = it->second;
  }
  return out;
}

AffineSystemOfFans intersect_system_with_cone(const AffineSystemOfFans& s, const Cone& sigma) {
  std::vector<Cone> charts;
  for (const auto& c : s.charts) charts.push_back(intersect(c, sigma));
  std::map<std::pair<int, int>, std::vector<Cone>> glue;
  for (const auto& [idx, cones] : s.glueings) {
    std::vector<Cone> cut;
    for (const auto& c : cones) cut.push_back(intersect(c, sigma));
    glue[idx] = dedup_cones(std::move(cut));
  }
  return system_from_charts(s.ambient_rank, charts, glue);
}

namespace {

// Map an ambient vector lying in the span into coordinates of the span basis.
IntVector span_coordinates(const std::vector<IntVector>& basis, const IntVector& v) {
  size_t d = basis.size(), n = v.size();
  std::vector<IntVector> bt(n, IntVector(d));
  for (size_t c = 0; c < n; ++c)
    for (size_t r = 0; r < d; ++r) bt[c][r] = basis[r][c];
  RatVector rhs(n);
  for (size_t i = 0; i < n; ++i) rhs[i] = Rational(v[i]);
  RatVector x;
  bool ok = solve_rational(bt, rhs, x);
  if (!ok) throw PreconditionViolated("vector not in span");
  IntVector out(d);
  for (size_t i = 0; i < d; ++i) {
    Rational r = x[i];
    r.canonicalize();
    assert(r.get_den() == 1);
    out[i] = r.get_num();
  }
  return out;
}

IntVector span_lift(const std::vector<IntVector>& basis, const IntVector& coords) {
  size_t n = basis.empty() ? 0 : basis[0].size();
  IntVector out(n, Integer(0));
  for (size_t i = 0; i < basis.size(); ++i) out = add(out, scale(coords[i], basis[i]));
  return out;
}

Cone restrict_cone(const std::vector<IntVector>& basis, const Cone& c) {
  std::vector<IntVector> gens;
  for (const auto& g : c.generators()) gens.push_back(span_coordinates(basis, g));
  return Cone::from_rays(static_cast<int>(basis.size()), gens);
}

IntVector sign_normalized(const IntVector& v) {
  for (const auto& x : v) {
    if (x > 0) return v;
    if (x < 0) return negate(v);
  }
  return v;
}

}  // namespace

CoveringCertificate covers(const Cone& target, const std::vector<Cone>& pieces) {
  for (const auto& p : pieces)
    if (p.ambient_rank() != target.ambient_rank())
      throw DimensionMismatch("covers: ambient rank mismatch");
  CoveringCertificate cert;
  cert.target = target;
  cert.pieces = pieces;

  if (target.is_zero()) {
    cert.covered = !pieces.empty();
    if (!cert.covered) cert.witness = IntVector(target.ambient_rank(), Integer(0));
    return cert;
  }

  std::vector<IntVector> basis = span_lattice(target).basis.row_list();
  int d = target.dim();
  Cone target_c = restrict_cone(basis, target);
  Cone span = span_cone(target);

  // Arrangement hyperplanes in span coordinates: facet data of the target and
  // of every piece restricted to the span.
  std::vector<IntVector> planes;
  auto push_plane = [&](const IntVector& u) {
    IntVector s = sign_normalized(primitive(u));
    if (is_zero(s)) return;
    if (std::find(planes.begin(), planes.end(), s) == planes.end()) planes.push_back(s);
  };
  for (const auto& u : target_c.facet_normals()) push_plane(u);
  for (const auto& p : pieces) {
    Cone cut = intersect(p, span);
    if (cut.is_zero()) continue;
    Cone pc = restrict_cone(basis, cut);
    for (const auto& u : pc.facet_normals()) push_plane(u);
    for (const auto& e : pc.span_equations()) push_plane(e);
  }

  std::vector<Cone> cells{target_c};
  for (const auto& h : planes) {
    std::vector<Cone> next;
    for (const auto& cell : cells) {
      HalfspaceSplit split = halfspace_split(cell, h);
      if (split.pos.dim() == d) next.push_back(split.pos);
      if (split.neg.dim() == d && !(split.neg == split.pos)) next.push_back(split.neg);
    }
    cells = std::move(next);
  }

  for (const auto& cell : cells) {
    IntVector sample = span_lift(basis, cell.relative_interior_point());
    bool hit = false;
    for (const auto& p : pieces)
      if (p.contains(sample)) {
        hit = true;
        break;
      }
    if (!hit) {
      cert.covered = false;
      cert.witness = sample;
      return cert;
    }
  }
  cert.covered = true;
  return cert;
}

ConvexSupport support_is_convex(const AffineSystemOfFans& s) {
  Cone hull = Cone::zero(s.ambient_rank);
  for (const auto& c : s.charts) hull = sum(hull, c);
  ConvexSupport out;
  out.hull = hull;
  out.convex = covers(hull, s.charts).covered;
  return out;
}

namespace {

std::vector<IntVector> all_fan_rays(const Fan& f) {
  std::vector<IntVector> rays;
  for (const auto& c : f.max_cones)
    for (const auto& r : c.rays()) rays.push_back(r);
  std::sort(rays.begin(), rays.end(), lex_less);
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  return rays;
}

bool fan_has_lineality(const Fan& f) {
  for (const auto& c : f.max_cones)
    if (!c.is_strictly_convex()) return true;
  return false;
}

bool sorted_cones_equal(std::vector<Cone> a, std::vector<Cone> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

bool unimodular_match(const Fan& a, const Fan& b) {
  // Search for a unimodular map sending the maximal cones of a onto those of b,
  // determined by images of a rank-sized independent subset of a's rays.
  int n = a.ambient_rank;
  std::vector<IntVector> ra = all_fan_rays(a), rb = all_fan_rays(b);
  if (ra.size() != rb.size()) return false;
  if (ra.empty()) return a.max_cones.size() == b.max_cones.size();

  // Greedy deterministic independent subset of ra.
  std::vector<IntVector> base;
  for (const auto& r : ra) {
    base.push_back(r);
    if (rational_rank(base) != static_cast<int>(base.size())) base.pop_back();
  }
  int k = static_cast<int>(base.size());
  if (k != rational_rank(rb)) return false;
  if (k < n || k < b.ambient_rank) {
    // Work inside the saturated span of each side and compare there.
    Sublattice sa = saturate(Sublattice::from_generators(n, ra));
    Sublattice sb = saturate(Sublattice::from_generators(b.ambient_rank, rb));
    auto restrict_fan = [](const Fan& f, const Sublattice& s) {
      std::vector<Cone> cones;
      for (const auto& c : f.max_cones) cones.push_back(restrict_cone(s.basis.row_list(), c));
      Fan out;
      out.ambient_rank = s.rank();
      out.max_cones = dedup_cones(std::move(cones));
      out.quasi = f.quasi;
      return out;
    };
    return unimodular_match(restrict_fan(a, sa), restrict_fan(b, sb));
  }

  // Enumerate ordered k-tuples of distinct rays of b as candidate images.
  std::vector<int> pick(k, -1);
  std::vector<bool> used(rb.size(), false);
  std::vector<IntVector> image(k);
  auto try_map = [&]() -> bool {
    // Solve U * base_i = image_i; unknowns are the rows of U.
    IntMatrix u(n, n);
    for (int row = 0; row < n; ++row) {
      RatVector rhs(k);
      for (int i = 0; i < k; ++i) rhs[i] = Rational(image[i][row]);
      // bm^T u_row = rhs, i.e. base_i . u_row = image_i[row]
      RatVector x;
      if (!solve_rational(base, rhs, x)) return false;
      for (int c = 0; c < n; ++c) {
        Rational r = x[c];
        r.canonicalize();
        if (r.get_den() != 1) return false;
        u.at(row, c) = r.get_num();
      }
    }
    Integer det = determinant(u);
    if (det != 1 && det != -1) return false;
    std::vector<Cone> mapped;
    for (const auto& c : a.max_cones) mapped.push_back(image_cone(c, u));
    return sorted_cones_equal(mapped, b.max_cones);
  };
  // depth-first over tuples
  std::function<bool(int)> rec = [&](int depth) -> bool {
    if (depth == k) return try_map();
    for (size_t i = 0; i < rb.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      image[depth] = rb[i];
      if (rec(depth + 1)) {
        used[i] = false;
        return true;
      }
      used[i] = false;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

bool fans_equal(const Fan& a, const Fan& b, FanCompareMode mode) {
  if (mode == FanCompareMode::exact) {
    if (a.ambient_rank != b.ambient_rank) return false;
    return sorted_cones_equal(a.max_cones, b.max_cones);
  }
  if (a.max_cones.size() != b.max_cones.size()) return false;
  if (fan_has_lineality(a) || fan_has_lineality(b))
    return a.ambient_rank == b.ambient_rank && sorted_cones_equal(a.max_cones, b.max_cones);
  if (a.ambient_rank == b.ambient_rank && sorted_cones_equal(a.max_cones, b.max_cones))
    return true;
  return unimodular_match(a, b);
}

}  // namespace torq
