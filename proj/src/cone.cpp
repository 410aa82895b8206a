#include "torq/cone.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

#include "torq/errors.hpp"

namespace torq {

namespace {

struct VDesc {
  std::vector<IntVector> rays;
  std::vector<IntVector> lin;
};

std::vector<int> tight_set(const std::vector<IntVector>& ineqs, int upto, const IntVector& r) {
  std::vector<int> t;
  for (int j = 0; j < upto; ++j)
    if (dot(ineqs[j], r) == 0) t.push_back(j);
  return t;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  // both sorted
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Keep one primitive representative per extreme ray modulo lin, w.r.t. the
// inequalities processed so far.
std::vector<IntVector> cleanup_rays(std::vector<IntVector> rays,
                                    const std::vector<IntVector>& lin,
                                    const std::vector<IntVector>& ineqs, int upto, int n) {
  int lin_rank = static_cast<int>(lin.size());
  std::set<IntVector, decltype(&lex_less)> seen(&lex_less);
  std::vector<IntVector> out;
  for (const auto& r : rays) {
    IntVector p = project_off_span(lin, r);
    if (is_zero(p)) continue;
    if (seen.count(p)) continue;
    std::vector<IntVector> tight;
    for (int j = 0; j < upto; ++j)
      if (dot(ineqs[j], p) == 0) tight.push_back(ineqs[j]);
    if (rational_rank(tight) != n - lin_rank - 1) continue;
    seen.insert(p);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

/// V-description of {x in R^n : a.x >= 0 for all rows a}, by the incremental
/// double description method. Extreme rays are returned projected off the
/// lineality space, primitive and sorted.
VDesc double_description(int n, const std::vector<IntVector>& raw_ineqs) {
  std::vector<IntVector> ineqs;
  for (const auto& a : raw_ineqs) {
    if (static_cast<int>(a.size()) != n)
      throw DimensionMismatch("inequality length does not match ambient rank");
    if (is_zero(a)) continue;
    IntVector p = primitive(a);
    if (std::find(ineqs.begin(), ineqs.end(), p) == ineqs.end()) ineqs.push_back(std::move(p));
  }

  std::vector<IntVector> lin;
  for (int i = 0; i < n; ++i) {
    IntVector e(n, Integer(0));
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<IntVector> rays;

  for (int i = 0; i < static_cast<int>(ineqs.size()); ++i) {
    const IntVector& a = ineqs[i];
    int wi = -1;
    for (size_t k = 0; k < lin.size(); ++k)
      if (dot(a, lin[k]) != 0) {
        wi = static_cast<int>(k);
        break;
      }
    if (wi >= 0) {
      IntVector w = lin[wi];
      Integer aw = dot(a, w);
      if (aw < 0) {
        w = negate(w);
        aw = -aw;
      }
      std::vector<IntVector> new_lin;
      for (size_t k = 0; k < lin.size(); ++k) {
        if (static_cast<int>(k) == wi) continue;
        new_lin.push_back(primitive(sub(scale(aw, lin[k]), scale(dot(a, lin[k]), w))));
      }
      std::vector<IntVector> new_rays;
      for (const auto& r : rays)
        new_rays.push_back(primitive(sub(scale(aw, r), scale(dot(a, r), w))));
      new_rays.push_back(primitive(w));
      lin = std::move(new_lin);
      rays = cleanup_rays(std::move(new_rays), lin, ineqs, i + 1, n);
    } else {
      std::vector<IntVector> pos, zero, neg;
      for (const auto& r : rays) {
        int s = sign(dot(a, r));
        (s > 0 ? pos : s == 0 ? zero : neg).push_back(r);
      }
      if (neg.empty()) continue;
      std::vector<IntVector> new_rays = pos;
      for (const auto& z : zero) new_rays.push_back(z);
      // Combinatorial adjacency (Fukuda-Prodon): p and q are adjacent iff no
      // third extreme ray is tight on every inequality tight on both.
      for (const auto& p : pos) {
        std::vector<int> tp = tight_set(ineqs, i, p);
        for (const auto& q : neg) {
          std::vector<int> tq = tight_set(ineqs, i, q);
          std::vector<int> common;
          std::set_intersection(tp.begin(), tp.end(), tq.begin(), tq.end(),
                                std::back_inserter(common));
          bool adjacent = true;
          for (const auto& other : rays) {
            if (other == p || other == q) continue;
            if (subset_of(common, tight_set(ineqs, i, other))) {
              adjacent = false;
              break;
            }
          }
          if (adjacent)
            new_rays.push_back(primitive(sub(scale(dot(a, p), q), scale(dot(a, q), p))));
        }
      }
      rays = cleanup_rays(std::move(new_rays), lin, ineqs, i + 1, n);
    }
  }

  // Canonical lineality basis.
  std::vector<IntVector> lin_basis;
  if (!lin.empty()) {
    Sublattice l = kernel_lattice(IntMatrix::from_rows(ineqs, n));
    lin_basis = l.basis.row_list();
  }
  return {rays, lin_basis};
}

std::vector<IntVector> dedup_sorted(std::vector<IntVector> v) {
  std::sort(v.begin(), v.end(), lex_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Cone Cone::from_rays(int ambient_rank, const std::vector<IntVector>& generators) {
  for (const auto& g : generators)
    if (static_cast<int>(g.size()) != ambient_rank)
      throw DimensionMismatch("generator length does not match ambient rank");
  Cone c;
  c.ambient_rank_ = ambient_rank;

  std::vector<IntVector> gens;
  for (const auto& g : generators)
    if (!torq::is_zero(g)) gens.push_back(primitive(g));

  // Span equations: annihilator of the generators, canonical HNF basis.
  Sublattice perp = kernel_lattice(IntMatrix::from_rows(gens, ambient_rank));
  c.span_equations_ = perp.basis.row_list();
  c.dim_ = ambient_rank - perp.rank();

  // Facet normals = extreme rays of the dual cone, projected into the span.
  VDesc dual_desc = double_description(ambient_rank, gens);
  std::vector<IntVector> normals;
  for (const auto& u : dual_desc.rays) {
    IntVector p = project_off_span(c.span_equations_, u);
    if (!torq::is_zero(p)) normals.push_back(std::move(p));
  }
  c.facet_normals_ = dedup_sorted(std::move(normals));

  // Lineality: the part of the span on which every facet normal vanishes.
  std::vector<IntVector> lin_rows = c.facet_normals_;
  for (const auto& e : c.span_equations_) lin_rows.push_back(e);
  c.lineality_ = kernel_lattice(IntMatrix::from_rows(lin_rows, ambient_rank));
  int lin_rank = c.lineality_.rank();
  std::vector<IntVector> lin_basis = c.lineality_.basis.row_list();

  // Extreme rays modulo lineality are among the generators; keep those whose
  // tight facet system has corank one.
  std::set<IntVector, decltype(&lex_less)> seen(&lex_less);
  std::vector<IntVector> rays;
  for (const auto& g : gens) {
    IntVector p = project_off_span(lin_basis, g);
    if (torq::is_zero(p) || seen.count(p)) continue;
    std::vector<IntVector> tight = c.span_equations_;
    for (const auto& u : c.facet_normals_)
      if (dot(u, p) == 0) tight.push_back(u);
    if (rational_rank(tight) != ambient_rank - lin_rank - 1) continue;
    seen.insert(p);
    rays.push_back(std::move(p));
  }
  c.rays_ = dedup_sorted(std::move(rays));
  return c;
}

Cone Cone::from_inequalities(int ambient_rank, const std::vector<IntVector>& inequalities,
                             const std::vector<IntVector>& equations) {
  std::vector<IntVector> ineqs;
  for (const auto& a : inequalities) ineqs.push_back(a);
  for (const auto& e : equations) {
    ineqs.push_back(e);
    ineqs.push_back(negate(e));
  }
  VDesc v = double_description(ambient_rank, ineqs);
  std::vector<IntVector> gens = v.rays;
  for (const auto& l : v.lin) {
    gens.push_back(l);
    gens.push_back(negate(l));
  }
  return from_rays(ambient_rank, gens);
}

Cone Cone::zero(int ambient_rank) { return from_rays(ambient_rank, {}); }

Cone Cone::full_space(int ambient_rank) {
  std::vector<IntVector> gens;
  for (int i = 0; i < ambient_rank; ++i) {
    IntVector e(ambient_rank, Integer(0));
    e[i] = 1;
    gens.push_back(e);
    gens.push_back(negate(e));
  }
  return from_rays(ambient_rank, gens);
}

std::vector<IntVector> Cone::generators() const {
  std::vector<IntVector> g = rays_;
  for (const auto& l : lineality_.basis.row_list()) {
    g.push_back(l);
    g.push_back(negate(l));
  }
  return g;
}

Membership Cone::membership(const IntVector& v) const {
  if (static_cast<int>(v.size()) != ambient_rank_)
    throw DimensionMismatch("membership: vector length mismatch");
  for (const auto& e : span_equations_)
    if (dot(e, v) != 0) return Membership::outside;
  bool tight = false;
  for (const auto& u : facet_normals_) {
    int s = sign(dot(u, v));
    if (s < 0) return Membership::outside;
    if (s == 0) tight = true;
  }
  return tight ? Membership::boundary : Membership::relative_interior;
}

bool Cone::contains(const Cone& sub) const {
  if (sub.ambient_rank_ != ambient_rank_)
    throw DimensionMismatch("containment: ambient rank mismatch");
  for (const auto& g : sub.generators())
    if (membership(g) == Membership::outside) return false;
  return true;
}

IntVector Cone::relative_interior_point() const {
  IntVector p(ambient_rank_, Integer(0));
  for (const auto& r : rays_) p = add(p, r);
  for (const auto& l : lineality_.basis.row_list()) p = add(p, l);
  return p;
}

std::strong_ordering Cone::operator<=>(const Cone& o) const {
  if (auto c = ambient_rank_ <=> o.ambient_rank_; c != 0) return c;
  if (auto c = dim_ <=> o.dim_; c != 0) return c;
  if (auto c = rays_.size() <=> o.rays_.size(); c != 0) return c;
  for (size_t i = 0; i < rays_.size(); ++i)
    if (auto c = compare(rays_[i], o.rays_[i]); c != 0) return c;
  auto lb = lineality_.basis.row_list(), olb = o.lineality_.basis.row_list();
  if (auto c = lb.size() <=> olb.size(); c != 0) return c;
  for (size_t i = 0; i < lb.size(); ++i)
    if (auto c = compare(lb[i], olb[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

bool Cone::operator==(const Cone& o) const { return (*this <=> o) == 0; }

std::string Cone::key() const {
  std::ostringstream os;
  os << ambient_rank_ << "|";
  for (const auto& r : rays_) os << to_string(r);
  os << "|";
  for (const auto& l : lineality_.basis.row_list()) os << to_string(l);
  return os.str();
}

Cone dual(const Cone& c) {
  std::vector<IntVector> gens = c.facet_normals();
  for (const auto& e : c.span_equations()) {
    gens.push_back(e);
    gens.push_back(negate(e));
  }
  return Cone::from_rays(c.ambient_rank(), gens);
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw DimensionMismatch("intersect: ambient rank mismatch");
  std::vector<IntVector> ineqs = a.facet_normals();
  for (const auto& u : b.facet_normals()) ineqs.push_back(u);
  std::vector<IntVector> eqs = a.span_equations();
  for (const auto& e : b.span_equations()) eqs.push_back(e);
  return Cone::from_inequalities(a.ambient_rank(), ineqs, eqs);
}

Cone sum(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw DimensionMismatch("sum: ambient rank mismatch");
  std::vector<IntVector> gens = a.generators();
  for (const auto& g : b.generators()) gens.push_back(g);
  return Cone::from_rays(a.ambient_rank(), gens);
}

namespace {

Cone facet_for_normal(const Cone& c, const IntVector& u) {
  std::vector<IntVector> gens;
  for (const auto& r : c.rays())
    if (dot(u, r) == 0) gens.push_back(r);
  for (const auto& l : c.lineality().basis.row_list()) {
    gens.push_back(l);
    gens.push_back(negate(l));
  }
  return Cone::from_rays(c.ambient_rank(), gens);
}

}  // namespace

std::vector<Face> faces(const Cone& c) {
  std::map<std::string, Cone> found;
  std::vector<Cone> frontier{c};
  found.emplace(c.key(), c);
  while (!frontier.empty()) {
    std::vector<Cone> next;
    for (const auto& f : frontier)
      for (const auto& u : f.facet_normals()) {
        Cone facet = facet_for_normal(f, u);
        if (found.emplace(facet.key(), facet).second) next.push_back(facet);
      }
    frontier = std::move(next);
  }
  std::vector<Face> out;
  for (auto& [k, f] : found) {
    if (f == c) {
      out.push_back({f, std::nullopt});
      continue;
    }
    IntVector normal(c.ambient_rank(), Integer(0));
    for (const auto& u : c.facet_normals()) {
      bool vanishes = true;
      for (const auto& r : f.rays())
        if (dot(u, r) != 0) {
          vanishes = false;
          break;
        }
      if (vanishes) normal = add(normal, u);
    }
    out.push_back({f, primitive(normal)});
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) { return a.cone < b.cone; });
  return out;
}

Cone minimal_face(const Cone& c) {
  std::vector<IntVector> gens;
  for (const auto& l : c.lineality().basis.row_list()) {
    gens.push_back(l);
    gens.push_back(negate(l));
  }
  return Cone::from_rays(c.ambient_rank(), gens);
}

bool is_face_of(const Cone& f, const Cone& c) {
  if (f.ambient_rank() != c.ambient_rank()) return false;
  if (!c.contains(f)) return false;
  return smallest_face_containing(c, f).cone == f;
}

Face smallest_face_containing(const Cone& c, const Cone& sub) {
  if (!c.contains(sub)) throw PreconditionViolated("smallest_face_containing: sub not in cone");
  IntVector w = sub.relative_interior_point();
  std::vector<IntVector> tight;
  for (const auto& u : c.facet_normals())
    if (dot(u, w) == 0) tight.push_back(u);
  if (tight.empty()) return {c, std::nullopt};
  std::vector<IntVector> gens;
  for (const auto& r : c.rays()) {
    bool keep = true;
    for (const auto& u : tight)
      if (dot(u, r) != 0) {
        keep = false;
        break;
      }
    if (keep) gens.push_back(r);
  }
  for (const auto& l : c.lineality().basis.row_list()) {
    gens.push_back(l);
    gens.push_back(negate(l));
  }
  IntVector normal(c.ambient_rank(), Integer(0));
  for (const auto& u : tight) normal = add(normal, u);
  return {Cone::from_rays(c.ambient_rank(), gens), primitive(normal)};
}

Cone image_cone(const Cone& c, const IntMatrix& a) {
  if (a.cols() != c.ambient_rank())
    throw DimensionMismatch("image_cone: matrix columns must match ambient rank");
  std::vector<IntVector> gens;
  for (const auto& g : c.generators()) gens.push_back(a * g);
  return Cone::from_rays(a.rows(), gens);
}

Cone preimage_cone(const Cone& c, const IntMatrix& a) {
  if (a.rows() != c.ambient_rank())
    throw DimensionMismatch("preimage_cone: matrix rows must match ambient rank");
  IntMatrix at = a.transpose();
  std::vector<IntVector> ineqs, eqs;
  for (const auto& u : c.facet_normals()) ineqs.push_back(at * u);
  for (const auto& e : c.span_equations()) eqs.push_back(at * e);
  return Cone::from_inequalities(a.cols(), ineqs, eqs);
}

HalfspaceSplit halfspace_split(const Cone& c, const IntVector& u) {
  if (static_cast<int>(u.size()) != c.ambient_rank())
    throw DimensionMismatch("halfspace_split: vector length mismatch");
  std::vector<IntVector> ineqs = c.facet_normals();
  const std::vector<IntVector>& eqs = c.span_equations();
  ineqs.push_back(u);
  Cone pos = Cone::from_inequalities(c.ambient_rank(), ineqs, eqs);
  ineqs.back() = negate(u);
  Cone neg = Cone::from_inequalities(c.ambient_rank(), ineqs, eqs);
  ineqs.pop_back();
  std::vector<IntVector> zeqs = eqs;
  zeqs.push_back(u);
  Cone zero = Cone::from_inequalities(c.ambient_rank(), ineqs, zeqs);
  return {pos, neg, zero};
}

Sublattice span_lattice(const Cone& c) {
  if (c.span_equations().empty()) return Sublattice::full(c.ambient_rank());
  return kernel_lattice(IntMatrix::from_rows(c.span_equations(), c.ambient_rank()));
}

Cone span_cone(const Cone& c) {
  std::vector<IntVector> gens;
  for (const auto& b : span_lattice(c).basis.row_list()) {
    gens.push_back(b);
    gens.push_back(negate(b));
  }
  return Cone::from_rays(c.ambient_rank(), gens);
}

}  // namespace torq
