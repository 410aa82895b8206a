#include "torq/morphism.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "torq/errors.hpp"

namespace torq {

CompatibilityResult check_compatible(const IntMatrix& f, const AffineSystemOfFans& s,
                                     const Fan& target) {
  if (f.cols() != s.ambient_rank || f.rows() != target.ambient_rank)
    throw DimensionMismatch("morphism: matrix shape does not match lattices");
  for (const auto& tau : cones_of(s)) {
    Cone image = image_cone(tau, f);
    bool fits = target.max_cones.empty() ? image.is_zero() : false;
    for (const auto& sigma : target.max_cones)
      if (sigma.contains(image)) {
        fits = true;
        break;
      }
    if (!fits) return {false, tau};
  }
  return {true, std::nullopt};
}

ToricMorphism toric_morphism(const AffineSystemOfFans& s, const Fan& target, const IntMatrix& f) {
  CompatibilityResult c = check_compatible(f, s, target);
  if (!c.compatible)
    throw PreconditionViolated("morphism: image of cone " + c.witness->key() +
                               " lies in no target cone");
  return {s, target, f};
}

WeakProperness is_weakly_proper(const ToricMorphism& m) {
  // F(|S|) is the union of the chart images, so it suffices to cover every
  // maximal target cone by those.
  std::vector<Cone> images;
  for (const auto& chart : m.source.charts) images.push_back(image_cone(chart, m.map));
  WeakProperness out;
  out.weakly_proper = true;
  for (const auto& delta : m.target.max_cones) {
    out.certificates.push_back(covers(delta, images));
    if (!out.certificates.back().covered) out.weakly_proper = false;
  }
  return out;
}

namespace {

// The unique target cone whose relative interior receives the image of the
// source cone's relative interior.
Cone assigned_target(const ToricMorphism& m, const Cone& sigma) {
  IntVector w = m.map * sigma.relative_interior_point();
  for (const auto& tau : fan_cones(m.target))
    if (tau.membership(w) == Membership::relative_interior) return tau;
  throw PreconditionViolated("morphism: cone " + sigma.key() +
                             " maps outside the target support (not compatible?)");
}

}  // namespace

int EquivalenceClasses::class_of(const Cone& source_cone) const {
  for (size_t i = 0; i < classes.size(); ++i) {
    const auto& mem = classes[i].members;
    if (std::binary_search(mem.begin(), mem.end(), source_cone)) return static_cast<int>(i);
  }
  return -1;
}

EquivalenceClasses equivalence_classes(const ToricMorphism& m) {
  std::map<Cone, std::vector<Cone>> by_target;
  for (const auto& sigma : cones_of(m.source)) by_target[assigned_target(m, sigma)].push_back(sigma);
  EquivalenceClasses out;
  for (auto& [tau, members] : by_target) {
    std::sort(members.begin(), members.end());
    std::vector<IntVector> gens;
    for (const auto& c : members)
      for (const auto& row : span_lattice(c).basis.row_list()) gens.push_back(row);
    Sublattice support = saturate(Sublattice::from_generators(m.source.ambient_rank, gens));
    out.classes.push_back({tau, std::move(members), support});
  }
  return out;
}

FiberData fiber_data(const ToricMorphism& m, const Cone& sigma_prime) {
  FiberData out;
  out.target_cone = sigma_prime;
  EquivalenceClasses cls = equivalence_classes(m);
  Sublattice ker = kernel_lattice(m.map);
  const EquivalenceClass* hit = nullptr;
  for (const auto& c : cls.classes)
    if (c.target_cone == sigma_prime) {
      hit = &c;
      break;
    }
  if (!hit) {
    out.stabilizer_lattice = ker;
    return out;
  }
  OrbitClasses orbits = orbit_classes(m.source);
  std::set<int> seen;
  for (const auto& oc : orbits.classes)
    for (const auto& member : oc.members)
      if (std::binary_search(hit->members.begin(), hit->members.end(), member.cone)) {
        if (seen.insert(orbits.index_of(member)).second)
          out.orbit_members.push_back(oc.representative);
        break;
      }
  out.stabilizer_lattice = saturated_sum(hit->support_lattice, ker);
  return out;
}

FactorsResult factors_through(const ToricMorphism& f, const ToricMorphism& p) {
  if (!(f.source.charts == p.source.charts) || f.source.ambient_rank != p.source.ambient_rank)
    throw PreconditionViolated("factors_through: morphisms have different sources");
  if (!is_weakly_proper(p).weakly_proper)
    throw PreconditionViolated("factors_through: p is not weakly proper");

  FactorsResult out;
  for (const auto& v : kernel_lattice(p.map).basis.row_list())
    if (!torq::is_zero(f.map * v)) {
      out.kernel_witness = v;
      return out;
    }

  EquivalenceClasses pc = equivalence_classes(p);
  EquivalenceClasses fc = equivalence_classes(f);
  for (const auto& c : pc.classes)
    for (size_t i = 0; i + 1 < c.members.size(); ++i)
      if (fc.class_of(c.members[i]) != fc.class_of(c.members[i + 1])) {
        out.pair_witness = {c.members[i], c.members[i + 1]};
        return out;
      }
  out.factors = true;
  return out;
}

Restriction restrict_to_cone(const AffineSystemOfFans& s, const Cone& sigma) {
  if (sigma.ambient_rank() != s.ambient_rank)
    throw DimensionMismatch("restrict: ambient rank mismatch");
  CoveringCertificate inside = covers(sigma, s.charts);
  if (!inside.covered)
    throw PreconditionViolated("restrict: cone not contained in the support, outside point " +
                               to_string(*inside.witness));
  Cone sigma0 = minimal_face(sigma);
  Restriction out;
  out.system = intersect_system_with_cone(s, sigma);
  out.projection = quotient_projection(s.ambient_rank, span_lattice(sigma0));
  out.target = image_cone(sigma, out.projection.projection);
  return out;
}

bool is_saturated_subfan(const ToricMorphism& p, const std::vector<Cone>& sub) {
  std::vector<Cone> closure;
  for (const auto& c : sub)
    for (const auto& f : faces(c)) closure.push_back(f.cone);
  std::sort(closure.begin(), closure.end());
  closure.erase(std::unique(closure.begin(), closure.end()), closure.end());

  std::vector<Cone> all = cones_of(p.source);
  for (const auto& c : closure)
    if (!std::binary_search(all.begin(), all.end(), c))
      throw PreconditionViolated("saturated: cone " + c.key() + " is not a cone of the system");

  EquivalenceClasses cls = equivalence_classes(p);
  for (const auto& c : cls.classes) {
    bool any = false, all_in = true;
    for (const auto& member : c.members) {
      bool in = std::binary_search(closure.begin(), closure.end(), member);
      any = any || in;
      all_in = all_in && in;
    }
    if (any && !all_in) return false;
  }
  return true;
}

}  // namespace torq
