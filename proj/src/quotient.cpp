#include "torq/quotient.hpp"

#include <algorithm>
#include <map>

#include "torq/errors.hpp"

namespace torq {

namespace {

std::vector<Cone> maximal_elements(std::vector<Cone> cones) {
  std::sort(cones.begin(), cones.end());
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
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

QuotientQuasiFan quotient_quasifan(const AffineSystemOfFans& s, const QuotientLattice& p,
                                   long iteration_cap) {
  if (p.source_rank != s.ambient_rank)
    throw DimensionMismatch("quotient: projection does not match the system's lattice");

  std::vector<Cone> current;
  for (const auto& sigma : cones_of(s)) current.push_back(image_cone(sigma, p.projection));
  current = maximal_elements(std::move(current));

  QuotientQuasiFan out;
  long steps = 0;
  for (;;) {
    // Smallest ordered pair (tau, tau') whose intersection is not a face of
    // tau'; cone keys give the lexicographic order.
    const Cone* tau = nullptr;
    const Cone* tau_prime = nullptr;
    for (const auto& a : current) {
      for (const auto& b : current) {
        if (a == b) continue;
        if (!is_face_of(intersect(a, b), b)) {
          tau = &a;
          tau_prime = &b;
          break;
        }
      }
      if (tau) break;
    }
    if (!tau) break;
    if (++steps > iteration_cap)
      throw IterationCapExceeded("quotient: merge loop exceeded " +
                                 std::to_string(iteration_cap) + " steps");
    Cone meet = intersect(*tau, *tau_prime);
    Cone rho_prime = smallest_face_containing(*tau_prime, meet).cone;
    Cone merged = sum(*tau, rho_prime);
    out.trace.push_back({*tau, *tau_prime, rho_prime, merged});
    current.push_back(merged);
    current = maximal_elements(std::move(current));
  }

  out.sigma = fan_from_max_cones(p.target_rank, current, /*quasi=*/true);
  Cone v_sigma = out.sigma.max_cones.empty() ? Cone::zero(p.target_rank)
                                             : minimal_face(out.sigma.max_cones[0]);
  for (const auto& c : out.sigma.max_cones)
    if (!(minimal_face(c) == v_sigma))
      throw Error("quotient: output cones disagree on the common minimal face");
  out.lineality = span_lattice(v_sigma);
  return out;
}

namespace {

QuotientLattice projection_for(int ambient_rank, const Sublattice& l,
                               const std::optional<IntMatrix>& projection) {
  if (!projection) return quotient_projection(ambient_rank, l);
  // Validate the caller's coordinates: right shape, kernel exactly L,
  // surjective (admits an integral section).
  const IntMatrix& p = *projection;
  if (p.cols() != ambient_rank || p.rows() != ambient_rank - l.rank())
    throw DimensionMismatch("quotient: projection matrix has the wrong shape");
  Sublattice ker = kernel_lattice(p);
  if (!(ker == canonicalize(saturate(l))))
    throw PreconditionViolated("quotient: projection kernel is not the given sublattice");
  SnfResult snf = smith_normal_form(p);
  for (int i = 0; i < p.rows(); ++i)
    if (snf.d.at(i, i) != 1 && snf.d.at(i, i) != -1)
      throw PreconditionViolated("quotient: projection is not surjective onto Z^k");
  QuotientLattice q;
  q.source_rank = ambient_rank;
  q.target_rank = p.rows();
  q.projection = p;
  q.kernel = ker;
  // Section from the Smith decomposition d = u p v: p * (v [d^-1 truncated] u) = id.
  IntMatrix mid(ambient_rank, p.rows());
  for (int i = 0; i < p.rows(); ++i) mid.at(i, i) = snf.d.at(i, i);  // self-inverse (+-1)
  q.section = snf.v * mid * snf.u;
  if (!(q.projection * q.section == IntMatrix::identity(p.rows())))
    throw Error("quotient: section construction failed");
  return q;
}

}  // namespace

ToricMorphism SeparatedToricQuotient::morphism() const {
  return {source, fan, composite()};
}

SeparatedToricQuotient separated_toric_quotient(const AffineSystemOfFans& s, const Sublattice& l,
                                                const std::optional<IntMatrix>& projection,
                                                long iteration_cap) {
  if (l.ambient_rank != s.ambient_rank)
    throw DimensionMismatch("quotient: sublattice lives in a different lattice");
  if (!(canonicalize(saturate(l)).basis == canonicalize(l).basis))
    throw NotSaturated("quotient: the sublattice must be saturated");

  SeparatedToricQuotient q;
  q.source = s;
  q.l = canonicalize(l);
  q.p = projection_for(s.ambient_rank, q.l, projection);
  q.quasifan = quotient_quasifan(s, q.p, iteration_cap);
  q.p_prime = quotient_projection(q.p.target_rank, q.quasifan.lineality);
  std::vector<Cone> images;
  for (const auto& tau : q.quasifan.sigma.max_cones)
    images.push_back(image_cone(tau, q.p_prime.projection));
  q.fan = fan_from_max_cones(q.p_prime.target_rank, images, /*quasi=*/false);

  CompatibilityResult c = check_compatible(q.composite(), s, q.fan);
  if (!c.compatible)
    throw Error("quotient: composite map incompatible at cone " + c.witness->key());
  return q;
}

Thm62Result check_thm62(const SeparatedToricQuotient& q) {
  // The inclusion P(|S|) subset (P')^{-1}(|Delta|) holds by compatibility;
  // the reverse is a covering question per maximal cone of Delta.
  std::vector<Cone> images;
  for (const auto& chart : q.source.charts)
    images.push_back(image_cone(chart, q.p.projection));
  Thm62Result out;
  out.holds = true;
  for (const auto& delta : q.fan.max_cones) {
    out.certificates.push_back(covers(preimage_cone(delta, q.p_prime.projection), images));
    if (!out.certificates.back().covered) out.holds = false;
  }
  return out;
}

namespace {

bool is_separated(const AffineSystemOfFans& s) {
  for (int i = 0; i < static_cast<int>(s.charts.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(s.charts.size()); ++j) {
      Cone meet = intersect(s.charts[i], s.charts[j]);
      if (!is_face_of(meet, s.charts[i]) || !is_face_of(meet, s.charts[j])) return false;
      if (!s.glued(i, j, meet)) return false;
    }
  return true;
}

}  // namespace

Certification certify_categorical(const AffineSystemOfFans& s, const Sublattice& l,
                                  const std::optional<IntMatrix>& projection,
                                  long iteration_cap) {
  SeparatedToricQuotient q = separated_toric_quotient(s, l, projection, iteration_cap);
  Certification cert;
  cert.weakly_proper = is_weakly_proper(q.morphism()).weakly_proper;
  cert.expected_dimension = q.quasifan.lineality.rank() == 0;
  cert.convex_support = is_separated(s) && support_is_convex(s).convex;
  cert.codim_le_2 = s.ambient_rank - canonicalize(l).rank() <= 2;
  cert.thm62 = check_thm62(q).holds;
  if (cert.thm62) cert.reasons.push_back("thm62");
  if (cert.weakly_proper && cert.expected_dimension) {
    cert.reasons.push_back("weakly_proper");
    cert.reasons.push_back("expected_dimension");
  }
  if (cert.convex_support) cert.reasons.push_back("convex_support");
  if (cert.codim_le_2) cert.reasons.push_back("codim_le_2");
  cert.certified = !cert.reasons.empty();
  return cert;
}

UniformityReport uniformity_probe(const AffineSystemOfFans& s, const Sublattice& l,
                                  const std::vector<Cone>& sub,
                                  const std::optional<IntMatrix>& projection,
                                  long iteration_cap) {
  SeparatedToricQuotient q = separated_toric_quotient(s, l, projection, iteration_cap);
  ToricMorphism p_mor = q.morphism();
  if (!is_saturated_subfan(p_mor, sub))
    throw NotSaturated("uniformity: the selected cones are not saturated under the quotient");

  // Face closure of the selection, as a subsystem inheriting the glueings
  // through the orbit identifications of S.
  std::vector<Cone> closure;
  for (const auto& c : sub)
    for (const auto& f : faces(c)) closure.push_back(f.cone);
  std::sort(closure.begin(), closure.end());
  closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
  std::vector<Cone> sub_charts = maximal_elements(closure);

  OrbitClasses orbits = orbit_classes(s);
  auto parent_chart = [&](const Cone& c) {
    for (int i = 0; i < static_cast<int>(s.charts.size()); ++i)
      if (is_face_of(c, s.charts[i])) return i;
    throw PreconditionViolated("uniformity: cone " + c.key() + " is not a cone of the system");
  };
  std::map<std::pair<int, int>, std::vector<Cone>> glue;
  for (int a = 0; a < static_cast<int>(sub_charts.size()); ++a)
    for (int b = a + 1; b < static_cast<int>(sub_charts.size()); ++b) {
      int pa = parent_chart(sub_charts[a]);
      int pb = parent_chart(sub_charts[b]);
      std::vector<Cone> shared;
      for (const auto& tau : closure)
        if (is_face_of(tau, sub_charts[a]) && is_face_of(tau, sub_charts[b]) &&
            orbits.index_of({tau, pa}) == orbits.index_of({tau, pb}))
          shared.push_back(tau);
      if (!shared.empty()) glue[{a, b}] = shared;
    }
  AffineSystemOfFans sub_system = system_from_charts(s.ambient_rank, sub_charts, glue);

  UniformityReport out;
  out.restricted_quotient =
      separated_toric_quotient(sub_system, l, projection, iteration_cap).fan;

  // Images of the selected cones inside the full quotient fan: the unique
  // quotient cone containing each image's relative interior.
  std::vector<Cone> image_cones;
  for (const auto& c : closure) {
    IntVector w = q.composite() * c.relative_interior_point();
    for (const auto& tau : fan_cones(q.fan))
      if (tau.membership(w) == Membership::relative_interior) {
        image_cones.push_back(tau);
        break;
      }
  }
  out.image_subfan = fan_from_max_cones(q.p_prime.target_rank, maximal_elements(image_cones));
  out.equal = fans_equal(out.restricted_quotient, out.image_subfan,
                         FanCompareMode::up_to_unimodular);
  return out;
}

}  // namespace torq
