#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torq/errors.hpp"
#include "torq/io.hpp"

using nlohmann::json;

namespace {

struct Options {
  std::string file;
  std::string system_name, sublattice_name, projection_name;
  std::string map_name, target_name, cone_name;
  std::string p_map_name, p_target_name;
  std::vector<std::string> sub_names;
  std::string out = "human";
  std::string mode = "unimodular";
  long iteration_cap = torq::kDefaultIterationCap;
  bool lenient = false;
  bool no_trace = false;
};

torq::Document load(const Options& opt, std::vector<std::string>* warnings) {
  std::ifstream in(opt.file);
  if (!in) throw torq::SchemaError("cannot open " + opt.file);
  std::stringstream buf;
  buf << in.rdbuf();
  return torq::parse_document(buf.str(), !opt.lenient, warnings);
}

const torq::Cone& find_cone(const torq::Document& doc, const std::string& name) {
  auto it = doc.cones.find(name);
  if (it == doc.cones.end()) throw torq::ValidationError("no cone named '" + name + "'");
  return it->second;
}

torq::AffineSystemOfFans resolve_system(const torq::Document& doc, const std::string& name) {
  if (!name.empty()) {
    if (auto it = doc.systems.find(name); it != doc.systems.end()) return it->second;
    if (auto it = doc.fans.find(name); it != doc.fans.end()) return system_from_fan(it->second);
    throw torq::ValidationError("no system or fan named '" + name + "'");
  }
  if (doc.systems.size() == 1) return doc.systems.begin()->second;
  if (doc.systems.empty() && doc.fans.size() == 1)
    return system_from_fan(doc.fans.begin()->second);
  throw torq::ValidationError("ambiguous input: pass --system NAME");
}

torq::Sublattice resolve_sublattice(const torq::Document& doc, const std::string& name) {
  if (!name.empty()) {
    if (auto it = doc.sublattices.find(name); it != doc.sublattices.end()) return it->second;
    throw torq::ValidationError("no sublattice named '" + name + "'");
  }
  if (doc.sublattices.size() == 1) return doc.sublattices.begin()->second;
  throw torq::ValidationError("ambiguous input: pass --sublattice NAME");
}

const torq::IntMatrix& find_map(const torq::Document& doc, const std::string& name) {
  auto it = doc.maps.find(name);
  if (it == doc.maps.end()) throw torq::ValidationError("no map named '" + name + "'");
  return it->second;
}

const torq::Fan& find_fan(const torq::Document& doc, const std::string& name) {
  auto it = doc.fans.find(name);
  if (it == doc.fans.end()) throw torq::ValidationError("no fan named '" + name + "'");
  return it->second;
}

std::optional<torq::IntMatrix> resolve_projection(const torq::Document& doc,
                                                  const std::string& name) {
  if (name.empty()) return std::nullopt;
  return find_map(doc, name);
}

json trace_to_json(const std::vector<torq::TraceStep>& trace) {
  json out = json::array();
  for (const auto& step : trace) {
    json s;
    s["tau"] = torq::cone_to_json(step.tau);
    s["tau_prime"] = torq::cone_to_json(step.tau_prime);
    s["rho_prime"] = torq::cone_to_json(step.rho_prime);
    s["merged"] = torq::cone_to_json(step.merged);
    out.push_back(s);
  }
  return out;
}

void emit(const Options& opt, const std::string& verb, const json& inputs, const json& result,
          const json& trace, const json& witnesses, const std::string& human) {
  if (opt.out == "json") {
    json report;
    report["verb"] = verb;
    report["inputs"] = inputs;
    report["result"] = result;
    report["trace"] = trace;
    report["witnesses"] = witnesses;
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << human;
  }
}

std::string fan_human(const torq::Fan& f) {
  std::ostringstream os;
  os << f.max_cones.size() << " maximal cone(s) in rank " << f.ambient_rank << ":\n";
  for (const auto& c : f.max_cones) {
    os << " ";
    for (const auto& g : c.generators()) os << " " << torq::to_string(g);
    if (c.generators().empty()) os << " 0";
    os << "\n";
  }
  return os.str();
}

int run(const Options& opt, const std::string& verb) {
  std::vector<std::string> warnings;
  torq::Document doc = load(opt, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

  json inputs;
  inputs["file"] = opt.file;

  if (verb == "validate") {
    json result;
    result["ok"] = true;
    result["cones"] = doc.cones.size();
    result["sublattices"] = doc.sublattices.size();
    result["maps"] = doc.maps.size();
    result["fans"] = doc.fans.size();
    result["systems"] = doc.systems.size();
    std::ostringstream os;
    os << "ok: " << doc.cones.size() << " cone(s), " << doc.sublattices.size()
       << " sublattice(s), " << doc.maps.size() << " map(s), " << doc.fans.size() << " fan(s), "
       << doc.systems.size() << " system(s)\n";
    emit(opt, verb, inputs, result, json::array(), json::array(), os.str());
    return 0;
  }

  if (verb == "quotient" || verb == "certify") {
    torq::AffineSystemOfFans s = resolve_system(doc, opt.system_name);
    torq::Sublattice l = resolve_sublattice(doc, opt.sublattice_name);
    auto p = resolve_projection(doc, opt.projection_name);
    if (verb == "quotient") {
      torq::SeparatedToricQuotient q =
          torq::separated_toric_quotient(s, l, p, opt.iteration_cap);
      json result;
      result["fan"] = torq::fan_to_json(q.fan);
      result["lineality"] = torq::sublattice_to_json(q.quasifan.lineality);
      result["projection"] = torq::matrix_to_json(q.p.projection);
      result["projection_prime"] = torq::matrix_to_json(q.p_prime.projection);
      json trace = opt.no_trace ? json::array() : trace_to_json(q.quasifan.trace);
      std::ostringstream os;
      os << "quotient fan: " << fan_human(q.fan);
      os << "lineality rank of the quasi-fan: " << q.quasifan.lineality.rank() << "\n";
      os << "merge steps: " << q.quasifan.trace.size() << "\n";
      emit(opt, verb, inputs, result, trace, json::array(), os.str());
      return 0;
    }
    torq::Certification cert = torq::certify_categorical(s, l, p, opt.iteration_cap);
    json result;
    result["verdict"] = cert.certified ? "certified_categorical" : "not_certified";
    result["reasons"] = cert.reasons;
    result["weakly_proper"] = cert.weakly_proper;
    result["expected_dimension"] = cert.expected_dimension;
    result["convex_support"] = cert.convex_support;
    result["codim_le_2"] = cert.codim_le_2;
    result["thm62"] = cert.thm62;
    std::ostringstream os;
    os << "verdict: " << (cert.certified ? "certified_categorical" : "not_certified") << "\n";
    os << "reasons:";
    for (const auto& r : cert.reasons) os << " " << r;
    os << "\n";
    emit(opt, verb, inputs, result, json::array(), json::array(), os.str());
    return 0;
  }

  if (verb == "weakly-proper") {
    torq::AffineSystemOfFans s = resolve_system(doc, opt.system_name);
    torq::ToricMorphism m =
        opt.map_name.empty()
            ? torq::separated_toric_quotient(s, resolve_sublattice(doc, opt.sublattice_name),
                                             resolve_projection(doc, opt.projection_name),
                                             opt.iteration_cap)
                  .morphism()
            : torq::toric_morphism(s, find_fan(doc, opt.target_name),
                                   find_map(doc, opt.map_name));
    torq::WeakProperness wp = torq::is_weakly_proper(m);
    json result;
    result["weakly_proper"] = wp.weakly_proper;
    json witnesses = json::array();
    for (const auto& cert : wp.certificates)
      if (!cert.covered && cert.witness) witnesses.push_back(torq::vector_to_json(*cert.witness));
    std::ostringstream os;
    os << "weakly proper: " << (wp.weakly_proper ? "true" : "false") << "\n";
    if (!witnesses.empty()) os << "uncovered point: " << witnesses[0].dump() << "\n";
    emit(opt, verb, inputs, result, json::array(), witnesses, os.str());
    return 0;
  }

  if (verb == "classes" || verb == "fibers") {
    torq::AffineSystemOfFans s = resolve_system(doc, opt.system_name);
    torq::ToricMorphism m = torq::toric_morphism(s, find_fan(doc, opt.target_name),
                                                 find_map(doc, opt.map_name));
    if (verb == "classes") {
      torq::EquivalenceClasses cls = torq::equivalence_classes(m);
      json result = json::array();
      std::ostringstream os;
      for (const auto& c : cls.classes) {
        json rec;
        rec["target_cone"] = torq::cone_to_json(c.target_cone);
        json members = json::array();
        for (const auto& member : c.members) members.push_back(torq::cone_to_json(member));
        rec["members"] = members;
        rec["support_lattice"] = torq::sublattice_to_json(c.support_lattice);
        result.push_back(rec);
        os << "class over " << c.target_cone.key() << ": " << c.members.size()
           << " cone(s), support rank " << c.support_lattice.rank() << "\n";
      }
      emit(opt, verb, inputs, result, json::array(), json::array(), os.str());
      return 0;
    }
    torq::FiberData fd = torq::fiber_data(m, find_cone(doc, opt.cone_name));
    json result;
    result["target_cone"] = torq::cone_to_json(fd.target_cone);
    json members = json::array();
    for (const auto& lf : fd.orbit_members) {
      json rec;
      rec["cone"] = torq::cone_to_json(lf.cone);
      rec["chart"] = lf.chart;
      members.push_back(rec);
    }
    result["orbit_members"] = members;
    result["stabilizer_lattice"] = torq::sublattice_to_json(fd.stabilizer_lattice);
    std::ostringstream os;
    os << "orbit classes over the fiber: " << fd.orbit_members.size() << "\n";
    os << "stabilizer lattice rank: " << fd.stabilizer_lattice.rank() << "\n";
    emit(opt, verb, inputs, result, json::array(), json::array(), os.str());
    return 0;
  }

  if (verb == "factors") {
    torq::AffineSystemOfFans s = resolve_system(doc, opt.system_name);
    torq::ToricMorphism f = torq::toric_morphism(s, find_fan(doc, opt.target_name),
                                                 find_map(doc, opt.map_name));
    torq::ToricMorphism p =
        opt.p_map_name.empty()
            ? torq::separated_toric_quotient(s, resolve_sublattice(doc, opt.sublattice_name),
                                             resolve_projection(doc, opt.projection_name),
                                             opt.iteration_cap)
                  .morphism()
            : torq::toric_morphism(s, find_fan(doc, opt.p_target_name),
                                   find_map(doc, opt.p_map_name));
    torq::FactorsResult fr = torq::factors_through(f, p);
    json result;
    result["factors"] = fr.factors;
    json witnesses = json::array();
    if (fr.kernel_witness) witnesses.push_back(torq::vector_to_json(*fr.kernel_witness));
    if (fr.pair_witness) {
      witnesses.push_back(torq::cone_to_json(fr.pair_witness->first));
      witnesses.push_back(torq::cone_to_json(fr.pair_witness->second));
    }
    std::ostringstream os;
    os << "factors: " << (fr.factors ? "true" : "false") << "\n";
    emit(opt, verb, inputs, result, json::array(), witnesses, os.str());
    return 0;
  }

  if (verb == "restrict") {
    torq::AffineSystemOfFans s = resolve_system(doc, opt.system_name);
    torq::Restriction r = torq::restrict_to_cone(s, find_cone(doc, opt.cone_name));
    json result;
    result["system"] = torq::system_to_json(r.system);
    result["projection"] = torq::matrix_to_json(r.projection.projection);
    result["target"] = torq::cone_to_json(r.target);
    std::ostringstream os;
    os << "restricted system has " << r.system.charts.size() << " chart(s); target cone dim "
       << r.target.dim() << "\n";
    emit(opt, verb, inputs, result, json::array(), json::array(), os.str());
    return 0;
  }

  if (verb == "saturated" || verb == "uniformity") {
    torq::AffineSystemOfFans s = resolve_system(doc, opt.system_name);
    torq::Sublattice l = resolve_sublattice(doc, opt.sublattice_name);
    auto p = resolve_projection(doc, opt.projection_name);
    std::vector<torq::Cone> sub;
    for (const auto& name : opt.sub_names) sub.push_back(find_cone(doc, name));
    if (verb == "saturated") {
      torq::SeparatedToricQuotient q =
          torq::separated_toric_quotient(s, l, p, opt.iteration_cap);
      bool sat = torq::is_saturated_subfan(q.morphism(), sub);
      json result;
      result["saturated"] = sat;
      std::ostringstream os;
      os << "saturated: " << (sat ? "true" : "false") << "\n";
      emit(opt, verb, inputs, result, json::array(), json::array(), os.str());
      return 0;
    }
    torq::UniformityReport rep = torq::uniformity_probe(s, l, sub, p, opt.iteration_cap);
    json result;
    result["restricted_quotient"] = torq::fan_to_json(rep.restricted_quotient);
    result["image_subfan"] = torq::fan_to_json(rep.image_subfan);
    result["equal"] = rep.equal;
    result["mode"] = opt.mode;
    if (opt.mode == "exact")
      result["equal"] = torq::fans_equal(rep.restricted_quotient, rep.image_subfan,
                                         torq::FanCompareMode::exact);
    std::ostringstream os;
    os << "restricted quotient: " << fan_human(rep.restricted_quotient);
    os << "image subfan: " << fan_human(rep.image_subfan);
    os << "equal: " << (result["equal"].get<bool>() ? "true" : "false") << "\n";
    emit(opt, verb, inputs, result, json::array(), json::array(), os.str());
    return 0;
  }

  throw torq::ValidationError("unknown verb '" + verb + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torq: separated toric quotients of toric prevarieties"};
  app.require_subcommand(1);
  Options opt;

  std::vector<std::string> verbs = {"quotient", "certify",  "weakly-proper", "classes",
                                    "fibers",   "factors",  "restrict",      "saturated",
                                    "uniformity", "validate"};
  for (const auto& verb : verbs) {
    CLI::App* sc = app.add_subcommand(verb);
    sc->add_option("file", opt.file, "input .torq.json document")->required();
    sc->add_option("--system", opt.system_name, "system (or fan) object name");
    sc->add_option("--sublattice", opt.sublattice_name, "sublattice object name");
    sc->add_option("--projection", opt.projection_name,
                   "map object fixing the quotient coordinates");
    sc->add_option("--map", opt.map_name, "morphism matrix object name");
    sc->add_option("--target", opt.target_name, "target fan object name");
    sc->add_option("--cone", opt.cone_name, "cone object name");
    sc->add_option("--p-map", opt.p_map_name, "matrix of the morphism factored through");
    sc->add_option("--p-target", opt.p_target_name, "target fan of the morphism factored through");
    sc->add_option("--sub", opt.sub_names, "cone names of the open subset")->delimiter(',');
    sc->add_option("--out", opt.out, "output mode: human|json")
        ->check(CLI::IsMember({"human", "json"}));
    sc->add_option("--mode", opt.mode, "fan comparison mode: exact|unimodular")
        ->check(CLI::IsMember({"exact", "unimodular"}));
    sc->add_option("--iteration-cap", opt.iteration_cap, "merge loop step limit");
    sc->add_flag("--lenient", opt.lenient, "warn instead of failing on unknown fields");
    sc->add_flag("--no-trace", opt.no_trace, "omit the merge trace from reports");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    return run(opt, verb);
  } catch (const torq::IterationCapExceeded& e) {
    std::cerr << "error (IterationCapExceeded): " << e.what() << "\n";
    return 2;
  } catch (const torq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
