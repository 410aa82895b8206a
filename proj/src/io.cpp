#include "torq/io.hpp"

#include <algorithm>

#include "torq/errors.hpp"

namespace torq {

using nlohmann::json;

namespace {

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

Integer parse_integer(const json& j, const std::string& where) {
  if (!j.is_string()) schema_fail(where, "integers must be decimal strings");
  const std::string s = j.get<std::string>();
  if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos ||
      (s[0] == '-' && s.size() == 1) || s.find('-', 1) != std::string::npos)
    schema_fail(where, "'" + s + "' is not a decimal integer");
  return Integer(s);
}

IntVector parse_vector(const json& j, int rank, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank)
    schema_fail(where, "expected an array of " + std::to_string(rank) + " integer strings");
  IntVector v;
  for (const auto& e : j) v.push_back(parse_integer(e, where));
  return v;
}

std::vector<IntVector> parse_vector_list(const json& j, int rank, const std::string& where) {
  if (!j.is_array()) schema_fail(where, "expected an array of vectors");
  std::vector<IntVector> out;
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_vector(j[i], rank, where + "[" + std::to_string(i) + "]"));
  return out;
}

int object_rank(const json& rec, int default_rank, const std::string& where) {
  if (!rec.contains("rank")) return default_rank;
  if (!rec["rank"].is_number_integer() || rec["rank"].get<int>() < 0)
    schema_fail(where + ".rank", "must be a non-negative integer");
  return rec["rank"].get<int>();
}

void check_fields(const json& rec, const std::vector<std::string>& allowed,
                  const std::string& where, bool strict, std::vector<std::string>* warnings) {
  for (const auto& [k, v] : rec.items()) {
    if (std::find(allowed.begin(), allowed.end(), k) != allowed.end()) continue;
    if (strict) schema_fail(where, "unknown field '" + k + "'");
    if (warnings) warnings->push_back(where + ": ignoring unknown field '" + k + "'");
  }
}

// A cone reference is either the name of a cone object or an inline
// generator list.
Cone resolve_cone(const json& j, const Document& doc, int rank, const std::string& where) {
  if (j.is_string()) {
    auto it = doc.cones.find(j.get<std::string>());
    if (it == doc.cones.end())
      schema_fail(where, "unresolved cone name '" + j.get<std::string>() + "'");
    if (it->second.ambient_rank() != rank)
      throw ValidationError(where + ": cone '" + j.get<std::string>() + "' has rank " +
                            std::to_string(it->second.ambient_rank()) + ", expected " +
                            std::to_string(rank));
    return it->second;
  }
  return Cone::from_rays(rank, parse_vector_list(j, rank, where));
}

}  // namespace

Document parse_document(const std::string& text, bool strict,
                        std::vector<std::string>* warnings) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("document: ") + e.what());
  }
  if (!root.is_object()) schema_fail("document", "top level must be an object");
  check_fields(root, {"version", "lattice_rank", "objects"}, "document", strict, warnings);
  if (!root.contains("version") || !root["version"].is_string())
    schema_fail("version", "missing or not a string");
  if (!root.contains("lattice_rank") || !root["lattice_rank"].is_number_integer() ||
      root["lattice_rank"].get<int>() < 0)
    schema_fail("lattice_rank", "missing or not a non-negative integer");

  Document doc;
  doc.version = root["version"].get<std::string>();
  doc.lattice_rank = root["lattice_rank"].get<int>();

  json objects = root.value("objects", json::object());
  if (!objects.is_object()) schema_fail("objects", "must be an object");

  auto record_of = [&](const std::string& name) -> const json& {
    const json& rec = objects[name];
    if (!rec.is_object() || !rec.contains("type") || !rec["type"].is_string())
      schema_fail("objects." + name, "each object needs a string 'type'");
    return rec;
  };

  // Two passes: cones first so that later objects can refer to them by name.
  for (const auto& [name, _] : objects.items()) {
    const json& rec = record_of(name);
    if (rec["type"] != "cone") continue;
    check_fields(rec, {"type", "rank", "generators"}, "objects." + name, strict, warnings);
    int rank = object_rank(rec, doc.lattice_rank, "objects." + name);
    if (!rec.contains("generators")) schema_fail("objects." + name, "cone needs 'generators'");
    doc.cones[name] =
        Cone::from_rays(rank, parse_vector_list(rec["generators"], rank, "objects." + name));
  }

  for (const auto& [name, _] : objects.items()) {
    const json& rec = record_of(name);
    const std::string type = rec["type"].get<std::string>();
    const std::string where = "objects." + name;
    if (type == "cone") {
      continue;
    } else if (type == "sublattice") {
      check_fields(rec, {"type", "rank", "generators"}, where, strict, warnings);
      int rank = object_rank(rec, doc.lattice_rank, where);
      if (!rec.contains("generators")) schema_fail(where, "sublattice needs 'generators'");
      Sublattice l = Sublattice::from_generators(
          rank, parse_vector_list(rec["generators"], rank, where));
      l = canonicalize(l);
      l.saturated = saturate(l).basis == l.basis;
      doc.sublattices[name] = l;
    } else if (type == "map") {
      check_fields(rec, {"type", "rows", "cols", "matrix"}, where, strict, warnings);
      if (!rec.contains("rows") || !rec.contains("cols") ||
          !rec["rows"].is_number_integer() || !rec["cols"].is_number_integer())
        schema_fail(where, "map needs integer 'rows' and 'cols'");
      int rows = rec["rows"].get<int>(), cols = rec["cols"].get<int>();
      if (rows < 0 || cols < 0) schema_fail(where, "negative matrix shape");
      if (!rec.contains("matrix") || !rec["matrix"].is_array() ||
          static_cast<int>(rec["matrix"].size()) != rows)
        schema_fail(where, "map needs a 'matrix' with exactly 'rows' rows");
      IntMatrix m(rows, cols);
      for (int r = 0; r < rows; ++r)
        m.set_row(r, parse_vector(rec["matrix"][r], cols, where + ".matrix"));
      doc.maps[name] = m;
    } else if (type == "fan") {
      check_fields(rec, {"type", "rank", "max_cones", "quasi"}, where, strict, warnings);
      int rank = object_rank(rec, doc.lattice_rank, where);
      if (!rec.contains("max_cones") || !rec["max_cones"].is_array())
        schema_fail(where, "fan needs an array 'max_cones'");
      bool quasi = rec.value("quasi", false);
      std::vector<Cone> cones;
      for (size_t i = 0; i < rec["max_cones"].size(); ++i)
        cones.push_back(resolve_cone(rec["max_cones"][i], doc, rank,
                                     where + ".max_cones[" + std::to_string(i) + "]"));
      doc.fans[name] = fan_from_max_cones(rank, cones, quasi);
    } else if (type == "system") {
      check_fields(rec, {"type", "rank", "charts", "glueings"}, where, strict, warnings);
      int rank = object_rank(rec, doc.lattice_rank, where);
      if (!rec.contains("charts") || !rec["charts"].is_array())
        schema_fail(where, "system needs an array 'charts'");
      std::vector<Cone> charts;
      for (size_t i = 0; i < rec["charts"].size(); ++i)
        charts.push_back(resolve_cone(rec["charts"][i], doc, rank,
                                      where + ".charts[" + std::to_string(i) + "]"));
      std::map<std::pair<int, int>, std::vector<Cone>> glue;
      for (const auto& g : rec.value("glueings", json::array())) {
        if (!g.is_object() || !g.contains("charts") || !g["charts"].is_array() ||
            g["charts"].size() != 2 || !g.contains("cones"))
          schema_fail(where + ".glueings", "each entry needs 'charts' [i,j] and 'cones'");
        int i = g["charts"][0].get<int>(), j = g["charts"][1].get<int>();
        std::vector<Cone>& slot = glue[{std::min(i, j), std::max(i, j)}];
        for (size_t t = 0; t < g["cones"].size(); ++t)
          slot.push_back(resolve_cone(g["cones"][t], doc, rank,
                                      where + ".glueings.cones[" + std::to_string(t) + "]"));
      }
      doc.systems[name] = system_from_charts(rank, charts, glue);
    } else {
      schema_fail(where, "unknown type '" + type + "'");
    }
  }
  return doc;
}

json vector_to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json matrix_to_json(const IntMatrix& m) {
  json a = json::array();
  for (const auto& row : m.row_list()) a.push_back(vector_to_json(row));
  return a;
}

json cone_to_json(const Cone& c) {
  json gens = json::array();
  for (const auto& g : c.generators()) gens.push_back(vector_to_json(g));
  return gens;
}

json fan_to_json(const Fan& f) {
  json rec;
  rec["type"] = "fan";
  rec["rank"] = f.ambient_rank;
  if (f.quasi) rec["quasi"] = true;
  json mc = json::array();
  for (const auto& c : f.max_cones) mc.push_back(cone_to_json(c));
  rec["max_cones"] = mc;
  return rec;
}

json sublattice_to_json(const Sublattice& l) {
  json rec;
  rec["type"] = "sublattice";
  rec["rank"] = l.ambient_rank;
  rec["generators"] = matrix_to_json(l.basis);
  return rec;
}

json system_to_json(const AffineSystemOfFans& s) {
  json rec;
  rec["type"] = "system";
  rec["rank"] = s.ambient_rank;
  json charts = json::array();
  for (const auto& c : s.charts) charts.push_back(cone_to_json(c));
  rec["charts"] = charts;
  json glue = json::array();
  for (const auto& [idx, cones] : s.glueings) {
    json g;
    g["charts"] = {idx.first, idx.second};
    json cs = json::array();
    for (const auto& c : cones) cs.push_back(cone_to_json(c));
    g["cones"] = cs;
    glue.push_back(g);
  }
  rec["glueings"] = glue;
  return rec;
}

std::string serialize_document(const Document& d) {
  json root;
  root["version"] = d.version;
  root["lattice_rank"] = d.lattice_rank;
  json objects = json::object();
  for (const auto& [name, c] : d.cones) {
    json rec;
    rec["type"] = "cone";
    rec["rank"] = c.ambient_rank();
    rec["generators"] = cone_to_json(c);
    objects[name] = rec;
  }
  for (const auto& [name, l] : d.sublattices) objects[name] = sublattice_to_json(l);
  for (const auto& [name, m] : d.maps) {
    json rec;
    rec["type"] = "map";
    rec["rows"] = m.rows();
    rec["cols"] = m.cols();
    rec["matrix"] = matrix_to_json(m);
    objects[name] = rec;
  }
  for (const auto& [name, f] : d.fans) objects[name] = fan_to_json(f);
  for (const auto& [name, s] : d.systems) objects[name] = system_to_json(s);
  root["objects"] = objects;
  return root.dump(2) + "\n";
}

}  // namespace torq
