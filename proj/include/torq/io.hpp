#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "torq/quotient.hpp"

namespace torq {

/// A named bundle of objects as stored in a `.torq.json` file. Every object
/// may declare its own rank; `lattice_rank` is the document default.
struct Document {
  std::string version = "1";
  int lattice_rank = 0;
  std::map<std::string, Cone> cones;
  std::map<std::string, Sublattice> sublattices;
  std::map<std::string, IntMatrix> maps;
  std::map<std::string, Fan> fans;
  std::map<std::string, AffineSystemOfFans> systems;

  bool operator==(const Document& o) const = default;
};

/// Parses and re-validates all invariants. In strict mode unknown fields are
/// a SchemaError; in lenient mode they are appended to `warnings`.
Document parse_document(const std::string& text, bool strict = true,
                        std::vector<std::string>* warnings = nullptr);

/// Canonical text: sorted keys, canonical cone generators, two-space indent.
/// parse(serialize(d)) == d, and serialize is a fixpoint on parsed documents.
std::string serialize_document(const Document& d);

// JSON building blocks, shared with the CLI report writer. All integers are
// emitted as decimal strings.
nlohmann::json vector_to_json(const IntVector& v);
nlohmann::json matrix_to_json(const IntMatrix& m);
nlohmann::json cone_to_json(const Cone& c);
nlohmann::json fan_to_json(const Fan& f);
nlohmann::json sublattice_to_json(const Sublattice& l);
nlohmann::json system_to_json(const AffineSystemOfFans& s);

}  // namespace torq
