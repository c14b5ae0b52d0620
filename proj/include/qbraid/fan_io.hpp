#pragma once

// FanDocument: the JSON exchange format for 3D fans over an overlattice of
// Z^3. All vectors are integer triples scaled by the common denominator.

#include <cstddef>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qbraid/errors.hpp"
#include "qbraid/fan.hpp"
#include "qbraid/lattice.hpp"

namespace qbraid {

using Json = nlohmann::json;

inline constexpr const char* kFanSchemaVersion = "1";

struct FanDocument {
  std::string schema_version = kFanSchemaVersion;
  Int denominator = 1;
  std::vector<Vec<3>> rays;
  std::vector<Vec<3>> lattice_generators;
  std::vector<std::vector<std::size_t>> maximal_cones;
  Json metadata = Json::object();

  friend bool operator==(const FanDocument&, const FanDocument&) = default;
};

namespace detail {

inline Int json_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where + " must be an integer");
  return j.get<Int>();
}

inline Vec<3> json_vec3(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw SchemaError(where + " must be an array of 3 integers");
  return {json_int(j[0], where), json_int(j[1], where), json_int(j[2], where)};
}

inline std::vector<Vec<3>> json_vec3_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + " must be an array");
  std::vector<Vec<3>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(json_vec3(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline const Json& require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace detail

inline Json to_json(const FanDocument& doc) {
  Json rays = Json::array(), gens = Json::array(), cones = Json::array();
  for (const auto& v : doc.rays) rays.push_back({v[0], v[1], v[2]});
  for (const auto& v : doc.lattice_generators) gens.push_back({v[0], v[1], v[2]});
  for (const auto& c : doc.maximal_cones) cones.push_back(c);
  return Json{{"schema_version", doc.schema_version},
              {"denominator", doc.denominator},
              {"rays", rays},
              {"lattice_generators", gens},
              {"maximal_cones", cones},
              {"metadata", doc.metadata}};
}

// Structural parse only; see validate() for the mathematical checks.
inline FanDocument fan_document_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("fan document must be a JSON object");
  FanDocument doc;
  const Json& version = detail::require(j, "schema_version");
  if (!version.is_string()) throw SchemaError("schema_version must be a string");
  doc.schema_version = version.get<std::string>();
  if (doc.schema_version != kFanSchemaVersion) throw SchemaError("unsupported schema_version '" + doc.schema_version + "'");
  doc.denominator = detail::json_int(detail::require(j, "denominator"), "denominator");
  doc.rays = detail::json_vec3_list(detail::require(j, "rays"), "rays");
  doc.lattice_generators = detail::json_vec3_list(detail::require(j, "lattice_generators"), "lattice_generators");
  const Json& cones = detail::require(j, "maximal_cones");
  if (!cones.is_array()) throw SchemaError("maximal_cones must be an array");
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const std::string where = "maximal_cones[" + std::to_string(i) + "]";
    if (!cones[i].is_array()) throw SchemaError(where + " must be an array");
    std::vector<std::size_t> idx;
    for (const auto& x : cones[i]) {
      if (!x.is_number_integer() || x.get<Int>() < 0) throw SchemaError(where + " must hold non-negative integers");
      idx.push_back(x.get<std::size_t>());
    }
    doc.maximal_cones.push_back(std::move(idx));
  }
  if (auto it = j.find("metadata"); it != j.end()) {
    if (!it->is_object()) throw SchemaError("metadata must be an object");
    doc.metadata = *it;
  }
  return doc;
}

// Builds the lattice and checks that every ray is primitive in it and every
// cone index is in range and distinct.
inline Lattice<3> validate(const FanDocument& doc) {
  if (doc.denominator < 1) throw SchemaError("denominator must be positive");
  Lattice<3> lattice;
  try {
    lattice = Lattice<3>(doc.denominator, doc.lattice_generators);
  } catch (const Error& e) {
    throw SchemaError(std::string("invalid lattice_generators: ") + e.what());
  }
  if (doc.rays.empty()) throw SchemaError("fan has no rays");
  for (std::size_t i = 0; i < doc.rays.size(); ++i)
    if (!lattice.is_primitive(doc.rays[i]))
      throw SchemaError("ray " + std::to_string(i) + " is not a primitive vector of the lattice");
  for (std::size_t c = 0; c < doc.maximal_cones.size(); ++c) {
    const auto& idx = doc.maximal_cones[c];
    if (idx.empty()) throw SchemaError("maximal cone " + std::to_string(c) + " is empty");
    if (std::set<std::size_t>(idx.begin(), idx.end()).size() != idx.size())
      throw SchemaError("maximal cone " + std::to_string(c) + " repeats a ray");
    for (auto i : idx)
      if (i >= doc.rays.size()) throw SchemaError("maximal cone " + std::to_string(c) + " uses ray index out of range");
  }
  return lattice;
}

inline Fan<3> to_fan(const FanDocument& doc) {
  Fan<3> fan{validate(doc), doc.rays, {}};
  for (const auto& idx : doc.maximal_cones) fan.maximal_cones.push_back(fan.make_cone(idx));
  return fan;
}

inline FanDocument from_fan(const Fan<3>& fan, Json metadata = Json::object()) {
  FanDocument doc;
  doc.denominator = fan.lattice.denominator();
  doc.rays = fan.rays;
  doc.lattice_generators = fan.lattice.generators();
  for (const auto& c : fan.maximal_cones) doc.maximal_cones.push_back(c.ray_indices);
  doc.metadata = std::move(metadata);
  return doc;
}

inline FanDocument parse_fan_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  return fan_document_from_json(j);
}

inline std::string serialize(const FanDocument& doc, int indent = 2) { return to_json(doc).dump(indent) + "\n"; }

inline FanDocument load_fan_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fan_document(ss.str());
}

}  // namespace qbraid
