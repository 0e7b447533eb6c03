#pragma once

// JSON serialization for structures and homomorphisms.  Key order is fixed
// (signature, carriers, functions, relations, ops), inner keys are
// alphabetical, and arrays are sorted, so serialization is byte-stable.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "phl/structure.hpp"

namespace phl {

using Json = nlohmann::ordered_json;

class JsonError : public std::runtime_error {
 public:
  explicit JsonError(const std::string& msg) : std::runtime_error(msg) {}
};

inline Json structure_to_json(const PartialStructure& m) {
  Json j;
  j["signature"] = m.signature_name;
  Json carriers = Json::object();
  for (const auto& [s, c] : m.carriers) carriers[s] = c;
  j["carriers"] = std::move(carriers);
  Json functions = Json::object();
  for (const auto& [name, table] : m.functions) {
    Json rows = Json::array();
    for (const auto& [args, value] : table) {
      Json row = args;
      row.push_back(value);
      rows.push_back(std::move(row));
    }
    functions[name] = std::move(rows);
  }
  j["functions"] = std::move(functions);
  Json relations = Json::object();
  for (const auto& [name, table] : m.relations) {
    Json rows = Json::array();
    for (const auto& args : table) rows.push_back(args);
    relations[name] = std::move(rows);
  }
  j["relations"] = std::move(relations);
  return j;
}

inline PartialStructure structure_from_json(const Json& j,
                                            const Signature& sig) {
  if (!j.is_object()) throw JsonError("structure must be a JSON object");
  PartialStructure m;
  m.signature = sig;
  m.signature_name = j.value("signature", std::string{});
  for (const auto& s : sig.sorts) m.carriers[s] = {};
  if (j.contains("carriers")) {
    for (const auto& [s, ids] : j.at("carriers").items()) {
      if (!sig.has_sort(s)) throw JsonError("carrier for undeclared sort: " + s);
      std::vector<int> c = ids.get<std::vector<int>>();
      std::sort(c.begin(), c.end());
      m.carriers[s] = std::move(c);
    }
  }
  if (j.contains("functions")) {
    for (const auto& [name, rows] : j.at("functions").items()) {
      const FunctionDecl* f = sig.function(name);
      if (!f) throw JsonError("table for undeclared function: " + name);
      auto& table = m.functions[name];
      for (const auto& row : rows) {
        Tuple entry = row.get<Tuple>();
        if (entry.size() != f->arg_sorts.size() + 1)
          throw JsonError("row length mismatch in " + name);
        int value = entry.back();
        entry.pop_back();
        auto [it, fresh] = table.emplace(std::move(entry), value);
        if (!fresh && it->second != value)
          throw JsonError("conflicting rows for " + name);
      }
      if (table.empty()) m.functions.erase(name);
    }
  }
  if (j.contains("relations")) {
    for (const auto& [name, rows] : j.at("relations").items()) {
      const RelationDecl* r = sig.relation(name);
      if (!r) throw JsonError("table for undeclared relation: " + name);
      auto& table = m.relations[name];
      for (const auto& row : rows) {
        Tuple entry = row.get<Tuple>();
        if (entry.size() != r->arg_sorts.size())
          throw JsonError("row length mismatch in " + name);
        table.insert(std::move(entry));
      }
      if (table.empty()) m.relations.erase(name);
    }
  }
  try {
    m.validate();
  } catch (const ElaborationError& e) {
    throw JsonError(e.what());
  }
  return m;
}

inline Json algebra_to_json(const PartialStructure& underlying,
                            const OpTables& ops) {
  Json j = structure_to_json(underlying);
  Json jo = Json::object();
  for (const auto& [name, table] : ops) {
    Json rows = Json::array();
    for (const auto& [args, value] : table) {
      Json row = args;
      row.push_back(value);
      rows.push_back(std::move(row));
    }
    jo[name] = std::move(rows);
  }
  j["ops"] = std::move(jo);
  return j;
}

inline OpTables ops_from_json(const Json& j) {
  OpTables ops;
  if (!j.contains("ops")) return ops;
  for (const auto& [name, rows] : j.at("ops").items()) {
    auto& table = ops[name];
    for (const auto& row : rows) {
      Tuple entry = row.get<Tuple>();
      if (entry.empty()) throw JsonError("empty op row in " + name);
      int value = entry.back();
      entry.pop_back();
      table.emplace(std::move(entry), value);
    }
  }
  return ops;
}

inline Json hom_to_json(const Homomorphism& h) {
  Json j;
  j["source"] = structure_to_json(h.source);
  j["target"] = structure_to_json(h.target);
  Json maps = Json::object();
  for (const auto& [s, mp] : h.maps) {
    Json rows = Json::array();
    for (const auto& [x, y] : mp) rows.push_back(Json::array({x, y}));
    maps[s] = std::move(rows);
  }
  j["maps"] = std::move(maps);
  return j;
}

inline Homomorphism hom_from_json(const Json& j, const Signature& sig) {
  Homomorphism h;
  h.source = structure_from_json(j.at("source"), sig);
  h.target = structure_from_json(j.at("target"), sig);
  if (j.contains("maps")) {
    for (const auto& [s, rows] : j.at("maps").items()) {
      if (!sig.has_sort(s)) throw JsonError("map for undeclared sort: " + s);
      auto& mp = h.maps[s];
      for (const auto& row : rows) {
        Tuple pair = row.get<Tuple>();
        if (pair.size() != 2) throw JsonError("map rows must be pairs");
        mp[pair[0]] = pair[1];
      }
    }
  }
  for (const auto& s : sig.sorts) {
    h.maps.try_emplace(s);
    for (int x : h.source.carrier(s))
      if (!h.maps[s].count(x))
        throw JsonError("map for sort " + s + " misses element " +
                        std::to_string(x));
  }
  return h;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw JsonError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

inline std::string load_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace phl
