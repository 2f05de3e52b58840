#pragma once

// JSON interchange. Quandles: {"order": n, "table": [[...], ...]}, with a
// plain-text grid (first line n, then n rows) accepted on read.

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "augment.hpp"
#include "decompose.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "oracle.hpp"
#include "perm.hpp"
#include "quandle.hpp"

namespace quandle::io {

using json = nlohmann::json;

/// An unvalidated table as read from input.
struct RawQuandle {
  int order = 0;
  Table table;
};

inline json to_json(const Permutation& p) { return p.to_vector(); }

inline json to_json(const PermGroup& g) {
  json gens = json::array();
  for (const auto& p : g.generators())
    gens.push_back(to_json(p));
  return {{"degree", g.degree()}, {"generators", gens}};
}

inline json to_json(const Quandle& q) {
  return {{"order", q.order()}, {"table", q.table()}};
}

inline json to_json(const GammaHom& h) {
  json a = json::array();
  for (const auto& p : h.assignment())
    a.push_back(to_json(p));
  return {{"source_order", h.source().order()},
          {"target_order", h.target_order()},
          {"assignment", a}};
}

inline json to_json(const Mesh& m) {
  json blocks = json::array();
  for (const auto& b : m.blocks())
    blocks.push_back(to_json(b));
  json homs = json::array();
  for (const auto& row : m.homs()) {
    json r = json::array();
    for (const auto& h : row)
      r.push_back(to_json(h));
    homs.push_back(r);
  }
  return {{"blocks", blocks}, {"homs", homs}};
}

inline json layout_json(const std::vector<std::pair<int, int>>& layout) {
  json out = json::array();
  for (auto [b, l] : layout)
    out.push_back({b, l});
  return out;
}

/// Mesh plus its "layout" (global element → [block, local]).
inline json to_json(const Decomposition& d) {
  json j = to_json(d.mesh);
  j["layout"] = layout_json(d.layout);
  return j;
}

inline json to_json(const DecompositionTree& t) {
  json j = {{"quandle", to_json(t.quandle)}, {"leaf", t.is_leaf()}};
  if (!t.is_leaf()) {
    j["mesh"] = to_json(*t.decomposition);
    json children = json::array();
    for (const auto& c : t.children)
      children.push_back(to_json(c));
    j["children"] = children;
  }
  return j;
}

inline json to_json(const CensusEntry& e) {
  return {{"quandle", to_json(e.quandle)},
          {"inner_order", e.inner_order},
          {"seed",
           {{"group_order", e.seed.g.order()},
            {"stabilizer_order", e.seed.h.order()},
            {"z", to_json(e.seed.z)}}}};
}

inline json to_json(const std::vector<CensusEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries)
    out.push_back(to_json(e));
  return out;
}

/// Census file: array of quandle objects carrying a "connected" flag.
inline json to_json(const Census& c, bool connected_only = false) {
  json out = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (connected_only && !c.connected[i])
      continue;
    json q = to_json(c.tables[i]);
    q["connected"] = static_cast<bool>(c.connected[i]);
    out.push_back(q);
  }
  return out;
}

namespace detail {

inline const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw ParseError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

inline int int_value(const json& j, const char* what) {
  if (!j.is_number_integer())
    throw ParseError(std::string(what) + " must be an integer");
  return j.get<int>();
}

} // namespace detail

inline Permutation permutation_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("permutation must be a non-empty image array");
  std::vector<int> images;
  for (const auto& v : j)
    images.push_back(detail::int_value(v, "permutation image"));
  try {
    return Permutation(std::span<const int>(images));
  } catch (const InvalidPermutation& e) {
    throw ParseError(e.what());
  }
}

inline PermGroup group_from_json(const json& j) {
  int degree = detail::int_value(detail::field(j, "degree"), "degree");
  std::vector<Permutation> gens;
  for (const auto& g : detail::field(j, "generators"))
    gens.push_back(permutation_from_json(g));
  try {
    return generate_group(gens, degree);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

inline RawQuandle raw_quandle_from_json(const json& j) {
  RawQuandle r;
  r.order = detail::int_value(detail::field(j, "order"), "order");
  const json& t = detail::field(j, "table");
  if (!t.is_array())
    throw ParseError("table must be an array of rows");
  for (const auto& row : t) {
    if (!row.is_array())
      throw ParseError("table rows must be arrays");
    std::vector<int> cells;
    for (const auto& v : row)
      cells.push_back(detail::int_value(v, "table entry"));
    r.table.push_back(std::move(cells));
  }
  return r;
}

/// JSON or plain grid, detected by the first non-space character.
inline RawQuandle parse_quandle_text(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw ParseError("empty quandle input");
  if (text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return raw_quandle_from_json(j);
  }
  std::istringstream in(text);
  RawQuandle r;
  if (!(in >> r.order) || r.order < 1)
    throw ParseError("grid input must start with a positive order");
  r.table.assign(r.order, std::vector<int>(r.order));
  for (auto& row : r.table)
    for (auto& v : row)
      if (!(in >> v))
        throw ParseError("grid input has fewer than order² entries");
  std::string extra;
  if (in >> extra)
    throw ParseError("grid input has trailing data");
  return r;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Reads and validates; throws ParseError or InvalidQuandle.
inline Quandle read_quandle(const std::string& path) {
  auto raw = parse_quandle_text(read_file(path));
  auto report = validate(raw.order, raw.table);
  if (!report.ok())
    throw InvalidQuandle(std::move(report.violations));
  return *report.quandle;
}

/// Mesh file contents before validation.
struct RawMesh {
  std::vector<Quandle> blocks;
  AssignmentMatrix homs;
  std::optional<std::vector<std::pair<int, int>>> layout;
};

/// Parses {"blocks": [...], "homs": [[...]], "layout"?: [...]}. Diagonal hom
/// entries may be null and are then synthesized canonically. Blocks are
/// validated as quandles.
inline RawMesh raw_mesh_from_json(const json& j) {
  RawMesh m;
  for (const auto& b : detail::field(j, "blocks")) {
    auto raw = raw_quandle_from_json(b);
    auto report = validate(raw.order, raw.table);
    if (!report.ok())
      throw InvalidQuandle(std::move(report.violations));
    m.blocks.push_back(*report.quandle);
  }
  const std::size_t k = m.blocks.size();
  const json& homs = detail::field(j, "homs");
  if (!homs.is_array() || homs.size() != k)
    throw ParseError("homs must be a k×k matrix");
  for (std::size_t i = 0; i < k; ++i) {
    const json& row = homs[i];
    if (!row.is_array() || row.size() != k)
      throw ParseError("homs row " + std::to_string(i) + " must have " +
                       std::to_string(k) + " entries");
    std::vector<std::optional<Assignment>> out_row(k);
    for (std::size_t c = 0; c < k; ++c) {
      const json& h = row[c];
      if (h.is_null()) {
        if (c != i)
          throw ParseError("only diagonal homs may be null");
        continue;
      }
      Assignment a;
      for (const auto& p : detail::field(h, "assignment"))
        a.push_back(permutation_from_json(p));
      if (h.contains("source_order") &&
          detail::int_value(h["source_order"], "source_order") !=
              m.blocks[i].order())
        throw ParseError("source_order disagrees with block " +
                         std::to_string(i));
      if (h.contains("target_order") &&
          detail::int_value(h["target_order"], "target_order") !=
              m.blocks[c].order())
        throw ParseError("target_order disagrees with block " +
                         std::to_string(c));
      out_row[c] = std::move(a);
    }
    m.homs.push_back(std::move(out_row));
  }
  if (j.contains("layout")) {
    std::vector<std::pair<int, int>> layout;
    for (const auto& e : j["layout"]) {
      if (!e.is_array() || e.size() != 2)
        throw ParseError("layout entries must be [block, local] pairs");
      layout.emplace_back(detail::int_value(e[0], "layout block"),
                          detail::int_value(e[1], "layout local index"));
    }
    m.layout = std::move(layout);
  }
  return m;
}

/// Checks that a layout is a bijection onto the mesh's (block, local) cells.
inline void check_layout(const Mesh& mesh,
                         const std::vector<std::pair<int, int>>& layout) {
  auto offsets = mesh.offsets();
  if (static_cast<int>(layout.size()) != offsets.back())
    throw ParseError("layout length differs from the composed order");
  std::vector<bool> hit(layout.size(), false);
  for (auto [b, l] : layout) {
    if (b < 0 || b >= static_cast<int>(mesh.size()) || l < 0 ||
        l >= mesh.blocks()[b].order() || hit[offsets[b] + l])
      throw ParseError("layout is not a bijection onto the blocks");
    hit[offsets[b] + l] = true;
  }
}

} // namespace quandle::io
