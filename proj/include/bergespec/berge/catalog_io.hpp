#pragma once

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "bergespec/berge/berge.hpp"
#include "bergespec/hgraph/io.hpp"

namespace bergespec {

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.num_vertices()}, {"edges", edges}};
}

inline std::string catalog_entry_filename(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "entry_%05zu.uhg", index);
  return buf;
}

/// Index document for a catalog directory. `golden` is the checked-in count
/// for this base, or null when none is recorded.
inline nlohmann::json catalog_index(const BergeCatalog& cat, std::optional<long long> golden) {
  nlohmann::json keys = nlohmann::json::array();
  nlohmann::json files = nlohmann::json::array();
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    keys.push_back(cat.entries[i].key.to_string());
    files.push_back(catalog_entry_filename(i));
  }
  nlohmann::json doc = {
      {"base", graph_to_json(cat.base)},
      {"r", cat.rank},
      {"extra", cat.extra_budget},
      {"count", cat.entries.size()},
      {"raw_assignments", cat.raw_assignments},
      {"keys", keys},
      {"files", files},
      {"golden", golden ? nlohmann::json(*golden) : nlohmann::json(nullptr)},
  };
  if (!cat.diagnostic.empty()) doc["diagnostic"] = cat.diagnostic;
  return doc;
}

/// Writes one .uhg per entry plus index.json into `dir` (created if needed).
inline void write_catalog(const std::string& dir, const BergeCatalog& cat,
                          std::optional<long long> golden = std::nullopt) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path root(dir);
  for (std::size_t i = 0; i < cat.entries.size(); ++i)
    io::write_uhg((root / catalog_entry_filename(i)).string(), cat.entries[i].hypergraph);
  io::detail::write_file((root / "index.json").string(), catalog_index(cat, golden).dump(2) + "\n");
}

}  // namespace bergespec
