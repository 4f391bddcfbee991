#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "bergespec/berge/berge.hpp"
#include "bergespec/berge/catalog_io.hpp"
#include "bergespec/berge/oracle.hpp"
#include "bergespec/hgraph/families.hpp"
#include "bergespec/hgraph/io.hpp"

using namespace bergespec;

namespace {

using Edges = std::vector<std::vector<Vertex>>;

std::set<CanonicalForm> keys(const BergeCatalog& cat) {
  std::set<CanonicalForm> out;
  for (const auto& e : cat.entries) out.insert(e.key);
  return out;
}

long long golden_count(const std::string& key) {
  std::ifstream in(std::filesystem::path(BERGESPEC_GOLDEN_DIR) / "berge_counts.json");
  return nlohmann::json::parse(in).at(key).get<long long>();
}

}  // namespace

TEST(VertexBound, Examples) {
  EXPECT_EQ(vertex_bound(families::path(6), 3), 7);
  EXPECT_EQ(vertex_bound(families::cycle(6), 3), 7);
  EXPECT_EQ(vertex_bound(families::star(11), 3), 12);
}

TEST(Enumerate, SingleEdgeHasOneEntry) {
  const auto cat = enumerate_berge(families::path(2), 3, 1);
  ASSERT_EQ(cat.size(), 1u);
  EXPECT_EQ(cat.entries[0].hypergraph, UniformHypergraph(3, 3, Edges{{0, 1, 2}}));
}

// Frozen counts, each confirmed by the brute-force orbit oracle.
TEST(Enumerate, CountsMatchBruteForceOracle) {
  struct Case {
    Graph g;
    int extra;
    std::size_t expected;
  };
  const std::vector<Case> cases{{families::path(3), 1, 1},  {families::path(3), 0, 0},
                                {families::path(4), 1, 4},  {families::cycle(3), 1, 1},
                                {families::path(6), 0, 36}, {families::path(6), 1, 124},
                                {families::star(6), 1, 14}, {families::cycle(6), 1, 319}};
  for (const auto& c : cases) {
    const auto cat = enumerate_berge(c.g, 3, c.extra);
    EXPECT_EQ(cat.size(), c.expected);
    EXPECT_EQ(oracle_berge_count(c.g, 3, c.extra), c.expected);
  }
}

TEST(Enumerate, GoldenFileAgrees) {
  EXPECT_EQ(golden_count("path:k3:r3:extra1"), 1);
  EXPECT_EQ(golden_count("path:k6:r3:extra1"), 124);
  EXPECT_EQ(golden_count("k2:k2:r3:extra1"), 1);
  EXPECT_EQ(golden_count("cycle:k6:r3:extra1"), 319);
}

TEST(Enumerate, EntriesAreBergeAndDistinct) {
  for (const Graph& g : {families::path(6), families::cycle(6), families::star(6), families::delta1(7)}) {
    const auto cat = enumerate_berge(g, 3, 1);
    EXPECT_EQ(keys(cat).size(), cat.size());
    for (const auto& e : cat.entries) {
      EXPECT_TRUE(is_berge(e.hypergraph, g).has_value());
      EXPECT_EQ(canonical_form(e.hypergraph), e.key);
      EXPECT_LE(e.hypergraph.num_vertices(), vertex_bound(g, 3));
      // the stored witness puts each graph edge inside its hyperedge
      ASSERT_EQ(e.witness.assignment.size(), g.num_edges());
      for (std::size_t i = 0; i < g.num_edges(); ++i) {
        const auto& img = e.witness.assignment[i];
        const auto [u, v] = g.edges()[i];
        EXPECT_TRUE(std::count(img.begin(), img.end(), e.witness.vertex_map[u]) == 1 &&
                    std::count(img.begin(), img.end(), e.witness.vertex_map[v]) == 1);
      }
    }
  }
}

TEST(Enumerate, WorkerCountDoesNotChangeTheCatalog) {
  EnumerateOptions one, many;
  many.jobs = 8;
  for (const Graph& g : {families::path(6), families::cycle(6)}) {
    const auto a = enumerate_berge(g, 3, 1, one);
    const auto b = enumerate_berge(g, 3, 1, many);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.entries[i].key, b.entries[i].key);
    EXPECT_EQ(a.raw_assignments, b.raw_assignments);
  }
}

TEST(Enumerate, BudgetMonotonicity) {
  for (const Graph& g : {families::path(6), families::cycle(6), families::star(6)}) {
    const auto small = keys(enumerate_berge(g, 3, 0));
    const auto large = keys(enumerate_berge(g, 3, 1));
    EXPECT_TRUE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  }
}

TEST(Enumerate, SameVertexCountEntriesExistForPathsAndCycles) {
  for (int k : {6, 7}) {
    EXPECT_GT(enumerate_berge(families::path(k), 3, 0).size(), 0u);
    EXPECT_GT(enumerate_berge(families::cycle(k), 3, 0).size(), 0u);
  }
}

TEST(Enumerate, SmallPoolGivesEmptyCatalogWithDiagnostic) {
  const auto cat = enumerate_berge(families::path(2), 4, 1);
  EXPECT_EQ(cat.size(), 0u);
  EXPECT_FALSE(cat.diagnostic.empty());
}

TEST(Enumerate, Errors) {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::parse;  // sentinel: nothing thrown
  };
  EXPECT_EQ(code([] { enumerate_berge(families::path(4), 3, 2); }), Errc::parameter_domain);
  EXPECT_EQ(code([] { enumerate_berge(Graph(4, {{0, 1}, {2, 3}}), 3, 1); }), Errc::invalid_structure);
  EXPECT_EQ(code([] { enumerate_berge(Graph(3, {}), 3, 1); }), Errc::invalid_structure);
  EXPECT_EQ(code([] { enumerate_berge(families::star(12), 3, 1); }), Errc::refused);
}

TEST(IsBerge, Examples) {
  const Graph c3 = families::cycle(3);
  EXPECT_TRUE(is_berge(expansion(c3, 3), c3).has_value());
  for (const Graph& g : {families::path(5), families::delta2(7), families::star(5)})
    EXPECT_TRUE(is_berge(suspension(g, 1), g).has_value());
  EXPECT_FALSE(is_berge(UniformHypergraph(3, 3, Edges{{0, 1, 2}}), families::path(3)).has_value());
  // right edge count, but the three edges only meet at vertex 0
  EXPECT_FALSE(is_berge(UniformHypergraph(3, 7, Edges{{0, 1, 2}, {0, 3, 4}, {0, 5, 6}}), c3).has_value());
  EXPECT_TRUE(is_berge(UniformHypergraph(3, 5, Edges{{0, 1, 2}, {0, 3, 4}, {1, 3, 4}}), c3).has_value());
  EXPECT_THROW(is_berge(UniformHypergraph(3, 13, Edges{{0, 1, 2}}), Graph(2, {{0, 1}})), Error);
}

TEST(IsBerge, RelabelledHypergraphStillRecognised) {
  const Graph g = families::path(4);
  const auto h = relabel(expansion(g, 3), {4, 6, 0, 3, 1, 5, 2});
  const auto w = is_berge(h, g);
  ASSERT_TRUE(w.has_value());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const auto [u, v] = g.edges()[i];
    const auto& img = w->assignment[i];
    EXPECT_TRUE(std::count(img.begin(), img.end(), w->vertex_map[u]) == 1);
    EXPECT_TRUE(std::count(img.begin(), img.end(), w->vertex_map[v]) == 1);
    EXPECT_TRUE(h.has_edge(img));
  }
}

TEST(CatalogIo, WritesEntriesAndIndex) {
  const auto dir = std::filesystem::temp_directory_path() / "bergespec_catalog_test";
  std::filesystem::remove_all(dir);
  const auto cat = enumerate_berge(families::path(4), 3, 1);
  write_catalog(dir.string(), cat, 4);
  std::ifstream in(dir / "index.json");
  const auto index = nlohmann::json::parse(in);
  EXPECT_EQ(index.at("count"), 4);
  EXPECT_EQ(index.at("golden"), 4);
  EXPECT_EQ(index.at("r"), 3);
  ASSERT_EQ(index.at("keys").size(), 4u);
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const auto h = io::read_uhg((dir / catalog_entry_filename(i)).string());
    EXPECT_EQ(canonical_form(h).to_string(), index.at("keys")[i].get<std::string>());
  }
  std::filesystem::remove_all(dir);
}
