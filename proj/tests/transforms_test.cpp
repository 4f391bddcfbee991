#include <gtest/gtest.h>

#include "bergespec/hgraph/canonical.hpp"
#include "bergespec/hgraph/families.hpp"
#include "bergespec/transforms/transforms.hpp"

using namespace bergespec;

namespace {

using Edges = std::vector<std::vector<Vertex>>;

template <class Fn>
Errc error_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::parse;
}

}  // namespace

TEST(MoveEdges, RewritesListedEdges) {
  const UniformHypergraph h(3, 5, Edges{{0, 1, 2}, {0, 3, 4}});
  const auto moved = move_edges(h, {{1}, 3, 1});
  EXPECT_EQ(moved.sorted_edge_list(), (Edges{{0, 1, 2}, {0, 1, 4}}));
  EXPECT_EQ(moved.num_vertices(), 5);
}

TEST(MoveEdges, EmptySpecIsIdentity) {
  const UniformHypergraph h(3, 5, Edges{{0, 1, 2}, {0, 3, 4}});
  EXPECT_EQ(move_edges(h, {{}, 3, 1}), h);
}

TEST(MoveEdges, CollisionIsAMultipleEdgeError) {
  const UniformHypergraph h(3, 4, Edges{{0, 1, 2}, {0, 1, 3}});
  EXPECT_EQ(error_code([&] { move_edges(h, {{1}, 3, 2}); }), Errc::multiple_edge);
}

TEST(MoveEdges, SpecViolations) {
  const UniformHypergraph h(3, 5, Edges{{0, 1, 2}, {0, 3, 4}});
  EXPECT_EQ(error_code([&] { move_edges(h, {{0}, 3, 4}); }), Errc::invalid_structure);  // edge lacks v
  EXPECT_EQ(error_code([&] { move_edges(h, {{1}, 3, 4}); }), Errc::invalid_structure);  // already has u
  EXPECT_EQ(error_code([&] { move_edges(h, {{5}, 3, 1}); }), Errc::invalid_structure);
}

TEST(Merge, DeletesUAndRelabels) {
  const UniformHypergraph h(3, 6, Edges{{0, 1, 2}, {3, 4, 5}});
  const auto merged = merge_vertex(h, 3, 0);
  // {0,4,5} before the labels above 3 shift down
  EXPECT_EQ(merged.num_vertices(), 5);
  EXPECT_EQ(merged.sorted_edge_list(), (Edges{{0, 1, 2}, {0, 3, 4}}));
  EXPECT_TRUE(is_isomorphic(merged, UniformHypergraph(3, 6, Edges{{0, 1, 2}, {0, 4, 5}})));
}

TEST(Merge, SharedLinkAndSharedEdge) {
  const UniformHypergraph h(3, 4, Edges{{0, 1, 2}, {1, 2, 3}});
  EXPECT_EQ(error_code([&] { merge_vertex(h, 3, 0); }), Errc::shared_link);
  EXPECT_EQ(error_code([&] { merge_vertex(h, 1, 2); }), Errc::shared_edge);
  EXPECT_EQ(error_code([&] { merge_vertex(h, 1, 1); }), Errc::invalid_structure);
}

TEST(Merge, PreservesEdgeCount) {
  const auto h = expansion(families::path(5), 3);
  for (Vertex u = 0; u < h.num_vertices(); ++u)
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
      if (u == v) continue;
      try {
        EXPECT_EQ(merge_vertex(h, u, v).num_edges(), h.num_edges());
      } catch (const Error& e) {
        EXPECT_TRUE(e.code() == Errc::shared_edge || e.code() == Errc::shared_link);
      }
    }
}

TEST(PendantPath, WalksToRoot) {
  const Graph g = families::cycle_two_paths(3, 3, 1);
  const auto p = pendant_path(g, 0, 5);
  EXPECT_EQ(p.length(), 3);
  EXPECT_EQ(p.vertices.front(), 0);
  EXPECT_EQ(pendant_path(g, 0, 0).length(), 0);
  EXPECT_EQ(error_code([&] { pendant_path(g, 0, 1); }), Errc::no_pendant_paths);
}

TEST(PathExchange, ThreeOneBecomesTwoTwo) {
  const Graph g = families::cycle_two_paths(3, 3, 1);  // tails 5 and 6
  const auto step = path_exchange_step(g, 0, 5, 6);
  EXPECT_TRUE(is_isomorphic(as_hypergraph(step.graph), as_hypergraph(families::cycle_two_paths(3, 2, 2))));
  EXPECT_EQ(pendant_path(step.graph, 0, step.tail_a).length(), 2);
  EXPECT_EQ(pendant_path(step.graph, 0, step.tail_b).length(), 2);
}

TEST(PathExchange, BalancedInputIsReturned) {
  const Graph g = families::cycle_two_paths(3, 1, 1);
  EXPECT_EQ(path_exchange(g, 0, 3, 4), g);
}

TEST(PathExchange, IterationReachesDeltaOne) {
  for (int k = 6; k <= 12; ++k) {
    const Graph start = families::cycle_two_paths(3, k - 4, 0);
    PathExchangeResult cur{start, static_cast<Vertex>(start.num_vertices() - 1), 0};
    for (int guard = 0; guard < k; ++guard) {
      auto next = path_exchange_step(cur.graph, 0, cur.tail_a, cur.tail_b);
      if (next.graph == cur.graph) break;
      cur = next;
    }
    EXPECT_TRUE(is_isomorphic(as_hypergraph(cur.graph), as_hypergraph(families::delta1(k)))) << k;
  }
}

TEST(PathExchange, RootWithoutTwoPendantPaths) {
  const Graph c = families::cycle(5);
  EXPECT_EQ(error_code([&] { path_exchange(c, 0, 0, 0); }), Errc::no_pendant_paths);
  EXPECT_EQ(error_code([&] { path_exchange(c, 0, 2, 0); }), Errc::no_pendant_paths);
  const Graph p = families::cycle_two_paths(3, 3, 0);
  EXPECT_EQ(error_code([&] { path_exchange(p, 0, 5, 4); }), Errc::no_pendant_paths);  // same path
}
