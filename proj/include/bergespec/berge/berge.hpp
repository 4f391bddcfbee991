#pragma once

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bergespec/hgraph/canonical.hpp"
#include "bergespec/hgraph/operations.hpp"
#include "bergespec/hgraph/types.hpp"
#include "bergespec/parallel.hpp"

namespace bergespec {

/// phi: graph edge i lies inside hyperedge assignment[i] after mapping the
/// graph's vertices through vertex_map (identity for catalog entries).
struct BergeEmbedding {
  std::vector<Vertex> vertex_map;
  std::vector<std::vector<Vertex>> assignment;
};

struct BergeEntry {
  UniformHypergraph hypergraph;
  BergeEmbedding witness;
  CanonicalForm key;
};

struct BergeCatalog {
  Graph base;
  int rank = 3;
  int extra_budget = 0;
  std::vector<BergeEntry> entries;
  std::uint64_t raw_assignments = 0;  // distinct-image assignments visited
  std::string diagnostic;

  std::size_t size() const { return entries.size(); }
};

struct EnumerateOptions {
  int jobs = 1;
  bool force = false;                 // skip the raw-space guard
  double max_raw_space = 1e8;
};

inline int vertex_bound(const Graph& g, int r) { return g.num_vertices() + r - 2; }

namespace detail {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

inline bool graph_connected(const Graph& g) {
  if (g.num_vertices() == 0) return false;
  auto adj = g.adjacency();
  std::vector<char> seen(static_cast<std::size_t>(g.num_vertices()), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == g.num_vertices();
}

// All r-sets e + S, S an (r-2)-subset of pool \ e, in lexicographic order of S.
inline std::vector<std::vector<Vertex>> enlargements(Graph::Edge e, int pool, int r) {
  std::vector<Vertex> others;
  for (Vertex v = 0; v < pool; ++v)
    if (v != e.first && v != e.second) others.push_back(v);
  const int need = r - 2;
  std::vector<std::vector<Vertex>> out;
  std::vector<int> idx(static_cast<std::size_t>(need));
  for (int i = 0; i < need; ++i) idx[i] = i;
  const int size = static_cast<int>(others.size());
  if (need > size) return out;
  while (true) {
    std::vector<Vertex> h{e.first, e.second};
    for (int i : idx) h.push_back(others[i]);
    std::sort(h.begin(), h.end());
    out.push_back(std::move(h));
    int i = need - 1;
    while (i >= 0 && idx[i] == size - need + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < need; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

struct PartitionResult {
  std::vector<BergeEntry> entries;
  std::uint64_t raw = 0;
};

class BergeSearch {
 public:
  BergeSearch(int rank, int base_vertices, int pool,
              const std::vector<std::vector<std::vector<Vertex>>>& choices)
      : rank_(rank), base_vertices_(base_vertices), pool_(pool), choices_(choices),
        chosen_(choices.size()) {}

  PartitionResult run(std::size_t first_choice) {
    PartitionResult out;
    result_ = &out;
    seen_.clear();
    chosen_[0] = choices_[0][first_choice];
    descend(1);
    return out;
  }

 private:
  void descend(std::size_t depth) {
    if (depth == choices_.size()) {
      leaf();
      return;
    }
    for (const auto& h : choices_[depth]) {
      bool clash = false;
      for (std::size_t j = 0; j < depth && !clash; ++j) clash = chosen_[j] == h;
      if (clash) continue;
      chosen_[depth] = h;
      descend(depth + 1);
    }
  }

  void leaf() {
    ++result_->raw;
    UniformHypergraph h(rank_, pool_, chosen_);
    CanonicalForm key = canonical_form(h);
    if (!seen_.insert(key).second) return;
    // the graph's vertices are all covered, so stripping only drops unused
    // fresh vertices and the labels of V(G) survive
    BergeEmbedding witness;
    witness.vertex_map.resize(static_cast<std::size_t>(base_vertices_));
    std::iota(witness.vertex_map.begin(), witness.vertex_map.end(), 0);
    witness.assignment = chosen_;
    result_->entries.push_back({strip_isolated(h), std::move(witness), std::move(key)});
  }

  int rank_;
  int base_vertices_;
  int pool_;
  const std::vector<std::vector<std::vector<Vertex>>>& choices_;
  std::vector<std::vector<Vertex>> chosen_;
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen_;
  PartitionResult* result_ = nullptr;
};

}  // namespace detail

/// Number of labelled assignments before the distinctness filter.
inline double berge_raw_space(const Graph& g, int r, int extra) {
  const int pool = g.num_vertices() + extra;
  return std::pow(detail::binomial(pool - 2, r - 2), static_cast<double>(g.num_edges()));
}

/// Every r-uniform Berge-G hypergraph on at most v(G)+extra vertices, one per
/// isomorphism class, in order of first discovery.
inline BergeCatalog enumerate_berge(const Graph& g, int r, int extra, const EnumerateOptions& opts = {}) {
  if (r < 2) throw Error(Errc::parameter_domain, "rank must be at least 2");
  if (extra < 0 || extra > r - 2)
    throw Error(Errc::parameter_domain, "extra must lie in [0, r-2]");
  if (g.num_edges() == 0 || !detail::graph_connected(g))
    throw Error(Errc::invalid_structure, "base graph must be connected with at least one edge");

  BergeCatalog cat;
  cat.base = g;
  cat.rank = r;
  cat.extra_budget = extra;
  const int pool = g.num_vertices() + extra;
  if (pool < r) {
    cat.diagnostic = "pool of " + std::to_string(pool) + " vertices is smaller than rank " +
                     std::to_string(r) + "; no hyperedge can be formed";
    return cat;
  }
  const double raw = berge_raw_space(g, r, extra);
  if (raw > opts.max_raw_space && !opts.force)
  {
    char buf[96];
    std::snprintf(buf, sizeof buf, "raw assignment space %.3g exceeds the guard of %.3g", raw, opts.max_raw_space);
    throw Error(Errc::refused, buf);
  }

  std::vector<std::vector<std::vector<Vertex>>> choices;
  for (auto e : g.edges()) choices.push_back(detail::enlargements(e, pool, r));

  std::vector<detail::PartitionResult> parts(choices[0].size());
  parallel_for(parts.size(), opts.jobs, [&](std::size_t i) {
    detail::BergeSearch search(r, g.num_vertices(), pool, choices);
    parts[i] = search.run(i);
  });

  std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
  for (auto& part : parts) {
    cat.raw_assignments += part.raw;
    for (auto& entry : part.entries)
      if (seen.insert(entry.key).second) cat.entries.push_back(std::move(entry));
  }
  return cat;
}

namespace detail {

// Kuhn's augmenting paths on the containment relation graph edge -> hyperedge.
inline bool perfect_matching(const std::vector<std::vector<int>>& options, std::vector<int>& match_of_left) {
  const std::size_t left = options.size();
  std::size_t right = 0;
  for (const auto& o : options)
    for (int j : o) right = std::max(right, static_cast<std::size_t>(j) + 1);
  std::vector<int> owner(right, -1);
  std::vector<char> visited;
  std::function<bool(int)> augment = [&](int i) {
    for (int j : options[i]) {
      if (visited[j]) continue;
      visited[j] = 1;
      if (owner[j] < 0 || augment(owner[j])) {
        owner[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < left; ++i) {
    visited.assign(right, 0);
    if (!augment(static_cast<int>(i))) return false;
  }
  match_of_left.assign(left, -1);
  for (std::size_t j = 0; j < right; ++j)
    if (owner[j] >= 0) match_of_left[owner[j]] = static_cast<int>(j);
  return true;
}

}  // namespace detail

inline constexpr int kBergeRecognitionMaxVertices = 12;

/// Searches injective maps V(G) -> V(H) and, for each, a bijection from E(G)
/// to E(H) with every mapped graph edge inside its image. Returns the first
/// witness found.
inline std::optional<BergeEmbedding> is_berge(const UniformHypergraph& h, const Graph& g) {
  if (h.num_edges() != g.num_edges()) return std::nullopt;
  if (h.rank() < 2 || g.num_vertices() > h.num_vertices()) return std::nullopt;
  if (h.num_vertices() > kBergeRecognitionMaxVertices)
    throw Error(Errc::too_large, "recognition limited to " +
                                     std::to_string(kBergeRecognitionMaxVertices) + " vertices");
  const int nh = h.num_vertices();
  const int ng = g.num_vertices();
  if (g.num_edges() == 0) return BergeEmbedding{std::vector<Vertex>(static_cast<std::size_t>(ng), 0), {}};

  // pair[a][b]: some hyperedge contains both a and b
  std::vector<std::vector<char>> pair(static_cast<std::size_t>(nh), std::vector<char>(nh, 0));
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    auto e = h.edge(i);
    for (Vertex a : e)
      for (Vertex b : e) pair[a][b] = 1;
  }
  // map graph vertices in BFS-ish order so edge checks prune early
  auto adj = g.adjacency();
  std::vector<Vertex> order;
  std::vector<char> placed(static_cast<std::size_t>(ng), 0);
  for (Vertex s = 0; s < ng; ++s) {
    if (placed[s]) continue;
    placed[s] = 1;
    order.push_back(s);
    for (std::size_t k = order.size() - 1; k < order.size(); ++k)
      for (Vertex w : adj[order[k]])
        if (!placed[w]) {
          placed[w] = 1;
          order.push_back(w);
        }
  }

  std::vector<Vertex> image(static_cast<std::size_t>(ng), -1);
  std::vector<char> used(static_cast<std::size_t>(nh), 0);
  std::optional<BergeEmbedding> found;
  const auto edges = g.edges();

  auto try_leaf = [&] {
    std::vector<std::vector<int>> options(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Vertex a = image[edges[i].first], b = image[edges[i].second];
      for (std::size_t j = 0; j < h.num_edges(); ++j) {
        auto f = h.edge(j);
        if (std::find(f.begin(), f.end(), a) != f.end() && std::find(f.begin(), f.end(), b) != f.end())
          options[i].push_back(static_cast<int>(j));
      }
      if (options[i].empty()) return false;
    }
    std::vector<int> match;
    if (!detail::perfect_matching(options, match)) return false;
    BergeEmbedding emb;
    emb.vertex_map = image;
    for (int j : match) {
      auto f = h.edge(static_cast<std::size_t>(j));
      emb.assignment.emplace_back(f.begin(), f.end());
    }
    found = std::move(emb);
    return true;
  };

  std::function<bool(std::size_t)> place = [&](std::size_t depth) {
    if (depth == order.size()) return try_leaf();
    const Vertex v = order[depth];
    for (Vertex t = 0; t < nh; ++t) {
      if (used[t]) continue;
      bool ok = true;
      for (Vertex w : adj[v])
        if (image[w] >= 0 && !pair[image[w]][t]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      image[v] = t;
      used[t] = 1;
      if (place(depth + 1)) return true;
      image[v] = -1;
      used[t] = 0;
    }
    return false;
  };
  place(0);
  return found;
}

}  // namespace bergespec
