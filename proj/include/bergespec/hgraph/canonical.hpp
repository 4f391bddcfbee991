#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "bergespec/hgraph/operations.hpp"
#include "bergespec/hgraph/types.hpp"

namespace bergespec {

/// Isomorphism-invariant key: rank, vertex count after stripping isolated
/// vertices, and the lexicographically least flat edge list over all
/// relabelings.
struct CanonicalForm {
  int rank = 0;
  int n = 0;
  std::vector<Vertex> edges;  // flat, r entries per edge, edges sorted

  auto operator<=>(const CanonicalForm&) const = default;
  bool operator==(const CanonicalForm&) const = default;

  std::size_t num_edges() const { return rank == 0 ? 0 : edges.size() / rank; }

  /// "r3n5:0-1-2|0-1-3"
  std::string to_string() const {
    std::string s = "r" + std::to_string(rank) + "n" + std::to_string(n) + ":";
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (i > 0) s += (i % rank == 0) ? '|' : '-';
      s += std::to_string(edges[i]);
    }
    return s;
  }

  UniformHypergraph to_hypergraph() const {
    std::vector<std::vector<Vertex>> list;
    for (std::size_t i = 0; i < num_edges(); ++i)
      list.emplace_back(edges.begin() + i * rank, edges.begin() + (i + 1) * rank);
    return UniformHypergraph(rank, n, list);
  }
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& c) const noexcept {
    std::size_t h = std::hash<int>{}(c.rank * 131 + c.n);
    for (Vertex v : c.edges) h = h * 1099511628211ULL ^ static_cast<std::size_t>(v + 1);
    return h;
  }
};

namespace detail {

class Canonicalizer {
 public:
  explicit Canonicalizer(const UniformHypergraph& h)
      : h_(h), n_(h.num_vertices()), r_(h.rank()), incident_(static_cast<std::size_t>(n_)) {
    for (std::size_t i = 0; i < h_.num_edges(); ++i)
      for (Vertex v : h_.edge(i)) incident_[v].push_back(i);
    compute_twins();
  }

  CanonicalForm run() {
    best_.rank = r_;
    best_.n = n_;
    have_best_ = false;
    std::vector<int> cells(static_cast<std::size_t>(n_), 0);
    search(cells);
    return best_;
  }

 private:
  // Splits cells by the multiset of cell-patterns of incident edges until
  // stable. Cell ids stay ordered, so the result depends only on the input
  // ordered partition, not on vertex labels.
  void refine(std::vector<int>& cells) const {
    int count = num_cells(cells);
    while (true) {
      std::vector<std::vector<int>> sig(static_cast<std::size_t>(n_));
      for (int v = 0; v < n_; ++v) {
        std::vector<std::vector<int>> patterns;
        patterns.reserve(incident_[v].size());
        for (std::size_t ei : incident_[v]) {
          std::vector<int> pat;
          pat.reserve(static_cast<std::size_t>(r_ - 1));
          for (Vertex w : h_.edge(ei))
            if (w != v) pat.push_back(cells[w]);
          std::sort(pat.begin(), pat.end());
          patterns.push_back(std::move(pat));
        }
        std::sort(patterns.begin(), patterns.end());
        auto& s = sig[v];
        s.push_back(cells[v]);
        s.push_back(static_cast<int>(patterns.size()));
        for (auto& p : patterns) s.insert(s.end(), p.begin(), p.end());
      }
      std::vector<int> order(static_cast<std::size_t>(n_));
      for (int v = 0; v < n_; ++v) order[v] = v;
      std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
      std::vector<int> next(static_cast<std::size_t>(n_));
      int id = 0;
      for (int i = 0; i < n_; ++i) {
        if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++id;
        next[order[i]] = id;
      }
      cells.swap(next);
      const int updated = n_ == 0 ? 0 : id + 1;
      if (updated == count) return;
      count = updated;
    }
  }

  static int num_cells(const std::vector<int>& cells) {
    return cells.empty() ? 0 : *std::max_element(cells.begin(), cells.end()) + 1;
  }

  void search(std::vector<int> cells) {
    refine(cells);
    const int count = num_cells(cells);
    if (count == n_) {
      consider_leaf(cells);
      return;
    }
    std::vector<int> size(static_cast<std::size_t>(count), 0);
    for (int c : cells) ++size[c];
    int target = 0;
    while (size[target] == 1) ++target;

    std::vector<Vertex> tried;
    for (Vertex w = 0; w < n_; ++w) {
      if (cells[w] != target) continue;
      bool redundant = false;
      for (Vertex t : tried)
        if (twin_[t * n_ + w]) {
          redundant = true;
          break;
        }
      if (redundant) continue;
      tried.push_back(w);
      std::vector<int> child(cells);
      for (Vertex x = 0; x < n_; ++x)
        if (cells[x] > target || (cells[x] == target && x != w)) ++child[x];
      search(std::move(child));
    }
  }

  void consider_leaf(const std::vector<int>& labels) {
    const std::size_t m = h_.num_edges();
    std::vector<std::vector<Vertex>> mapped(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (Vertex v : h_.edge(i)) mapped[i].push_back(labels[v]);
      std::sort(mapped[i].begin(), mapped[i].end());
    }
    std::sort(mapped.begin(), mapped.end());
    std::vector<Vertex> flat;
    flat.reserve(m * static_cast<std::size_t>(r_));
    for (auto& e : mapped) flat.insert(flat.end(), e.begin(), e.end());
    if (!have_best_ || flat < best_.edges) {
      best_.edges = std::move(flat);
      have_best_ = true;
    }
  }

  // twin_[u*n+w]: the transposition (u w) is an automorphism.
  void compute_twins() {
    twin_.assign(static_cast<std::size_t>(n_ * n_), false);
    const auto edges = h_.sorted_edge_list();
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex w = u + 1; w < n_; ++w) {
        auto swapped = edges;
        for (auto& e : swapped) {
          for (auto& x : e) x = (x == u) ? w : (x == w) ? u : x;
          std::sort(e.begin(), e.end());
        }
        std::sort(swapped.begin(), swapped.end());
        if (swapped == edges) twin_[u * n_ + w] = twin_[w * n_ + u] = true;
      }
  }

  const UniformHypergraph& h_;
  int n_;
  int r_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<bool> twin_;
  CanonicalForm best_;
  bool have_best_ = false;
};

}  // namespace detail

inline CanonicalForm canonical_form(const UniformHypergraph& h) {
  const UniformHypergraph core = strip_isolated(h);
  return detail::Canonicalizer(core).run();
}

inline bool is_isomorphic(const UniformHypergraph& a, const UniformHypergraph& b) {
  if (a.rank() != b.rank() || a.num_edges() != b.num_edges()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace bergespec
