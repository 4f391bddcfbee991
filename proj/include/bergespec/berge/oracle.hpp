#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "bergespec/hgraph/types.hpp"

// Brute-force cross-check for catalog sizes. Shares no code with the
// backtracking search or canonical labelling: hyperedges are bitmasks, every
// assignment in the product is visited, and isomorphism classes are orbits
// under all permutations of the pool.

namespace bergespec {

inline constexpr int kBergeOracleMaxPool = 9;

inline std::size_t oracle_berge_count(const Graph& g, int r, int extra) {
  const int pool = g.num_vertices() + extra;
  if (pool > kBergeOracleMaxPool) throw Error(Errc::too_large, "oracle pool above 9 vertices");
  if (r < 2 || extra < 0) throw Error(Errc::parameter_domain, "bad rank or budget");
  using Mask = std::uint32_t;
  std::vector<std::vector<Mask>> options;
  for (auto [u, v] : g.edges()) {
    const Mask base = (1u << u) | (1u << v);
    std::vector<Mask> opts;
    for (Mask s = 0; s < (1u << pool); ++s)
      if (__builtin_popcount(s) == r && (s & base) == base) opts.push_back(s);
    options.push_back(std::move(opts));
  }
  const std::size_t m = options.size();
  if (m == 0) return 0;
  for (const auto& o : options)
    if (o.empty()) return 0;

  std::vector<std::vector<int>> perms;
  std::vector<int> perm(static_cast<std::size_t>(pool));
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  auto image = [&](const std::vector<Mask>& edges, const std::vector<int>& pi) {
    std::vector<Mask> out;
    out.reserve(edges.size());
    for (Mask e : edges) {
      Mask f = 0;
      for (int i = 0; i < pool; ++i)
        if (e >> i & 1u) f |= 1u << pi[i];
      out.push_back(f);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::set<std::vector<Mask>> seen;  // every labelled copy of every class met so far
  std::size_t classes = 0;
  std::vector<std::size_t> pick(m, 0);
  while (true) {
    std::vector<Mask> edges(m);
    for (std::size_t i = 0; i < m; ++i) edges[i] = options[i][pick[i]];
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) == edges.end() && !seen.count(edges)) {
      ++classes;
      for (const auto& pi : perms) seen.insert(image(edges, pi));
    }
    std::size_t i = 0;
    while (i < m && ++pick[i] == options[i].size()) pick[i++] = 0;
    if (i == m) break;
  }
  return classes;
}

}  // namespace bergespec
