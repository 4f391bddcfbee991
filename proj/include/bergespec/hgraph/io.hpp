#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "bergespec/hgraph/types.hpp"

// Text formats.
//   .uhg : "r n m", then m lines of r ascending 0-based vertices; lines in
//          lexicographic order of the integer tuples.
//   .g   : "n m", then m lines "u v" with u < v, in edge order.

namespace bergespec::io {

namespace detail {

inline long long read_int(std::istream& in, const char* what) {
  long long value = 0;
  if (!(in >> value)) throw Error(Errc::parse, std::string("expected integer for ") + what);
  return value;
}

inline void expect_end(std::istream& in) {
  std::string rest;
  if (in >> rest) throw Error(Errc::parse, "trailing content '" + rest + "'");
}

inline std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::parse, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(Errc::parse, "cannot write " + path);
  f << text;
}

}  // namespace detail

inline UniformHypergraph parse_uhg(const std::string& text) {
  std::istringstream in(text);
  const auto r = detail::read_int(in, "rank");
  const auto n = detail::read_int(in, "vertex count");
  const auto m = detail::read_int(in, "edge count");
  if (r < 1 || n < 0 || m < 0) throw Error(Errc::parse, "bad header");
  std::vector<std::vector<Vertex>> edges(static_cast<std::size_t>(m));
  for (auto& e : edges)
    for (long long j = 0; j < r; ++j) {
      const auto v = detail::read_int(in, "vertex");
      if (v < 0 || v >= n) throw Error(Errc::parse, "vertex " + std::to_string(v) + " out of range");
      e.push_back(static_cast<Vertex>(v));
    }
  detail::expect_end(in);
  try {
    return UniformHypergraph(static_cast<int>(r), static_cast<int>(n), edges);
  } catch (const Error& err) {
    throw Error(Errc::parse, err.what());
  }
}

inline std::string format_uhg(const UniformHypergraph& h) {
  std::string out = std::to_string(h.rank()) + " " + std::to_string(h.num_vertices()) + " " +
                    std::to_string(h.num_edges()) + "\n";
  for (const auto& e : h.sorted_edge_list()) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (j > 0) out += ' ';
      out += std::to_string(e[j]);
    }
    out += '\n';
  }
  return out;
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  const auto n = detail::read_int(in, "vertex count");
  const auto m = detail::read_int(in, "edge count");
  if (n < 0 || m < 0) throw Error(Errc::parse, "bad header");
  std::vector<Graph::Edge> edges;
  for (long long i = 0; i < m; ++i) {
    const auto u = detail::read_int(in, "endpoint");
    const auto v = detail::read_int(in, "endpoint");
    if (u < 0 || v < 0 || u >= n || v >= n) throw Error(Errc::parse, "endpoint out of range");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  detail::expect_end(in);
  try {
    return Graph(static_cast<int>(n), edges);
  } catch (const Error& err) {
    throw Error(Errc::parse, err.what());
  }
}

inline std::string format_graph(const Graph& g) {
  std::string out = std::to_string(g.num_vertices()) + " " + std::to_string(g.num_edges()) + "\n";
  for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

inline UniformHypergraph read_uhg(const std::string& path) { return parse_uhg(detail::slurp(path)); }
inline Graph read_graph(const std::string& path) { return parse_graph(detail::slurp(path)); }
inline void write_uhg(const std::string& path, const UniformHypergraph& h) {
  detail::write_file(path, format_uhg(h));
}
inline void write_graph(const std::string& path, const Graph& g) {
  detail::write_file(path, format_graph(g));
}

}  // namespace bergespec::io
