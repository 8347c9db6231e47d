#pragma once

#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "indsets/graph.hpp"

namespace indsets {

/// Part sizes of a complete multipartite graph; vertex blocks are laid out
/// in the listed order.
struct MultipartiteSpec {
  std::vector<int> parts;

  int order() const { return std::accumulate(parts.begin(), parts.end(), 0); }
};

/// K_{a,b}: parts {0..a-1} and {a..a+b-1}.
inline Graph complete_bipartite(int a, int b) {
  if (a < 0 || b < 0 || a + b < 1) {
    throw GraphError("complete bipartite needs a, b >= 0 and a + b >= 1");
  }
  std::vector<Edge> edges;
  for (int u = 0; u < a; ++u) {
    for (int v = a; v < a + b; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edge_list(a + b, edges);
}

/// K_{delta, n-delta} with extra edges placed inside the delta-side {0..delta-1}.
inline Graph extremal_plus_inside_edges(int delta, int n, std::span<const Edge> inside) {
  if (delta < 0 || n <= delta) throw GraphError("extremal construction needs 0 <= delta < n");
  Graph g = complete_bipartite(delta, n - delta);
  for (const auto& [u, v] : inside) {
    if (u < 0 || v < 0 || u >= delta || v >= delta) {
      throw GraphError("inside edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") not within the delta-side");
    }
    if (u == v) throw GraphError("loop inside the delta-side");
    if (!g.adjacent(u, v)) g = g.add_edge(u, v);
  }
  return g;
}

/// K'_{2,n-2}: K_{2,n-2} with the two small-side vertices joined.
inline Graph k_prime_2(int n) {
  const Edge inside[] = {{0, 1}};
  return extremal_plus_inside_edges(2, n, inside);
}

/// (n-1)/2 triangles sharing vertex 0; triangle i uses vertices 2i+1, 2i+2.
inline Graph windmill(int n) {
  if (n < 3 || n % 2 == 0) throw GraphError("windmill needs odd n >= 3, got " + std::to_string(n));
  std::vector<Edge> edges;
  for (int a = 1; a < n; a += 2) {
    edges.emplace_back(0, a);
    edges.emplace_back(0, a + 1);
    edges.emplace_back(a, a + 1);
  }
  return Graph::from_edge_list(n, edges);
}

inline Graph path(int k) {
  if (k < 1) throw GraphError("path needs k >= 1");
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < k; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edge_list(k, edges);
}

inline Graph cycle(int k) {
  if (k < 3) throw GraphError("cycle needs k >= 3, got " + std::to_string(k));
  std::vector<Edge> edges;
  for (int v = 0; v < k; ++v) edges.emplace_back(v, (v + 1) % k);
  return Graph::from_edge_list(k, edges);
}

/// E_k. The 0-vertex case is the induced subgraph on the empty set.
inline Graph empty_graph(int k) {
  if (k < 0) throw GraphError("empty graph needs k >= 0");
  if (k == 0) return Graph(1).induced_subgraph(VertexMask{0});
  return Graph(k);
}

inline Graph complete_graph(int k) {
  std::vector<Edge> edges;
  for (int u = 0; u < k; ++u) {
    for (int v = u + 1; v < k; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edge_list(k, edges);
}

inline Graph complete_multipartite(const MultipartiteSpec& spec) {
  if (spec.parts.empty()) throw GraphError("multipartite spec has no parts");
  std::vector<int> part_of;
  for (std::size_t p = 0; p < spec.parts.size(); ++p) {
    if (spec.parts[p] < 1) throw GraphError("multipartite part sizes must be >= 1");
    part_of.insert(part_of.end(), static_cast<std::size_t>(spec.parts[p]), static_cast<int>(p));
  }
  const int n = static_cast<int>(part_of.size());
  if (n > kMaxVertices) throw GraphError("multipartite graph exceeds supported width");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (part_of[u] != part_of[v]) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edge_list(n, edges);
}

/// q parts of size n-delta followed by one part of size x, where
/// n = q(n-delta) + x and 0 <= x < n-delta; the x-part is omitted when x = 0.
inline MultipartiteSpec conjecture_multipartite_spec(int n, int delta) {
  if (delta < 1 || n < delta + 1) {
    throw GraphError("conjectured multipartite extremal graph needs n >= delta + 1 >= 2");
  }
  const int part = n - delta;
  MultipartiteSpec spec;
  spec.parts.assign(static_cast<std::size_t>(n / part), part);
  if (n % part != 0) spec.parts.push_back(n % part);
  return spec;
}

inline Graph conjecture_multipartite(int n, int delta) {
  return complete_multipartite(conjecture_multipartite_spec(n, delta));
}

}  // namespace indsets
