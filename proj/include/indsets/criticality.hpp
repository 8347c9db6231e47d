#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "indsets/graph.hpp"

namespace indsets {

/// Raised when a graph does not meet an operation's degree or structure
/// precondition.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline void require_min_degree(const Graph& g, int delta) {
  if (g.min_degree() != delta) {
    throw PreconditionError("minimum degree is " + std::to_string(g.min_degree()) +
                            ", expected " + std::to_string(delta));
  }
}

struct CriticalityReport {
  int delta = 0;
  bool edge_critical = false;
  bool vertex_critical = false;
  /// an edge whose deletion keeps the minimum degree at delta
  std::optional<Edge> edge_witness;
  /// a vertex whose deletion keeps the minimum degree at least delta
  std::optional<Vertex> vertex_witness;

  bool critical() const { return edge_critical && vertex_critical; }
};

inline VertexMask vertices_of_degree(const Graph& g, int d) {
  VertexMask out = 0;
  for (int v = 0; v < g.order(); ++v) {
    if (g.degree(v) == d) out |= bit(v);
  }
  return out;
}

/// Edge-critical iff every edge meets a vertex of degree delta. Returns the
/// least edge (u < v) with both ends above delta, if any.
inline std::optional<Edge> edge_criticality_witness(const Graph& g, int delta) {
  require_min_degree(g, delta);
  const VertexMask low = vertices_of_degree(g, delta);
  for (int u = 0; u < g.order(); ++u) {
    if ((low & bit(u)) != 0) continue;
    const VertexMask high_nbrs = g.neighbors(u) & ~low & ~low_mask(u + 1);
    if (high_nbrs != 0) return Edge{u, std::countr_zero(high_nbrs)};
  }
  return std::nullopt;
}

/// Vertex-critical iff every vertex has a neighbor of degree delta. Returns
/// the least vertex with no such neighbor, if any.
inline std::optional<Vertex> vertex_criticality_witness(const Graph& g, int delta) {
  require_min_degree(g, delta);
  const VertexMask low = vertices_of_degree(g, delta);
  for (int v = 0; v < g.order(); ++v) {
    if ((g.neighbors(v) & low) == 0) return v;
  }
  return std::nullopt;
}

inline bool is_edge_critical(const Graph& g, int delta) {
  return !edge_criticality_witness(g, delta).has_value();
}

inline bool is_vertex_critical(const Graph& g, int delta) {
  return !vertex_criticality_witness(g, delta).has_value();
}

/// Literal definition: deleting any edge drops the minimum degree below delta.
inline bool edge_critical_by_deletion(const Graph& g, int delta) {
  require_min_degree(g, delta);
  for (const auto& [u, v] : g.edges()) {
    if (g.delete_edge(u, v).min_degree() >= delta) return false;
  }
  return true;
}

/// Literal definition: deleting any vertex drops the minimum degree below delta.
inline bool vertex_critical_by_deletion(const Graph& g, int delta) {
  require_min_degree(g, delta);
  for (int v = 0; v < g.order(); ++v) {
    const Graph h = g.delete_vertex(v);
    if (h.order() > 0 && h.min_degree() >= delta) return false;
  }
  return true;
}

inline CriticalityReport criticality(const Graph& g, int delta) {
  CriticalityReport r;
  r.delta = delta;
  r.edge_witness = edge_criticality_witness(g, delta);
  r.vertex_witness = vertex_criticality_witness(g, delta);
  r.edge_critical = !r.edge_witness;
  r.vertex_critical = !r.vertex_witness;
  if (r.edge_witness && g.delete_edge(r.edge_witness->first, r.edge_witness->second).min_degree() < delta) {
    throw std::logic_error("edge witness fails direct deletion check");
  }
  if (r.vertex_witness) {
    const Graph h = g.delete_vertex(*r.vertex_witness);
    if (h.order() == 0 || h.min_degree() < delta) {
      throw std::logic_error("vertex witness fails direct deletion check");
    }
  }
  return r;
}

struct DegreePartition {
  VertexMask exactly_delta = 0;
  VertexMask above_delta = 0;

  int low_count() const { return std::popcount(exactly_delta); }
  int high_count() const { return std::popcount(above_delta); }
};

inline DegreePartition degree_partition(const Graph& g, int delta) {
  require_min_degree(g, delta);
  DegreePartition p;
  for (int v = 0; v < g.order(); ++v) {
    (g.degree(v) == delta ? p.exactly_delta : p.above_delta) |= bit(v);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Structure of connected critical graphs with minimum degree 2.

enum class DecompositionKind { Cycle, PathSplit };

/// Either the graph is a cycle, or V = Y1 + Y2 with Y1 inducing a path
/// y1[0] - ... - y1[k-1] whose ends have single edges to v1, v2 in Y2.
struct Decomposition2 {
  DecompositionKind kind = DecompositionKind::Cycle;
  std::vector<Vertex> y1;
  VertexMask y2 = 0;
  Vertex v1 = -1;
  Vertex v2 = -1;
};

/// Checks every PathSplit invariant; returns the first violated one.
inline std::optional<std::string> path_split_violation(const Graph& g, const Decomposition2& d) {
  const int n = g.order();
  const int k = static_cast<int>(d.y1.size());
  if (k < 2 || k > n - 3) return "|Y1| outside [2, n-3]";
  VertexMask y1 = 0;
  for (auto v : d.y1) {
    if (v < 0 || v >= n || (y1 & bit(v)) != 0) return "Y1 has invalid or repeated vertex";
    y1 |= bit(v);
  }
  if ((y1 & d.y2) != 0 || (y1 | d.y2) != g.all_vertices()) return "Y1, Y2 do not partition V";
  for (int i = 0; i < k; ++i) {
    VertexMask expected = 0;
    if (i > 0) expected |= bit(d.y1[i - 1]);
    if (i + 1 < k) expected |= bit(d.y1[i + 1]);
    if ((g.neighbors(d.y1[i]) & y1) != expected) return "G[Y1] is not the listed path";
  }
  if (g.induced_subgraph(d.y2).min_degree() < 2) return "G[Y2] has minimum degree below 2";
  const VertexMask to_y2_first = g.neighbors(d.y1.front()) & d.y2;
  const VertexMask to_y2_last = g.neighbors(d.y1.back()) & d.y2;
  if (std::popcount(to_y2_first) != 1 || std::popcount(to_y2_last) != 1) {
    return "path endvertex does not have exactly one edge to Y2";
  }
  if (to_y2_first != bit(d.v1) || to_y2_last != bit(d.v2)) return "v1/v2 are not the Y2 endpoints";
  for (int i = 1; i + 1 < k; ++i) {
    if ((g.neighbors(d.y1[i]) & d.y2) != 0) return "interior path vertex has an edge to Y2";
  }
  if (d.v1 != d.v2 && g.adjacent(d.v1, d.v2)) return "v1 and v2 are distinct and adjacent";
  return std::nullopt;
}

/// Decomposes a connected critical graph of minimum degree 2. One vertex
/// above degree 2: Y1 is the interior of a cycle through it. Several: Y1 is
/// the interior of a shortest path between two of them (least pair wins).
inline Decomposition2 decompose_critical_2(const Graph& g) {
  require_min_degree(g, 2);
  if (!g.is_connected()) throw PreconditionError("decomposition needs a connected graph");
  const auto report = criticality(g, 2);
  if (!report.critical()) throw PreconditionError("decomposition needs a critical graph");

  const VertexMask high = degree_partition(g, 2).above_delta;
  Decomposition2 d;
  if (high == 0) return d;

  d.kind = DecompositionKind::PathSplit;
  if (std::popcount(high) == 1) {
    const Vertex centre = std::countr_zero(high);
    Vertex prev = centre;
    Vertex cur = std::countr_zero(g.neighbors(centre));
    for (int steps = 0; cur != centre; ++steps) {
      if (steps > g.order()) throw std::logic_error("walk around a petal did not close");
      d.y1.push_back(cur);
      const VertexMask next = g.neighbors(cur) & ~bit(prev);
      prev = cur;
      cur = std::countr_zero(next);
    }
    d.v1 = d.v2 = centre;
  } else {
    int best_dist = kMaxVertices + 1;
    std::vector<Vertex> best_path;
    for_each_vertex(high, [&](Vertex a) {
      std::array<Vertex, kMaxVertices> parent;
      parent.fill(-1);
      parent[a] = a;
      std::vector<Vertex> frontier{a};
      for (int dist = 1; !frontier.empty() && dist < best_dist; ++dist) {
        std::vector<Vertex> next;
        for (auto u : frontier) {
          for_each_vertex(g.neighbors(u), [&](Vertex w) {
            if (parent[w] == -1) {
              parent[w] = u;
              next.push_back(w);
            }
          });
        }
        std::sort(next.begin(), next.end());
        for (auto b : next) {
          if ((high & bit(b)) != 0 && b != a) {
            best_dist = dist;
            best_path.clear();
            for (Vertex w = b; w != a; w = parent[w]) best_path.push_back(w);
            best_path.push_back(a);
            std::reverse(best_path.begin(), best_path.end());
            return;
          }
        }
        frontier = std::move(next);
      }
    });
    d.v1 = best_path.front();
    d.v2 = best_path.back();
    d.y1.assign(best_path.begin() + 1, best_path.end() - 1);
  }
  VertexMask y1 = 0;
  for (auto v : d.y1) y1 |= bit(v);
  d.y2 = g.all_vertices() & ~y1;
  if (auto bad = path_split_violation(g, d)) {
    throw std::logic_error("decomposition failed its own check: " + *bad);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Paired-triangle configuration for minimum degree 3 and its rewiring.

/// w1 has degree > 3 and neighbors v, x of degree 3; v w2 w3 and x y2 y3 are
/// triangles of degree-3 vertices; w2 !~ y2 and w3 !~ y3.
struct TrianglePairPattern {
  Vertex w1 = -1, v = -1, x = -1, w2 = -1, w3 = -1, y2 = -1, y3 = -1;

  friend bool operator==(const TrianglePairPattern&, const TrianglePairPattern&) = default;
};

inline bool is_valid_pattern(const Graph& g, const TrianglePairPattern& p) {
  const std::array<Vertex, 7> all{p.w1, p.v, p.x, p.w2, p.w3, p.y2, p.y3};
  VertexMask seen = 0;
  for (auto a : all) {
    if (a < 0 || a >= g.order() || (seen & bit(a)) != 0) return false;
    seen |= bit(a);
  }
  if (g.degree(p.w1) <= 3) return false;
  for (auto a : {p.v, p.x, p.w2, p.w3, p.y2, p.y3}) {
    if (g.degree(a) != 3) return false;
  }
  return g.adjacent(p.w1, p.v) && g.adjacent(p.w1, p.x) && g.adjacent(p.v, p.w2) &&
         g.adjacent(p.v, p.w3) && g.adjacent(p.w2, p.w3) && g.adjacent(p.x, p.y2) &&
         g.adjacent(p.x, p.y3) && g.adjacent(p.y2, p.y3) && !g.adjacent(p.w2, p.y2) &&
         !g.adjacent(p.w3, p.y3);
}

/// All patterns with v < x and w2 < w3; both pairings of {y2, y3} against
/// (w2, w3) are listed when valid, since they rewire differently.
inline std::vector<TrianglePairPattern> find_triangle_pair_patterns(const Graph& g) {
  require_min_degree(g, 3);
  std::vector<TrianglePairPattern> out;
  const VertexMask deg3 = vertices_of_degree(g, 3);
  auto triangle_partners = [&](Vertex centre, Vertex hub) -> std::optional<std::pair<Vertex, Vertex>> {
    const VertexMask rest = g.neighbors(centre) & ~bit(hub);
    const Vertex a = std::countr_zero(rest);
    const Vertex b = std::countr_zero(rest & (rest - 1));
    if ((deg3 & bit(a)) == 0 || (deg3 & bit(b)) == 0 || !g.adjacent(a, b)) return std::nullopt;
    return std::pair{a, b};
  };
  for (int w1 = 0; w1 < g.order(); ++w1) {
    if (g.degree(w1) <= 3) continue;
    const auto nbrs = mask_to_vertices(g.neighbors(w1) & deg3);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const auto vt = triangle_partners(nbrs[i], w1);
      if (!vt) continue;
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        const auto xt = triangle_partners(nbrs[j], w1);
        if (!xt) continue;
        for (auto [y2, y3] : {*xt, std::pair{xt->second, xt->first}}) {
          TrianglePairPattern p{w1, nbrs[i], nbrs[j], vt->first, vt->second, y2, y3};
          if (is_valid_pattern(g, p)) out.push_back(p);
        }
      }
    }
  }
  return out;
}

/// Removes edges a-b and c-d, adds a-c and b-d.
inline Graph swap_edge_pair(const Graph& g, Edge removed_first, Edge removed_second) {
  const auto [a, b] = removed_first;
  const auto [c, d] = removed_second;
  return g.delete_edge(a, b).delete_edge(c, d).add_edge(a, c).add_edge(b, d);
}

/// Replaces triangle edges w2w3, y2y3 by w2y2, w3y3; degrees are unchanged.
inline Graph triangle_rewire(const Graph& g, const TrianglePairPattern& p) {
  if (!is_valid_pattern(g, p)) throw PreconditionError("triangle pattern is not valid in graph");
  return swap_edge_pair(g, {p.w2, p.w3}, {p.y2, p.y3});
}

}  // namespace indsets
