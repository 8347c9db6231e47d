#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace indsets {

using Vertex = int;
using VertexMask = std::uint64_t;
using Edge = std::pair<Vertex, Vertex>;

/// Upper bound on vertex count; one adjacency row per machine word.
inline constexpr int kMaxVertices = 64;

class GraphError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

constexpr VertexMask bit(Vertex v) { return VertexMask{1} << v; }

constexpr VertexMask low_mask(int n) {
  return n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
}

/// Calls f(v) for every vertex v whose bit is set in mask, ascending.
template <typename F>
void for_each_vertex(VertexMask mask, F&& f) {
  while (mask != 0) {
    const Vertex v = std::countr_zero(mask);
    mask &= mask - 1;
    f(v);
  }
}

inline std::vector<Vertex> mask_to_vertices(VertexMask mask) {
  std::vector<Vertex> out;
  out.reserve(std::popcount(mask));
  for_each_vertex(mask, [&](Vertex v) { out.push_back(v); });
  return out;
}

/// Simple undirected graph on vertices 0..n-1, adjacency held as bit rows.
///
/// Values are immutable once built; every edit returns a new graph. The
/// 0-vertex graph exists only as the result of induced_subgraph on an empty
/// set, where it serves as the counting base case.
class Graph {
public:
  Graph() = default;

  /// Edgeless graph on n vertices, 1 <= n <= kMaxVertices.
  explicit Graph(int n) : n_(n), rows_(static_cast<std::size_t>(n), 0) {
    if (n < 1 || n > kMaxVertices) {
      throw GraphError("vertex count " + std::to_string(n) +
                       " outside supported range [1, " +
                       std::to_string(kMaxVertices) + "]");
    }
  }

  static Graph from_edge_list(int n, std::span<const Edge> edges) {
    Graph g(n);
    for (const auto& [u, v] : edges) {
      g.check_vertex(u);
      g.check_vertex(v);
      if (u == v) {
        throw GraphError("loop at vertex " + std::to_string(u));
      }
      g.rows_[u] |= bit(v);
      g.rows_[v] |= bit(u);
    }
    return g;
  }

  static Graph from_edge_list(int n, std::initializer_list<Edge> edges) {
    return from_edge_list(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  /// Builds from raw rows. Rows must describe a valid simple graph.
  static Graph from_rows(std::span<const VertexMask> rows) {
    Graph g(static_cast<int>(rows.size()));
    const VertexMask valid = low_mask(g.n_);
    for (int v = 0; v < g.n_; ++v) {
      if ((rows[v] & ~valid) != 0 || (rows[v] & bit(v)) != 0) {
        throw GraphError("row " + std::to_string(v) + " has out-of-range or loop bits");
      }
      g.rows_[v] = rows[v];
    }
    for (int v = 0; v < g.n_; ++v) {
      for_each_vertex(g.rows_[v], [&](Vertex u) {
        if ((g.rows_[u] & bit(v)) == 0) {
          throw GraphError("asymmetric adjacency between " + std::to_string(u) +
                           " and " + std::to_string(v));
        }
      });
    }
    return g;
  }

  int order() const { return n_; }
  std::size_t edge_count() const {
    std::size_t total = 0;
    for (auto r : rows_) total += static_cast<std::size_t>(std::popcount(r));
    return total / 2;
  }

  VertexMask all_vertices() const { return low_mask(n_); }
  std::span<const VertexMask> rows() const { return rows_; }

  VertexMask neighbors(Vertex v) const {
    check_vertex(v);
    return rows_[v];
  }

  bool adjacent(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return (rows_[u] & bit(v)) != 0;
  }

  int degree(Vertex v) const { return std::popcount(neighbors(v)); }

  int min_degree() const {
    int best = n_ == 0 ? 0 : kMaxVertices;
    for (auto r : rows_) best = std::min(best, std::popcount(r));
    return best;
  }

  int max_degree() const {
    int best = 0;
    for (auto r : rows_) best = std::max(best, std::popcount(r));
    return best;
  }

  std::vector<int> degrees() const {
    std::vector<int> out;
    out.reserve(rows_.size());
    for (auto r : rows_) out.push_back(std::popcount(r));
    return out;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u) {
      for_each_vertex(rows_[u] & ~low_mask(u + 1), [&](Vertex v) { out.emplace_back(u, v); });
    }
    return out;
  }

  /// Removes v; remaining vertices keep their relative order.
  Graph delete_vertex(Vertex v) const {
    check_vertex(v);
    return induced_subgraph(all_vertices() & ~bit(v));
  }

  Graph delete_edge(Vertex u, Vertex v) const {
    if (!adjacent(u, v)) {
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") not present");
    }
    Graph g = *this;
    g.rows_[u] &= ~bit(v);
    g.rows_[v] &= ~bit(u);
    return g;
  }

  Graph add_edge(Vertex u, Vertex v) const {
    if (u == v) {
      throw GraphError("loop at vertex " + std::to_string(u));
    }
    if (adjacent(u, v)) {
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") already present");
    }
    Graph g = *this;
    g.rows_[u] |= bit(v);
    g.rows_[v] |= bit(u);
    return g;
  }

  /// G[S] with members of S relabeled 0..|S|-1 in ascending order.
  Graph induced_subgraph(VertexMask subset) const {
    if ((subset & ~all_vertices()) != 0) {
      throw GraphError("induced subgraph member out of range");
    }
    const auto members = mask_to_vertices(subset);
    Graph g(Empty{});
    g.n_ = static_cast<int>(members.size());
    g.rows_.assign(members.size(), 0);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if ((rows_[members[i]] & bit(members[j])) != 0) {
          g.rows_[i] |= bit(static_cast<Vertex>(j));
          g.rows_[j] |= bit(static_cast<Vertex>(i));
        }
      }
    }
    return g;
  }

  Graph induced_subgraph(std::span<const Vertex> subset) const {
    VertexMask mask = 0;
    for (auto v : subset) {
      check_vertex(v);
      mask |= bit(v);
    }
    return induced_subgraph(mask);
  }

  /// Graph whose vertex i is vertex perm[i] of this graph.
  Graph relabel(std::span<const Vertex> perm) const {
    if (static_cast<int>(perm.size()) != n_) {
      throw GraphError("permutation size mismatch");
    }
    std::vector<Vertex> inverse(perm.size(), -1);
    for (int i = 0; i < n_; ++i) {
      check_vertex(perm[i]);
      if (inverse[perm[i]] != -1) throw GraphError("not a permutation");
      inverse[perm[i]] = i;
    }
    Graph g = *this;
    for (int i = 0; i < n_; ++i) {
      VertexMask row = 0;
      for_each_vertex(rows_[perm[i]], [&](Vertex u) { row |= bit(inverse[u]); });
      g.rows_[i] = row;
    }
    return g;
  }

  Graph complement() const {
    Graph g = *this;
    for (int v = 0; v < n_; ++v) g.rows_[v] = ~rows_[v] & all_vertices() & ~bit(v);
    return g;
  }

  /// Connected components via breadth-first search, ordered by least member.
  std::vector<VertexMask> components() const {
    std::vector<VertexMask> out;
    VertexMask unseen = all_vertices();
    while (unseen != 0) {
      VertexMask comp = unseen & (~unseen + 1);
      VertexMask frontier = comp;
      while (frontier != 0) {
        VertexMask next = 0;
        for_each_vertex(frontier, [&](Vertex v) { next |= rows_[v]; });
        frontier = next & ~comp;
        comp |= frontier;
      }
      out.push_back(comp);
      unseen &= ~comp;
    }
    return out;
  }

  bool is_connected() const { return n_ >= 1 && components().size() == 1; }

  bool is_independent(VertexMask set) const {
    for (int v = 0; v < n_; ++v) {
      if ((set & bit(v)) != 0 && (rows_[v] & set) != 0) return false;
    }
    return true;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  struct Empty {};
  explicit Graph(Empty) {}

  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) {
      throw GraphError("vertex " + std::to_string(v) + " out of range for " +
                       std::to_string(n_) + "-vertex graph");
    }
  }

  int n_ = 0;
  std::vector<VertexMask> rows_;
};

/// Block-diagonal union; vertices of h follow those of g.
inline Graph disjoint_union(const Graph& g, const Graph& h) {
  const int n = g.order() + h.order();
  if (n > kMaxVertices) {
    throw GraphError("disjoint union of " + std::to_string(n) +
                     " vertices exceeds supported width");
  }
  std::vector<VertexMask> rows(g.rows().begin(), g.rows().end());
  for (auto r : h.rows()) rows.push_back(r << g.order());
  return Graph::from_rows(rows);
}

}  // namespace indsets
