#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "indsets/graph.hpp"
#include "indsets/graph6.hpp"

namespace indsets {

/// Lexicographic order on the upper-triangle bit strings of two same-order
/// adjacency matrices, bits taken in column order x(0,1), x(0,2), x(1,2), ...
inline std::strong_ordering compare_upper_triangle(std::span<const VertexMask> a,
                                                   std::span<const VertexMask> b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t j = 1; j < a.size(); ++j) {
    const VertexMask m = low_mask(static_cast<int>(j));
    const VertexMask x = a[j] & m;
    const VertexMask y = b[j] & m;
    if (x != y) {
      const int p = std::countr_zero(x ^ y);
      return ((x >> p) & 1U) != 0 ? std::strong_ordering::greater : std::strong_ordering::less;
    }
  }
  return std::strong_ordering::equal;
}

/// Relabeling-invariant representative of an isomorphism class: the graph
/// relabeled by the canonical labeling.
class CanonicalForm {
public:
  CanonicalForm() = default;
  explicit CanonicalForm(Graph canonical) : graph_(std::move(canonical)) {}

  int order() const { return graph_.order(); }
  const Graph& graph() const { return graph_; }
  std::string graph6() const { return graph6::encode(graph_); }

  /// Upper-triangle bits as one integer, first bit most significant.
  /// Numeric order equals lexicographic order for a fixed vertex count.
  /// Requires order() <= 11.
  std::uint64_t packed() const {
    if (order() > 11) throw GraphError("packed canonical code needs n <= 11");
    std::uint64_t code = 0;
    const auto rows = graph_.rows();
    for (int j = 1; j < order(); ++j) {
      for (int i = 0; i < j; ++i) code = (code << 1) | ((rows[j] >> i) & 1U);
    }
    return code;
  }

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.graph_ == b.graph_;
  }
  friend std::strong_ordering operator<=>(const CanonicalForm& a, const CanonicalForm& b) {
    if (a.order() != b.order()) return a.order() <=> b.order();
    return compare_upper_triangle(a.graph_.rows(), b.graph_.rows());
  }

private:
  Graph graph_;
};

struct CanonicalLabeling {
  /// position i of the canonical graph holds original vertex labeling[i]
  std::vector<Vertex> labeling;
  CanonicalForm form;
  /// automorphisms discovered during the search, as images perm[v]
  std::vector<std::vector<Vertex>> automorphisms;
};

namespace detail {

/// Ordered partition of the vertex set; each cell is a bit mask.
struct Partition {
  std::array<VertexMask, kMaxVertices> cells{};
  int count = 0;
};

/// Refines to the coarsest equitable partition finer than p, splitting each
/// cell by neighbor count into the splitter, pieces ordered by count.
/// The procedure depends only on structure and cell order, so it commutes
/// with relabeling.
inline void refine(std::span<const VertexMask> adj, Partition& p,
                   std::vector<VertexMask>& queue, int n) {
  std::size_t head = 0;
  std::array<int, kMaxVertices> counts{};
  while (head < queue.size() && p.count < n) {
    const VertexMask splitter = queue[head++];
    for (int ci = 0; ci < p.count; ++ci) {
      const VertexMask cell = p.cells[ci];
      if (std::popcount(cell) == 1) continue;
      int lo = kMaxVertices, hi = -1;
      for_each_vertex(cell, [&](Vertex v) {
        counts[v] = std::popcount(adj[v] & splitter);
        lo = std::min(lo, counts[v]);
        hi = std::max(hi, counts[v]);
      });
      if (lo == hi) continue;
      std::array<VertexMask, kMaxVertices + 1> pieces{};
      int npieces = 0;
      // Distinct counts in ascending order.
      int current = lo;
      while (current <= hi) {
        VertexMask piece = 0;
        int next = kMaxVertices + 1;
        for_each_vertex(cell, [&](Vertex v) {
          if (counts[v] == current) piece |= bit(v);
          else if (counts[v] > current) next = std::min(next, counts[v]);
        });
        pieces[npieces++] = piece;
        current = next;
      }
      for (int k = p.count - 1; k > ci; --k) p.cells[k + npieces - 1] = p.cells[k];
      for (int k = 0; k < npieces; ++k) {
        p.cells[ci + k] = pieces[k];
        queue.push_back(pieces[k]);
      }
      p.count += npieces - 1;
      ci += npieces - 1;
    }
  }
}

class CanonicalSearch {
public:
  CanonicalSearch(const Graph& g, std::span<const VertexMask> initial)
      : n_(g.order()), adj_(g.rows()) {
    root_.count = 0;
    std::vector<VertexMask> queue;
    if (initial.empty()) {
      root_.cells[root_.count++] = g.all_vertices();
    } else {
      VertexMask seen = 0;
      for (auto c : initial) {
        if (c == 0 || (c & seen) != 0 || (c & ~g.all_vertices()) != 0) {
          throw GraphError("initial partition cells must be nonempty and disjoint");
        }
        seen |= c;
        root_.cells[root_.count++] = c;
      }
      if (seen != g.all_vertices()) throw GraphError("initial partition does not cover V");
    }
    for (int i = 0; i < root_.count; ++i) queue.push_back(root_.cells[i]);
    refine(adj_, root_, queue, n_);
  }

  const Partition& root() const { return root_; }

  CanonicalLabeling run(const Graph& g) {
    if (n_ > 0) search(root_, 0);
    CanonicalLabeling out;
    out.labeling.assign(best_lab_.begin(), best_lab_.begin() + n_);
    out.form = CanonicalForm(g.relabel(out.labeling));
    out.automorphisms.reserve(generators_.size());
    for (const auto& gen : generators_) {
      out.automorphisms.emplace_back(gen.begin(), gen.begin() + n_);
    }
    return out;
  }

private:
  using Labels = std::array<Vertex, kMaxVertices>;
  using Rows = std::array<VertexMask, kMaxVertices>;

  // Returns the depth at which the search resumes.
  int search(const Partition& node, int depth) {
    if (node.count == n_) return leaf(node, depth);

    int target = 0;
    while (std::popcount(node.cells[target]) == 1) ++target;
    const VertexMask cell = node.cells[target];

    VertexMask explored = 0;
    std::size_t gens_used = static_cast<std::size_t>(-1);
    Labels orbit{};
    std::vector<VertexMask> queue;
    queue.reserve(4 * kMaxVertices);

    for (VertexMask rest = cell; rest != 0; rest &= rest - 1) {
      const Vertex v = std::countr_zero(rest);
      if (explored != 0) {
        if (gens_used != generators_.size()) {
          stabilizer_orbits(depth, orbit);
          gens_used = generators_.size();
        }
        bool equivalent = false;
        for_each_vertex(explored, [&](Vertex w) { equivalent = equivalent || orbit[w] == orbit[v]; });
        if (equivalent) continue;
      }
      explored |= bit(v);

      Partition child = node;
      for (int k = child.count - 1; k > target; --k) child.cells[k + 1] = child.cells[k];
      child.cells[target] = bit(v);
      child.cells[target + 1] = cell & ~bit(v);
      ++child.count;
      queue.clear();
      queue.push_back(bit(v));
      refine(adj_, child, queue, n_);

      prefix_[depth] = v;
      const int resume = search(child, depth + 1);
      if (resume < depth) return resume;
    }
    return depth - 1;
  }

  int leaf(const Partition& node, int depth) {
    Labels lab{};
    Rows code{};
    for (int i = 0; i < n_; ++i) lab[i] = std::countr_zero(node.cells[i]);
    Labels inverse{};
    for (int i = 0; i < n_; ++i) inverse[lab[i]] = i;
    for (int i = 0; i < n_; ++i) {
      VertexMask row = 0;
      for_each_vertex(adj_[lab[i]], [&](Vertex u) { row |= bit(inverse[u]); });
      code[i] = row;
    }
    const std::span<const VertexMask> code_view(code.data(), static_cast<std::size_t>(n_));

    if (!have_best_) {
      have_best_ = true;
      best_code_ = first_code_ = code;
      best_lab_ = first_lab_ = lab;
      best_prefix_ = first_prefix_ = prefix_;
      best_depth_ = first_depth_ = depth;
      return depth - 1;
    }
    const std::span<const VertexMask> first_view(first_code_.data(), static_cast<std::size_t>(n_));
    if (compare_upper_triangle(code_view, first_view) == 0) {
      record_automorphism(first_lab_, lab);
      return common_prefix(first_prefix_, first_depth_, depth);
    }
    const std::span<const VertexMask> best_view(best_code_.data(), static_cast<std::size_t>(n_));
    const auto cmp = compare_upper_triangle(code_view, best_view);
    if (cmp == 0) {
      record_automorphism(best_lab_, lab);
      return common_prefix(best_prefix_, best_depth_, depth);
    }
    if (cmp < 0) {
      best_code_ = code;
      best_lab_ = lab;
      best_prefix_ = prefix_;
      best_depth_ = depth;
    }
    return depth - 1;
  }

  int common_prefix(const Labels& other, int other_depth, int depth) const {
    int j = 0;
    const int limit = std::min(other_depth, depth);
    while (j < limit && other[j] == prefix_[j]) ++j;
    return j;
  }

  void record_automorphism(const Labels& from, const Labels& to) {
    Labels perm{};
    bool identity = true;
    for (int i = 0; i < n_; ++i) {
      perm[from[i]] = to[i];
      identity = identity && from[i] == to[i];
    }
    if (!identity) generators_.push_back(perm);
  }

  // Orbits of the group generated by found automorphisms that fix the
  // current prefix pointwise; orbit[v] is a representative.
  void stabilizer_orbits(int depth, Labels& orbit) const {
    std::iota(orbit.begin(), orbit.begin() + n_, 0);
    auto find = [&](Vertex v) {
      while (orbit[v] != v) v = orbit[v] = orbit[orbit[v]];
      return v;
    };
    for (const auto& gen : generators_) {
      bool fixes = true;
      for (int d = 0; d < depth && fixes; ++d) fixes = gen[prefix_[d]] == prefix_[d];
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        const Vertex a = find(v), b = find(gen[v]);
        if (a != b) orbit[std::max(a, b)] = std::min(a, b);
      }
    }
    for (int v = 0; v < n_; ++v) orbit[v] = find(v);
  }

  int n_;
  std::span<const VertexMask> adj_;
  Partition root_;
  Labels prefix_{};

  bool have_best_ = false;
  Rows best_code_{}, first_code_{};
  Labels best_lab_{}, first_lab_{};
  Labels best_prefix_{}, first_prefix_{};
  int best_depth_ = 0, first_depth_ = 0;
  std::vector<Labels> generators_;
};

}  // namespace detail

/// Canonical labeling of g. When initial_cells is given, the labeling is
/// canonical for the vertex-colored graph whose ordered color classes are
/// those cells.
inline CanonicalLabeling canonical_labeling(const Graph& g,
                                            std::span<const VertexMask> initial_cells = {}) {
  detail::CanonicalSearch search(g, initial_cells);
  return search.run(g);
}

inline CanonicalForm canonical_form(const Graph& g) { return canonical_labeling(g).form; }

inline bool is_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

/// Coarsest equitable ordered partition of the unit partition.
inline std::vector<VertexMask> equitable_partition(const Graph& g) {
  detail::CanonicalSearch search(g, {});
  const auto& root = search.root();
  return {root.cells.begin(), root.cells.begin() + root.count};
}

/// Orbit representative (least member) of each vertex under the group
/// generated by the given permutations.
inline std::vector<Vertex> orbits_of(int n, std::span<const std::vector<Vertex>> generators) {
  std::vector<Vertex> orbit(static_cast<std::size_t>(n));
  std::iota(orbit.begin(), orbit.end(), 0);
  auto find = [&](Vertex v) {
    while (orbit[v] != v) v = orbit[v] = orbit[orbit[v]];
    return v;
  };
  for (const auto& gen : generators) {
    for (int v = 0; v < n; ++v) {
      const Vertex a = find(v), b = find(gen[v]);
      if (a != b) orbit[std::max(a, b)] = std::min(a, b);
    }
  }
  for (int v = 0; v < n; ++v) orbit[v] = find(v);
  return orbit;
}

/// Exact test for u and w lying in the same automorphism orbit: compares
/// canonical forms of g with u, respectively w, individualized.
inline bool same_orbit(const Graph& g, Vertex u, Vertex w) {
  if (u == w) return true;
  if (g.degree(u) != g.degree(w)) return false;
  const std::array<VertexMask, 2> cu{bit(u), g.all_vertices() & ~bit(u)};
  const std::array<VertexMask, 2> cw{bit(w), g.all_vertices() & ~bit(w)};
  if (g.order() == 1) return true;
  return canonical_labeling(g, cu).form == canonical_labeling(g, cw).form;
}

}  // namespace indsets
