#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "indsets/checked.hpp"
#include "indsets/graph.hpp"

namespace indsets {

/// Independent-set counts by size: counts()[t] = i_t(G) for t = 0..alpha(G).
class CountVector {
public:
  CountVector() : counts_{1} {}
  explicit CountVector(std::vector<Count> counts) : counts_(std::move(counts)) {
    while (counts_.size() > 1 && counts_.back() == 0) counts_.pop_back();
    if (counts_.empty()) counts_.push_back(1);
  }
  CountVector(std::initializer_list<Count> counts) : CountVector(std::vector<Count>(counts)) {}

  /// i_t; zero beyond the independence number.
  Count operator[](std::int64_t t) const {
    if (t < 0 || t >= static_cast<std::int64_t>(counts_.size())) return 0;
    return counts_[static_cast<std::size_t>(t)];
  }

  int independence_number() const { return static_cast<int>(counts_.size()) - 1; }
  std::span<const Count> counts() const { return counts_; }
  std::size_t size() const { return counts_.size(); }

  Count total() const {
    Count sum = 0;
    for (auto c : counts_) sum = checked_add(sum, c);
    return sum;
  }

  friend bool operator==(const CountVector&, const CountVector&) = default;

private:
  std::vector<Count> counts_;
};

/// Polynomial product of two count sequences (disjoint-union rule).
inline CountVector convolve(const CountVector& a, const CountVector& b) {
  std::vector<Count> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = checked_add(out[i + j], checked_mul(a.counts()[i], b.counts()[j]));
    }
  }
  return CountVector(std::move(out));
}

namespace detail {

inline VertexMask component_of(std::span<const VertexMask> adj, VertexMask mask) {
  VertexMask comp = mask & (~mask + 1);
  VertexMask frontier = comp;
  while (frontier != 0) {
    VertexMask next = 0;
    for_each_vertex(frontier, [&](Vertex v) { next |= adj[v]; });
    frontier = next & mask & ~comp;
    comp |= frontier;
  }
  return comp;
}

// Branch on a maximum-degree vertex v:
//   I(G) = I(G - v) + x * I(G - v - N(v)),
// with components multiplied and edgeless remainders closed by binomials.
inline std::vector<Count> independence_poly(std::span<const VertexMask> adj, VertexMask mask) {
  if (mask == 0) return {1};

  const VertexMask comp = component_of(adj, mask);
  if (comp != mask) {
    const auto a = independence_poly(adj, comp);
    const auto b = independence_poly(adj, mask & ~comp);
    std::vector<Count> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        out[i + j] = checked_add(out[i + j], checked_mul(a[i], b[j]));
      }
    }
    return out;
  }

  Vertex pivot = -1;
  int best = -1;
  for_each_vertex(mask, [&](Vertex v) {
    const int d = std::popcount(adj[v] & mask);
    if (d > best) {
      best = d;
      pivot = v;
    }
  });
  if (best == 0) {
    const int k = std::popcount(mask);
    std::vector<Count> out(static_cast<std::size_t>(k) + 1);
    for (int t = 0; t <= k; ++t) out[t] = binomial(k, t);
    return out;
  }

  auto without = independence_poly(adj, mask & ~bit(pivot));
  const auto with = independence_poly(adj, mask & ~(bit(pivot) | adj[pivot]));
  if (without.size() < with.size() + 1) without.resize(with.size() + 1, 0);
  for (std::size_t t = 0; t < with.size(); ++t) {
    without[t + 1] = checked_add(without[t + 1], with[t]);
  }
  return without;
}

}  // namespace detail

inline CountVector independence_vector(const Graph& g) {
  return CountVector(detail::independence_poly(g.rows(), g.all_vertices()));
}

inline Count count_independent_sets_of_size(const Graph& g, int t) {
  if (t < 0) throw std::invalid_argument("independent set size must be nonnegative");
  return independence_vector(g)[t];
}

inline Count total_independent_sets(const Graph& g) { return independence_vector(g).total(); }

inline int independence_number(const Graph& g) { return independence_vector(g).independence_number(); }

/// Independent sets of size t with a linear order on their vertices.
inline Count ordered_count(const Graph& g, int t) {
  return checked_mul(count_independent_sets_of_size(g, t), factorial(t));
}

/// Reference count by scanning every t-subset; exponential in n.
inline Count count_by_subset_scan(const Graph& g, int t) {
  const int n = g.order();
  if (t < 0) throw std::invalid_argument("independent set size must be nonnegative");
  if (t > n) return 0;
  if (t == 0) return 1;
  Count total = 0;
  // Gosper's hack over t-subsets of n bits.
  VertexMask s = low_mask(t);
  const VertexMask limit = g.all_vertices();
  while (true) {
    if (g.is_independent(s)) ++total;
    if (t == n) break;
    const VertexMask c = s & (~s + 1);
    const VertexMask r = s + c;
    if (r == 0 || (r & ~limit) != 0) break;
    s = (((r ^ s) >> 2) / c) | r;
    if ((s & ~limit) != 0) break;
  }
  return total;
}

/// i_t(P_k) = C(k+1-t, t).
inline Count closed_form_path(int k, int t) {
  if (k < 1) throw std::invalid_argument("path needs k >= 1");
  return binomial(k + 1 - t, t);
}

/// i_t(C_k) = C(k-t, t) + C(k-t-1, t-1).
inline Count closed_form_cycle(int k, int t) {
  if (k < 3) throw std::invalid_argument("cycle needs k >= 3, got " + std::to_string(k));
  if (t == 0) return 1;
  return checked_add(binomial(k - t, t), binomial(k - t - 1, t - 1));
}

/// i_t(K_{delta, n-delta}) = C(n-delta, t) + C(delta, t), and 1 at t = 0.
inline Count extremal_value(int n, int delta, int t) {
  if (delta < 0 || delta > n) {
    throw std::invalid_argument("extremal value needs 0 <= delta <= n");
  }
  if (t < 0) throw std::invalid_argument("independent set size must be nonnegative");
  if (t == 0) return 1;
  return checked_add(binomial(n - delta, t), binomial(delta, t));
}

/// floor(n (n-(delta+1)) ... (n-(delta+t-1)) / t!), valid for every graph of
/// minimum degree delta.
inline Count easy_upper_bound(int n, int delta, int t) {
  if (t < 1) throw std::invalid_argument("easy upper bound needs t >= 1");
  if (n < delta + 1) throw std::invalid_argument("easy upper bound needs n >= delta + 1");
  unsigned __int128 product = static_cast<unsigned>(n);
  for (int i = 1; i <= t - 1; ++i) {
    const int factor = n - (delta + i);
    if (factor <= 0) return 0;
    product *= static_cast<unsigned>(factor);
    if (product > (static_cast<unsigned __int128>(1) << 100)) {
      throw OverflowError("easy upper bound overflows");
    }
  }
  const unsigned __int128 result = product / factorial(t);
  if (result > UINT64_MAX) throw OverflowError("easy upper bound overflows 64 bits");
  return static_cast<Count>(result);
}

}  // namespace indsets
