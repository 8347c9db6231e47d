#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "indsets/canonical.hpp"
#include "indsets/criticality.hpp"
#include "indsets/graph.hpp"

namespace indsets {

/// Filters describing a family of graphs to enumerate up to isomorphism.
struct EnumSpec {
  int n = 1;
  /// lower bound on the minimum degree (exact when exact_min_degree is set)
  int min_degree = 0;
  bool exact_min_degree = false;
  bool connected_only = false;
  /// edge- and vertex-critical at min_degree
  bool critical_only = false;
  bool vertex_critical_only = false;
  std::optional<int> max_edges;
  /// keep only graphs whose independence number is at least this value
  std::optional<int> min_independence;
};

struct Budget {
  std::optional<std::uint64_t> max_classes;
  std::optional<double> timeout_seconds;
  /// admits n = 10; larger n is always rejected
  bool allow_n10 = false;
};

class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Shard {
  int index = 0;
  int count = 1;
};

inline constexpr int kMaxEnumerationOrder = 10;

namespace detail {

inline int max_independent(std::span<const VertexMask> adj, VertexMask mask) {
  if (mask == 0) return 0;
  Vertex pivot = std::countr_zero(mask);
  int best_deg = -1;
  for_each_vertex(mask, [&](Vertex v) {
    const int d = std::popcount(adj[v] & mask);
    if (d > best_deg) {
      best_deg = d;
      pivot = v;
    }
  });
  if (best_deg == 0) return std::popcount(mask);
  const int with = 1 + max_independent(adj, mask & ~(bit(pivot) | adj[pivot]));
  if (with >= std::popcount(mask & ~bit(pivot))) return with;
  return std::max(with, max_independent(adj, mask & ~bit(pivot)));
}

/// Cross-thread counter and clock shared by the shards of one enumeration.
class BudgetTracker {
public:
  explicit BudgetTracker(const Budget& b)
      : budget_(b), start_(std::chrono::steady_clock::now()) {}

  void count_class() {
    if (stopped_.load(std::memory_order_relaxed)) throw BudgetExceeded("scan aborted");
    const auto seen = classes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (budget_.max_classes && seen > *budget_.max_classes) {
      throw BudgetExceeded("class budget of " + std::to_string(*budget_.max_classes) +
                           " exceeded");
    }
  }

  void check_clock() const {
    if (stopped_.load(std::memory_order_relaxed)) throw BudgetExceeded("scan aborted");
    if (!budget_.timeout_seconds) return;
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    if (elapsed.count() > *budget_.timeout_seconds) {
      throw BudgetExceeded("time budget of " + std::to_string(*budget_.timeout_seconds) +
                           " s exceeded");
    }
  }

  std::uint64_t classes() const { return classes_.load(); }

  /// Makes every later check in any thread throw.
  void stop() { stopped_.store(true); }

private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<std::uint64_t> classes_{0};
  std::atomic<bool> stopped_{false};
};

/// Per-level pruning bounds for intermediate graphs.
struct LevelKey {
  int order;
  int min_degree;
  int min_independence;
  int max_edges;

  friend auto operator<=>(const LevelKey&, const LevelKey&) = default;
};

using ClassList = std::vector<Graph>;

/// Extends parent by a vertex of degree d and emits, via accept, every
/// child whose new vertex is in the canonical deletion orbit, once per
/// isomorphism class. The deletion orbit is chosen inside the first cell of
/// the equitable partition, a set of minimum-degree vertices.
template <typename Accept>
void extend_parent(const Graph& parent, int d, int min_independence, int max_edges,
                   const BudgetTracker* clock, Accept&& accept) {
  const int k = parent.order() + 1;
  const Vertex z = k - 1;
  if (d > k - 1) return;
  if (static_cast<int>(parent.edge_count()) + d > max_edges) return;

  VertexMask required = 0;
  for (int v = 0; v < parent.order(); ++v) {
    const int deg = parent.degree(v);
    if (deg < d - 1) return;
    if (deg == d - 1) required |= bit(v);
  }
  const int need = d - std::popcount(required);
  if (need < 0) return;
  const VertexMask free = parent.all_vertices() & ~required;
  const auto free_list = mask_to_vertices(free);
  if (need > static_cast<int>(free_list.size())) return;

  std::array<VertexMask, kMaxVertices> rows{};
  std::copy(parent.rows().begin(), parent.rows().end(), rows.begin());
  const std::span<const VertexMask> adj(rows.data(), static_cast<std::size_t>(k));

  std::unordered_set<std::uint64_t> siblings;
  std::vector<VertexMask> queue;
  std::vector<int> pick(static_cast<std::size_t>(need));
  for (int i = 0; i < need; ++i) pick[i] = i;
  std::uint64_t tick = 0;

  while (true) {
    VertexMask s = required;
    for (int i = 0; i < need; ++i) s |= bit(free_list[pick[i]]);

    if (clock != nullptr && (++tick & 0xFFF) == 0) clock->check_clock();

    for (int v = 0; v < k - 1; ++v) rows[v] = parent.rows()[v] | ((s >> v) & 1U ? bit(z) : 0);
    rows[z] = s;

    bool ok = true;
    if (min_independence > 0 && max_independent(adj, low_mask(k)) < min_independence) ok = false;

    Partition part;
    if (ok) {
      part.cells[0] = low_mask(k);
      part.count = 1;
      queue.clear();
      queue.push_back(low_mask(k));
      refine(adj, part, queue, k);
      ok = (part.cells[0] & bit(z)) != 0;
    }
    if (ok) {
      const Graph child = Graph::from_rows(adj);
      const std::span<const VertexMask> cells(part.cells.data(), static_cast<std::size_t>(part.count));
      CanonicalLabeling lab = canonical_labeling(child, cells);
      const VertexMask first = part.cells[0];
      bool in_orbit = true;
      if (std::popcount(first) > 1) {
        const Vertex c = lab.labeling[std::popcount(first) - 1];
        if (c != z) {
          const auto orbit = orbits_of(k, lab.automorphisms);
          in_orbit = orbit[c] == orbit[z] || same_orbit(child, c, z);
        }
      }
      if (in_orbit && siblings.insert(lab.form.packed()).second) accept(lab.form);
    }

    // next combination of `need` elements from free_list
    int i = need - 1;
    while (i >= 0 && pick[i] == static_cast<int>(free_list.size()) - need + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < need; ++j) pick[j] = pick[j - 1] + 1;
  }
}

/// Process-wide cache of intermediate class lists. Lists are immutable once
/// published.
class LevelCache {
public:
  static LevelCache& instance() {
    static LevelCache cache;
    return cache;
  }

  std::shared_ptr<const ClassList> get(const LevelKey& key, const BudgetTracker* clock) {
    {
      std::lock_guard lock(mutex_);
      auto it = lists_.find(key);
      if (it != lists_.end()) return it->second;
    }
    auto built = std::make_shared<const ClassList>(build(key, clock));
    std::lock_guard lock(mutex_);
    auto [it, inserted] = lists_.emplace(key, built);
    return it->second;
  }

  void clear() {
    std::lock_guard lock(mutex_);
    lists_.clear();
  }

private:
  // All classes of the given order with min degree >= key.min_degree,
  // independence number >= key.min_independence, edges <= key.max_edges.
  ClassList build(const LevelKey& key, const BudgetTracker* clock) {
    ClassList out;
    if (key.order == 1) {
      if (key.min_degree <= 0 && key.min_independence <= 1 && key.max_edges >= 0) {
        out.push_back(Graph(1));
      }
      return out;
    }
    for (int d = std::max(0, key.min_degree); d <= key.order - 1; ++d) {
      const LevelKey parent_key{key.order - 1, std::max(0, d - 1),
                                std::max(0, key.min_independence - 1), key.max_edges};
      const auto parents = get(parent_key, clock);
      for (const auto& p : *parents) {
        extend_parent(p, d, key.min_independence, key.max_edges, clock,
                      [&](const CanonicalForm& f) { out.push_back(f.graph()); });
      }
    }
    return out;
  }

  std::mutex mutex_;
  std::map<LevelKey, std::shared_ptr<const ClassList>> lists_;
};

}  // namespace detail

/// Isomorphism-free generator for the family described by an EnumSpec.
///
/// Every class with minimum degree exactly d is produced from exactly one
/// parent class (the graph minus a canonically chosen degree-d vertex), so
/// shards that split the parent list are disjoint and together complete.
class Enumerator {
public:
  explicit Enumerator(EnumSpec spec, Budget budget = {})
      : spec_(spec), budget_(budget) {
    if (spec_.n < 1) throw std::invalid_argument("enumeration needs n >= 1");
    if (spec_.min_degree < 0) throw std::invalid_argument("enumeration needs min degree >= 0");
    if (spec_.n > kMaxEnumerationOrder) {
      throw BudgetExceeded("enumeration of n = " + std::to_string(spec_.n) +
                           " exceeds the supported order " +
                           std::to_string(kMaxEnumerationOrder));
    }
    if (spec_.n == kMaxEnumerationOrder && !budget_.allow_n10) {
      throw BudgetExceeded("enumeration of n = 10 requires the allow_n10 budget flag");
    }
  }

  const EnumSpec& spec() const { return spec_; }

  /// Final-level degrees d to generate.
  std::pair<int, int> degree_range() const {
    const bool exact = spec_.exact_min_degree || spec_.critical_only || spec_.vertex_critical_only;
    return {spec_.min_degree, exact ? spec_.min_degree : spec_.n - 1};
  }

  /// Builds the intermediate class lists up front, so that shards started
  /// in parallel do not race to build the same list.
  void warm(detail::BudgetTracker* tracker = nullptr) const {
    if (spec_.n == 1) return;
    const auto [dlo, dhi] = degree_range();
    for (int d = dlo; d <= dhi; ++d) detail::LevelCache::instance().get(parent_key(d), tracker);
  }

  /// Calls f(const CanonicalForm&) for every class in the shard; each class
  /// is emitted in its canonical labeling. Order is deterministic.
  template <typename F>
  void for_each(F&& f, Shard shard = {}, detail::BudgetTracker* tracker = nullptr) const {
    if (shard.count < 1 || shard.index < 0 || shard.index >= shard.count) {
      throw std::invalid_argument("shard index must lie in [0, count)");
    }
    detail::BudgetTracker local(budget_);
    detail::BudgetTracker& track = tracker != nullptr ? *tracker : local;
    const int max_edges = edge_cap();
    const int alpha = spec_.min_independence.value_or(0);

    auto emit = [&](const CanonicalForm& form) {
      if (!passes_filters(form.graph())) return;
      track.count_class();
      f(form);
    };

    const auto [dlo, dhi] = degree_range();
    if (spec_.n == 1) {
      if (shard.index == 0 && dlo <= 0 && alpha <= 1) emit(CanonicalForm(Graph(1)));
      return;
    }
    std::uint64_t item = 0;
    for (int d = dlo; d <= dhi; ++d) {
      const auto parents = detail::LevelCache::instance().get(parent_key(d), &track);
      for (const auto& p : *parents) {
        if (item++ % static_cast<std::uint64_t>(shard.count) != static_cast<std::uint64_t>(shard.index)) {
          continue;
        }
        track.check_clock();
        detail::extend_parent(p, d, alpha, max_edges, &track, emit);
      }
    }
  }

  /// All classes, sorted by canonical form.
  std::vector<Graph> enumerate(Shard shard = {}) const {
    std::vector<CanonicalForm> forms;
    for_each([&](const CanonicalForm& f) { forms.push_back(f); }, shard);
    std::sort(forms.begin(), forms.end());
    std::vector<Graph> out;
    out.reserve(forms.size());
    for (auto& f : forms) out.push_back(f.graph());
    return out;
  }

  std::uint64_t count(Shard shard = {}) const {
    std::uint64_t total = 0;
    for_each([&](const CanonicalForm&) { ++total; }, shard);
    return total;
  }

  bool passes_filters(const Graph& g) const {
    const int md = g.min_degree();
    if (md < spec_.min_degree) return false;
    if (spec_.exact_min_degree && md != spec_.min_degree) return false;
    if (spec_.max_edges && static_cast<int>(g.edge_count()) > *spec_.max_edges) return false;
    if (spec_.connected_only && !g.is_connected()) return false;
    if (spec_.critical_only || spec_.vertex_critical_only) {
      if (md != spec_.min_degree) return false;
      if (!is_vertex_critical(g, spec_.min_degree)) return false;
      if (spec_.critical_only && !is_edge_critical(g, spec_.min_degree)) return false;
    }
    return true;
  }

private:
  int edge_cap() const {
    int cap = spec_.max_edges.value_or(spec_.n * (spec_.n - 1) / 2);
    // every edge of an edge-critical graph meets a degree-delta vertex
    if (spec_.critical_only) cap = std::min(cap, spec_.min_degree * spec_.n);
    return cap;
  }

  detail::LevelKey parent_key(int d) const {
    return {spec_.n - 1, std::max(0, d - 1), std::max(0, spec_.min_independence.value_or(0) - 1),
            edge_cap()};
  }

  EnumSpec spec_;
  Budget budget_;
};

/// Disjoint shards covering the class stream of spec.
inline std::vector<Shard> partition_work(const EnumSpec&, int shards) {
  if (shards < 1) throw std::invalid_argument("partition_work needs shards >= 1");
  std::vector<Shard> out;
  for (int i = 0; i < shards; ++i) out.push_back({i, shards});
  return out;
}

inline std::vector<Graph> enumerate(const EnumSpec& spec, Budget budget = {}, Shard shard = {}) {
  return Enumerator(spec, budget).enumerate(shard);
}

inline std::uint64_t enumerate_count(const EnumSpec& spec, Budget budget = {}) {
  return Enumerator(spec, budget).count();
}

}  // namespace indsets
