#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "indsets/canonical.hpp"
#include "indsets/constructions.hpp"
#include "indsets/counting.hpp"
#include "indsets/criticality.hpp"
#include "indsets/enumeration.hpp"

namespace indsets {

enum class Verdict { Holds, Violated };

inline const char* to_string(Verdict v) { return v == Verdict::Holds ? "holds" : "violated"; }

/// Achiever set compared with the predicted equality family.
struct EqualityComparison {
  bool predicted = false;
  std::string regime;
  std::vector<std::string> predicted_family;
  std::vector<std::string> missing;
  std::vector<std::string> unexpected;
  bool match = false;
};

struct VerificationReport {
  std::string check;
  int n = 0;
  int delta = 0;
  std::optional<int> t;  // empty: total count, or no single size
  Count extremal_value = 0;
  Count observed_max = 0;
  Verdict verdict = Verdict::Holds;
  /// canonical graph6, sorted by canonical form, capped; *_count is the true total
  std::vector<std::string> achievers;
  std::uint64_t achiever_count = 0;
  std::vector<std::string> counterexamples;
  std::uint64_t counterexample_count = 0;
  std::uint64_t classes_scanned = 0;
  std::uint64_t classes_considered = 0;
  double runtime_seconds = 0;
  std::optional<EqualityComparison> equality;
  std::map<std::string, std::uint64_t> stats;
  std::string note;

  bool holds() const { return verdict == Verdict::Holds; }
};

struct ScanOptions {
  int jobs = 1;
  /// work items per scan; 0 picks a multiple of jobs
  int shards = 0;
  Budget budget;
  std::size_t list_cap = 200;
};

namespace detail {

/// The smallest `cap` canonical forms seen, plus how many were offered.
class BoundedForms {
public:
  explicit BoundedForms(std::size_t cap = 200) : cap_(cap) {}

  void add(const CanonicalForm& f) {
    ++count_;
    if (cap_ == 0) return;
    if (forms_.size() == cap_) {
      if (!(f < *forms_.rbegin())) return;
      forms_.erase(std::prev(forms_.end()));
    }
    forms_.insert(f);
  }

  void merge(BoundedForms&& other) {
    const auto extra = other.count_;
    for (const auto& f : other.forms_) {
      add(f);
      --count_;
    }
    count_ += extra;
  }

  void clear() {
    forms_.clear();
    count_ = 0;
  }

  std::uint64_t count() const { return count_; }
  const std::set<CanonicalForm>& forms() const { return forms_; }

  std::vector<std::string> graph6_list() const {
    std::vector<std::string> out;
    for (const auto& f : forms_) out.push_back(f.graph6());
    return out;
  }

private:
  std::size_t cap_;
  std::set<CanonicalForm> forms_;
  std::uint64_t count_ = 0;
};

/// Running maximum with its achievers, plus graphs flagged as failures.
struct MaxAccumulator {
  explicit MaxAccumulator(std::size_t cap = 200) : at_best(cap), flagged(cap) {}

  bool any = false;
  Count best = 0;
  BoundedForms at_best;
  BoundedForms flagged;
  std::uint64_t scanned = 0;
  std::uint64_t considered = 0;
  std::map<std::string, std::uint64_t> stats;

  void offer(const CanonicalForm& f, Count value) {
    ++considered;
    if (!any || value > best) {
      any = true;
      best = value;
      at_best.clear();
    }
    if (value == best) at_best.add(f);
  }

  void merge(MaxAccumulator&& o) {
    scanned += o.scanned;
    considered += o.considered;
    for (const auto& [k, v] : o.stats) stats[k] += v;
    flagged.merge(std::move(o.flagged));
    if (!o.any) return;
    if (!any || o.best > best) {
      any = true;
      best = o.best;
      at_best = std::move(o.at_best);
    } else if (o.best == best) {
      at_best.merge(std::move(o.at_best));
    }
  }
};

/// Runs visit(acc, form) over every class of spec with `jobs` threads
/// pulling shards from a shared counter; per-thread accumulators are merged
/// with an associative, commutative merge.
inline MaxAccumulator scan(const EnumSpec& spec, const ScanOptions& opt,
                           const std::function<void(MaxAccumulator&, const CanonicalForm&)>& visit) {
  const Enumerator en(spec, opt.budget);
  BudgetTracker tracker(opt.budget);
  en.warm(&tracker);

  const int jobs = std::max(1, opt.jobs);
  const int shards = opt.shards > 0 ? opt.shards : (jobs == 1 ? 1 : 16 * jobs);
  std::atomic<int> next{0};
  std::mutex mutex;
  MaxAccumulator total(opt.list_cap);
  std::exception_ptr failure;

  auto worker = [&] {
    MaxAccumulator local(opt.list_cap);
    try {
      for (int s = next++; s < shards; s = next++) {
        en.for_each(
            [&](const CanonicalForm& f) {
              ++local.scanned;
              visit(local, f);
            },
            Shard{s, shards}, &tracker);
      }
    } catch (...) {
      tracker.stop();
      std::lock_guard lock(mutex);
      if (!failure) failure = std::current_exception();
      return;
    }
    std::lock_guard lock(mutex);
    total.merge(std::move(local));
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return total;
}

inline EnumSpec family(int n, int delta) {
  EnumSpec s;
  s.n = n;
  s.min_degree = delta;
  return s;
}

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void fill(VerificationReport& r, const MaxAccumulator& acc, const Stopwatch& clock) {
  r.observed_max = acc.best;
  r.achievers = acc.at_best.graph6_list();
  r.achiever_count = acc.at_best.count();
  r.counterexamples = acc.flagged.graph6_list();
  r.counterexample_count = acc.flagged.count();
  r.classes_scanned = acc.scanned;
  r.classes_considered = acc.considered;
  for (const auto& [k, v] : acc.stats) r.stats[k] += v;
  r.runtime_seconds = clock.seconds();
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace detail

/// Max of i_t over G(n, >= delta) against i_t(K_{delta, n-delta}).
inline VerificationReport check_size_t(int n, int delta, int t, const ScanOptions& opt = {}) {
  detail::require(t >= 0, "t must be >= 0");
  detail::require(delta >= 0 && delta < n, "need 0 <= delta < n");
  const detail::Stopwatch clock;
  VerificationReport r;
  r.check = "size_t";
  r.n = n;
  r.delta = delta;
  r.t = t;
  r.extremal_value = extremal_value(n, delta, t);
  const Count bound = r.extremal_value;
  const auto acc = detail::scan(detail::family(n, delta), opt, [&](auto& a, const CanonicalForm& f) {
    const Count v = count_independent_sets_of_size(f.graph(), t);
    a.offer(f, v);
    if (v > bound) a.flagged.add(f);
  });
  detail::fill(r, acc, clock);
  r.verdict = r.observed_max <= r.extremal_value ? Verdict::Holds : Verdict::Violated;
  return r;
}

/// Equality family predicted for (n, delta, t), as sorted canonical forms;
/// empty optional when no statement covers the regime.
inline std::optional<std::pair<std::string, std::vector<CanonicalForm>>> predicted_equality_family(
    int n, int delta, int t) {
  std::string regime;
  bool inside_subsets = false;
  if (delta == 2 && n >= 5 && t >= 3 && t <= n - 2) {
    regime = "delta=2, n>=5, 3<=t<=n-2";
  } else if (delta == 3 && n >= 6 && t == 3) {
    regime = "delta=3, n>=6, t=3";
  } else if (delta == 3 && n >= 7 && t >= 4 && t <= n - 3) {
    regime = "delta=3, n>=7, 4<=t<=n-3";
    inside_subsets = true;
  } else if (delta >= 3 && n >= 3 * delta + 1 && t >= 2 * delta + 1 && t <= n - delta) {
    regime = "delta>=3, n>=3delta+1, 2delta+1<=t<=n-delta";
    inside_subsets = true;
  } else {
    return std::nullopt;
  }
  std::set<CanonicalForm> forms;
  if (delta == 2) {
    forms.insert(canonical_form(complete_bipartite(2, n - 2)));
    forms.insert(canonical_form(k_prime_2(n)));
  } else if (!inside_subsets) {
    forms.insert(canonical_form(complete_bipartite(delta, n - delta)));
  } else {
    std::vector<Edge> pairs;
    for (int v = 1; v < delta; ++v)
      for (int u = 0; u < v; ++u) pairs.emplace_back(u, v);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << pairs.size()); ++m) {
      std::vector<Edge> chosen;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if ((m >> i) & 1U) chosen.push_back(pairs[i]);
      forms.insert(canonical_form(extremal_plus_inside_edges(delta, n, chosen)));
    }
  }
  return std::pair{regime, std::vector<CanonicalForm>(forms.begin(), forms.end())};
}

/// check_size_t plus a comparison of the achiever set with the predicted
/// equality family. Lists in the comparison are complete, not capped.
inline VerificationReport check_equality_class(int n, int delta, int t, ScanOptions opt = {}) {
  opt.list_cap = std::max<std::size_t>(opt.list_cap, 4096);
  auto r = check_size_t(n, delta, t, opt);
  r.check = "equality_class";
  EqualityComparison eq;
  const auto prediction = predicted_equality_family(n, delta, t);
  if (!prediction) {
    eq.regime = "no prediction";
    r.equality = eq;
    return r;
  }
  eq.predicted = true;
  eq.regime = prediction->first;
  std::set<std::string> predicted;
  for (const auto& f : prediction->second) {
    eq.predicted_family.push_back(f.graph6());
    predicted.insert(f.graph6());
  }
  // Achievers count only when they reach the extremal value.
  std::set<std::string> achieved;
  if (r.observed_max == r.extremal_value) achieved.insert(r.achievers.begin(), r.achievers.end());
  for (const auto& g : eq.predicted_family)
    if (!achieved.count(g)) eq.missing.push_back(g);
  for (const auto& g : r.achievers)
    if (achieved.count(g) && !predicted.count(g)) eq.unexpected.push_back(g);
  eq.match = eq.missing.empty() && eq.unexpected.empty() &&
             r.achiever_count == r.achievers.size();
  r.equality = eq;
  return r;
}

/// Strict inequality over vertex-critical classes of minimum degree delta.
inline VerificationReport check_vertex_critical_strict(int n, int delta, int t,
                                                       const ScanOptions& opt = {}) {
  detail::require(delta >= 1 && delta < n, "need 1 <= delta < n");
  const detail::Stopwatch clock;
  VerificationReport r;
  r.check = "vertex_critical_strict";
  r.n = n;
  r.delta = delta;
  r.t = t;
  r.extremal_value = extremal_value(n, delta, t);
  const bool stated = delta >= 3 && t >= delta + 1 &&
                      (10 * n >= 32 * delta || (delta == 3 && t == 4 && n >= 8));
  if (!stated) r.note = "outside the stated regime; reported for exploration";
  auto spec = detail::family(n, delta);
  spec.vertex_critical_only = true;
  const Count bound = r.extremal_value;
  const auto acc = detail::scan(spec, opt, [&](auto& a, const CanonicalForm& f) {
    const Count v = count_independent_sets_of_size(f.graph(), t);
    a.offer(f, v);
    if (v >= bound) a.flagged.add(f);
  });
  detail::fill(r, acc, clock);
  r.verdict = r.counterexample_count == 0 ? Verdict::Holds : Verdict::Violated;
  return r;
}

/// Critical delta=3 classes with a vertex of degree >= n-3 stay strictly
/// below i_3(K_{3,n-3}).
inline VerificationReport check_no_high_degree_equality(int n, const ScanOptions& opt = {}) {
  detail::require(n >= 4, "need n >= 4");
  const detail::Stopwatch clock;
  VerificationReport r;
  r.check = "no_high_degree_equality";
  r.n = n;
  r.delta = 3;
  r.t = 3;
  r.extremal_value = extremal_value(n, 3, 3);
  auto spec = detail::family(n, 3);
  spec.critical_only = true;
  const Count bound = r.extremal_value;
  const auto acc = detail::scan(spec, opt, [&](auto& a, const CanonicalForm& f) {
    if (f.graph().max_degree() < n - 3) return;
    const Count v = count_independent_sets_of_size(f.graph(), 3);
    a.offer(f, v);
    if (v >= bound) a.flagged.add(f);
  });
  detail::fill(r, acc, clock);
  if (r.classes_considered == 0) r.note = "vacuous: no critical class has a vertex of degree >= n-3";
  r.verdict = r.counterexample_count == 0 ? Verdict::Holds : Verdict::Violated;
  return r;
}

/// Max total i(G) over G(n, >= delta) against the conjectured multipartite
/// maximizer (K_{delta, n-delta} whenever n >= 2 delta).
inline VerificationReport check_total_count(int n, int delta, const ScanOptions& opt = {}) {
  detail::require(delta >= 1 && n >= delta + 1, "need n >= delta + 1 >= 2");
  const detail::Stopwatch clock;
  VerificationReport r;
  r.check = "total_count";
  r.n = n;
  r.delta = delta;
  r.extremal_value = total_independent_sets(conjecture_multipartite(n, delta));
  const Count bound = r.extremal_value;
  const auto acc = detail::scan(detail::family(n, delta), opt, [&](auto& a, const CanonicalForm& f) {
    const Count v = total_independent_sets(f.graph());
    a.offer(f, v);
    if (v > bound) a.flagged.add(f);
  });
  detail::fill(r, acc, clock);
  r.verdict = r.observed_max <= r.extremal_value ? Verdict::Holds : Verdict::Violated;
  return r;
}

/// For each class and t >= delta+1: i_t <= bound_t implies i_{t+1} <=
/// bound_{t+1}, and strictly when t < n - delta. observed_max counts failed
/// implications.
inline VerificationReport check_monotone_step(int n, int delta, const ScanOptions& opt = {}) {
  detail::require(delta >= 2 && delta < n, "need 2 <= delta < n");
  const detail::Stopwatch clock;
  VerificationReport r;
  r.check = "monotone_step";
  r.n = n;
  r.delta = delta;
  std::vector<Count> bound(static_cast<std::size_t>(n) + 2);
  for (int t = 0; t <= n + 1; ++t) bound[t] = extremal_value(n, delta, t);
  const auto acc = detail::scan(detail::family(n, delta), opt, [&](auto& a, const CanonicalForm& f) {
    const auto vec = independence_vector(f.graph());
    std::uint64_t failed = 0;
    for (int t = delta + 1; t + 1 <= n; ++t) {
      if (vec[t] <= bound[t]) {
        ++a.stats["implications_checked"];
        if (vec[t + 1] > bound[t + 1]) ++failed;
      } else {
        ++a.stats["antecedent_false"];
      }
      if (t < n - delta && vec[t] < bound[t]) {
        ++a.stats["strict_implications_checked"];
        if (!(vec[t + 1] < bound[t + 1])) ++failed;
      }
    }
    a.offer(f, failed);
    if (failed > 0) {
      a.flagged.add(f);
      a.stats["violations"] += failed;
    }
  });
  detail::fill(r, acc, clock);
  r.observed_max = r.stats.count("violations") ? r.stats["violations"] : 0;
  r.achievers.clear();
  r.achiever_count = 0;
  r.verdict = r.counterexample_count == 0 ? Verdict::Holds : Verdict::Violated;
  return r;
}

/// i_t(G) = i_t(G-v) + i_{t-1}(G-N[v]) for every class, vertex and t >= 1.
inline VerificationReport check_deletion_identity(int n, int delta = 0, const ScanOptions& opt = {}) {
  detail::require(delta >= 0 && delta < n, "need 0 <= delta < n");
  const detail::Stopwatch clock;
  VerificationReport r;
  r.check = "deletion_identity";
  r.n = n;
  r.delta = delta;
  const auto acc = detail::scan(detail::family(n, delta), opt, [&](auto& a, const CanonicalForm& f) {
    const Graph& g = f.graph();
    const auto whole = independence_vector(g);
    std::uint64_t failed = 0;
    for (int v = 0; v < n; ++v) {
      const auto minus_v = independence_vector(g.delete_vertex(v));
      const auto minus_closed =
          independence_vector(g.induced_subgraph(g.all_vertices() & ~(bit(v) | g.neighbors(v))));
      for (int t = 1; t <= n; ++t) {
        ++a.stats["identities_checked"];
        if (whole[t] != minus_v[t] + minus_closed[t - 1]) ++failed;
      }
    }
    a.offer(f, failed);
    if (failed > 0) {
      a.flagged.add(f);
      a.stats["violations"] += failed;
    }
  });
  detail::fill(r, acc, clock);
  r.observed_max = r.stats.count("violations") ? r.stats["violations"] : 0;
  r.achievers.clear();
  r.achiever_count = 0;
  r.verdict = r.counterexample_count == 0 ? Verdict::Holds : Verdict::Violated;
  return r;
}

/// Every triangle-pair pattern in a critical delta=3 class: the rewire keeps
/// all degrees and does not decrease i_3.
inline VerificationReport check_rewiring(int n, const ScanOptions& opt = {}) {
  const detail::Stopwatch clock;
  VerificationReport r;
  r.check = "rewiring";
  r.n = n;
  r.delta = 3;
  r.t = 3;
  auto spec = detail::family(n, 3);
  spec.critical_only = true;
  const auto acc = detail::scan(spec, opt, [&](auto& a, const CanonicalForm& f) {
    const Graph& g = f.graph();
    const auto patterns = find_triangle_pair_patterns(g);
    if (patterns.empty()) return;
    const Count before = count_independent_sets_of_size(g, 3);
    Count worst_drop = 0;
    bool bad = false;
    for (const auto& p : patterns) {
      ++a.stats["patterns_checked"];
      const Graph h = triangle_rewire(g, p);
      if (h.degrees() != g.degrees()) {
        ++a.stats["degree_changes"];
        bad = true;
      }
      const Count after = count_independent_sets_of_size(h, 3);
      if (after < before) {
        ++a.stats["count_decreases"];
        worst_drop = std::max(worst_drop, before - after);
        bad = true;
      }
    }
    a.offer(f, worst_drop);
    if (bad) a.flagged.add(f);
  });
  detail::fill(r, acc, clock);
  r.achievers.clear();
  r.achiever_count = 0;
  if (r.classes_considered == 0) r.note = "vacuous: no critical class contains the pattern";
  r.verdict = r.counterexample_count == 0 ? Verdict::Holds : Verdict::Violated;
  return r;
}

/// Every connected critical delta=2 class decomposes and its split passes
/// every invariant.
inline VerificationReport check_decomposition(int n, const ScanOptions& opt = {}) {
  const detail::Stopwatch clock;
  VerificationReport r;
  r.check = "decomposition";
  r.n = n;
  r.delta = 2;
  auto spec = detail::family(n, 2);
  spec.critical_only = true;
  spec.connected_only = true;
  const auto acc = detail::scan(spec, opt, [&](auto& a, const CanonicalForm& f) {
    const Graph& g = f.graph();
    bool ok = true;
    try {
      const auto d = decompose_critical_2(g);
      if (d.kind == DecompositionKind::Cycle) {
        ok = g.max_degree() == 2;
        ++a.stats["cycles"];
      } else {
        ok = !path_split_violation(g, d).has_value();
        ++a.stats["path_splits"];
        if (d.v1 == d.v2) ++a.stats["v1_equals_v2"];
      }
    } catch (const std::exception&) {
      ok = false;
    }
    a.offer(f, ok ? 0 : 1);
    if (!ok) a.flagged.add(f);
  });
  detail::fill(r, acc, clock);
  r.achievers.clear();
  r.achiever_count = 0;
  r.observed_max = r.counterexample_count;
  r.verdict = r.counterexample_count == 0 ? Verdict::Holds : Verdict::Violated;
  return r;
}

/// Re-decodes every listed achiever and counterexample and recomputes its
/// value; returns the first mismatch.
inline std::optional<std::string> recheck_achievers(const VerificationReport& r) {
  if (r.check != "size_t" && r.check != "equality_class" && r.check != "total_count" &&
      r.check != "vertex_critical_strict" && r.check != "no_high_degree_equality") {
    return std::nullopt;
  }
  auto value = [&](const Graph& g) {
    return r.t ? count_independent_sets_of_size(g, *r.t) : total_independent_sets(g);
  };
  for (const auto& s : r.achievers) {
    const Graph g = graph6::decode(s);
    if (g.order() != r.n) return "achiever " + s + " has the wrong order";
    if (value(g) != r.observed_max) return "achiever " + s + " does not reproduce the maximum";
    if (canonical_form(g).graph6() != s) return "achiever " + s + " is not in canonical form";
  }
  return std::nullopt;
}

}  // namespace indsets
