#include <gtest/gtest.h>

#include <random>

#include "indsets/constructions.hpp"
#include "indsets/counting.hpp"
#include "indsets/graph6.hpp"
#include "oracles.hpp"

using namespace indsets;

namespace {

Graph random_graph(std::mt19937_64& rng, int n, int density_percent) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (static_cast<int>(rng() % 100) < density_percent) edges.emplace_back(u, v);
  return Graph::from_edge_list(n, edges);
}

// Pascal-triangle binomial, independent of the library's.
std::uint64_t pascal(int a, int b) {
  if (a < 0 || b < 0 || b > a) return 0;
  std::vector<std::vector<std::uint64_t>> c(static_cast<std::size_t>(a + 1));
  for (int i = 0; i <= a; ++i) {
    c[i].assign(static_cast<std::size_t>(i + 1), 1);
    for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c[a][b];
}

}  // namespace

TEST(Counting, SpecValues) {
  EXPECT_EQ(count_independent_sets_of_size(cycle(5), 2), 5u);
  EXPECT_EQ(count_independent_sets_of_size(complete_bipartite(2, 3), 3), 1u);
  EXPECT_EQ(count_independent_sets_of_size(empty_graph(4), 2), 6u);
  EXPECT_EQ(count_independent_sets_of_size(windmill(7), 3), 8u);
}

TEST(Counting, Vectors) {
  EXPECT_EQ(independence_vector(path(3)), (CountVector{1, 3, 1}));
  EXPECT_EQ(total_independent_sets(path(3)), 5u);
  EXPECT_EQ(independence_vector(cycle(5)), (CountVector{1, 5, 5}));
  EXPECT_EQ(total_independent_sets(cycle(5)), 11u);
  EXPECT_EQ(total_independent_sets(complete_bipartite(2, 3)), 11u);
  EXPECT_EQ(total_independent_sets(cycle(4).induced_subgraph(VertexMask{0})), 1u);
  EXPECT_EQ(independence_number(cycle(7)), 3);
}

TEST(Counting, BeyondAlphaIsZero) {
  EXPECT_EQ(count_independent_sets_of_size(complete_graph(5), 2), 0u);
  EXPECT_EQ(count_independent_sets_of_size(cycle(5), 40), 0u);
  EXPECT_THROW(count_by_subset_scan(cycle(5), -1), std::invalid_argument);
}

TEST(Counting, Ordered) {
  EXPECT_EQ(ordered_count(complete_bipartite(2, 3), 3), 6u);
  EXPECT_EQ(ordered_count(empty_graph(4), 2), 12u);
  EXPECT_EQ(ordered_count(cycle(5), 2), 10u);
}

TEST(Counting, ClosedForms) {
  EXPECT_EQ(closed_form_path(4, 2), 3u);
  EXPECT_EQ(closed_form_cycle(6, 3), 2u);
  for (int k = 1; k <= 20; ++k) EXPECT_EQ(closed_form_path(k, 0), 1u);
  EXPECT_THROW(closed_form_cycle(2, 1), std::invalid_argument);
  EXPECT_EQ(closed_form_path(3, 4), 0u);
}

TEST(Counting, ClosedFormsMatchDirectCounts) {
  for (int k = 1; k <= 15; ++k) {
    for (int t = 0; t <= k + 1; ++t) {
      const auto brute = oracle::subset_count(path(k), t);
      ASSERT_EQ(count_independent_sets_of_size(path(k), t), brute) << k << " " << t;
      ASSERT_EQ(closed_form_path(k, t), brute) << k << " " << t;
    }
  }
  for (int k = 3; k <= 15; ++k) {
    for (int t = 0; t <= k - 1; ++t) {
      const auto brute = oracle::subset_count(cycle(k), t);
      ASSERT_EQ(count_independent_sets_of_size(cycle(k), t), brute) << k << " " << t;
      ASSERT_EQ(closed_form_cycle(k, t), brute) << k << " " << t;
    }
  }
}

TEST(Counting, ExtremalValue) {
  EXPECT_EQ(extremal_value(5, 2, 3), 1u);
  EXPECT_EQ(extremal_value(10, 3, 4), 35u);
  for (int d = 1; d <= 8; ++d) EXPECT_EQ(extremal_value(2 * d, d, d), 2u);
  EXPECT_EQ(extremal_value(7, 3, 0), 1u);
  EXPECT_THROW(extremal_value(3, 4, 1), std::invalid_argument);
}

TEST(Counting, EasyUpperBound) {
  EXPECT_EQ(easy_upper_bound(7, 2, 3), 14u);
  for (int n = 2; n <= 12; ++n) EXPECT_EQ(easy_upper_bound(n, 1, 1), static_cast<Count>(n));
  EXPECT_EQ(easy_upper_bound(6, 2, 5), 0u);
}

TEST(Counting, FallingPowerAndBinomial) {
  EXPECT_EQ(falling_power(5, 3), 60u);
  EXPECT_EQ(falling_power(9, 0), 1u);
  EXPECT_EQ(falling_power(3, 5), 0u);
  for (int a = 0; a <= 40; ++a)
    for (int b = -1; b <= a + 1; ++b) ASSERT_EQ(binomial(a, b), pascal(a, b));
  EXPECT_THROW(factorial(21), OverflowError);
  EXPECT_THROW(checked_add(~Count{0}, 1), OverflowError);
}

TEST(Counting, TotalOfEdgelessSixtyFourOverflows) {
  // 2^64 independent sets do not fit.
  EXPECT_THROW(total_independent_sets(empty_graph(64)), OverflowError);
  EXPECT_EQ(total_independent_sets(empty_graph(63)), Count{1} << 63);
}

TEST(CountingProperty, BruteForceEquivalence) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 16);
    const auto g = random_graph(rng, n, 5 + static_cast<int>(rng() % 70));
    const auto vec = independence_vector(g);
    ASSERT_EQ(vec[0], 1u);
    ASSERT_EQ(vec[1], static_cast<Count>(n));
    for (int t = 0; t <= n; ++t) {
      const auto brute = oracle::subset_count(g, t);
      ASSERT_EQ(vec[t], brute) << graph6::encode(g) << " t=" << t;
      ASSERT_EQ(count_by_subset_scan(g, t), brute);
    }
  }
}

TEST(CountingProperty, DeletionRecurrence) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 14);
    const auto g = random_graph(rng, n, 35);
    const auto whole = independence_vector(g);
    for (int v = 0; v < n; ++v) {
      const auto minus_v = independence_vector(g.delete_vertex(v));
      const auto minus_closed =
          independence_vector(g.induced_subgraph(g.all_vertices() & ~(bit(v) | g.neighbors(v))));
      for (int t = 1; t <= n; ++t) ASSERT_EQ(whole[t], minus_v[t] + minus_closed[t - 1]);
    }
  }
}

TEST(CountingProperty, EdgeDeletionMonotone) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_graph(rng, 2 + static_cast<int>(rng() % 14), 40);
    const auto before = independence_vector(g);
    for (const auto& [u, v] : g.edges()) {
      const auto after = independence_vector(g.delete_edge(u, v));
      for (int t = 0; t <= g.order(); ++t) ASSERT_LE(before[t], after[t]);
    }
  }
}

TEST(CountingProperty, UnionIsConvolution) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_graph(rng, 1 + static_cast<int>(rng() % 10), 40);
    const auto b = random_graph(rng, 1 + static_cast<int>(rng() % 10), 40);
    const auto conv = convolve(independence_vector(a), independence_vector(b));
    ASSERT_EQ(independence_vector(disjoint_union(a, b)), conv);
    std::vector<Count> manual(static_cast<std::size_t>(a.order() + b.order() + 1), 0);
    for (int i = 0; i <= a.order(); ++i)
      for (int j = 0; j <= b.order(); ++j)
        manual[i + j] += oracle::subset_count(a, i) * oracle::subset_count(b, j);
    ASSERT_EQ(conv, CountVector(manual));
  }
}

TEST(Counting, UnionWithIsolatedVertexDoublesTotal) {
  const auto g = windmill(9);
  EXPECT_EQ(total_independent_sets(disjoint_union(g, empty_graph(1))), 2 * total_independent_sets(g));
  EXPECT_EQ(count_independent_sets_of_size(disjoint_union(cycle(3), cycle(3)), 2), 9u);
}
