#include <gtest/gtest.h>

#include <random>

#include "indsets/constructions.hpp"
#include "indsets/graph.hpp"
#include "indsets/graph6.hpp"
#include "oracles.hpp"

using namespace indsets;

TEST(Graph, FromEdgeListPath) {
  const auto g = Graph::from_edge_list(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(g.order(), 3);
  EXPECT_EQ(g.degrees(), (std::vector<int>{1, 2, 1}));
}

TEST(Graph, SingleVertex) {
  const Graph g(1);
  EXPECT_EQ(g.min_degree(), 0);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(Graph, DuplicateEdgesCollapse) {
  const auto g = Graph::from_edge_list(4, {{0, 1}, {0, 1}, {2, 3}});
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(Graph, RejectsBadInput) {
  EXPECT_THROW(Graph::from_edge_list(3, {{0, 3}}), GraphError);
  EXPECT_THROW(Graph::from_edge_list(3, {{1, 1}}), GraphError);
  EXPECT_THROW(Graph(65), GraphError);
  EXPECT_THROW(Graph(0), GraphError);
  EXPECT_THROW(Graph(3).degree(3), GraphError);
}

TEST(Graph, Degrees) {
  EXPECT_EQ(complete_bipartite(2, 3).degree(4), 2);
  const auto c7 = cycle(7);
  for (int v = 0; v < 7; ++v) EXPECT_EQ(c7.degree(v), 2);
  EXPECT_EQ(windmill(7).degree(0), 6);
  EXPECT_EQ(Graph(5).min_degree(), 0);
}

TEST(Graph, Edits) {
  const auto k33 = complete_bipartite(3, 3);
  const auto k23 = k33.delete_vertex(0);
  EXPECT_EQ(k23.order(), 5);
  EXPECT_EQ(k23.edge_count(), 6u);
  EXPECT_EQ(k23.min_degree(), 2);

  const auto c4 = cycle(4);
  const auto p = c4.delete_edge(0, 1);
  EXPECT_EQ(p.edge_count(), 3u);
  EXPECT_TRUE(p.is_connected());
  EXPECT_EQ(p.max_degree(), 2);
  EXPECT_EQ(c4.edge_count(), 4u);  // original unchanged

  EXPECT_THROW(c4.delete_edge(0, 2), GraphError);
  EXPECT_THROW(c4.add_edge(0, 1), GraphError);

  const auto kp = complete_bipartite(2, 3).add_edge(0, 1);
  EXPECT_EQ(kp.degree(0), 4);
  EXPECT_EQ(kp, k_prime_2(5));
}

TEST(Graph, DeleteVertexKeepsOrder) {
  const auto p = path(4);  // 0-1-2-3
  const auto g = p.delete_vertex(1);
  EXPECT_FALSE(g.adjacent(0, 1));
  EXPECT_TRUE(g.adjacent(1, 2));
}

TEST(Graph, InducedSubgraph) {
  const auto e = cycle(6).induced_subgraph(VertexMask{0});
  EXPECT_EQ(e.order(), 0);
  const std::vector<Vertex> s{0, 1, 2};
  EXPECT_EQ(cycle(6).induced_subgraph(s), path(3));
  const std::vector<Vertex> side{3, 4, 5};
  EXPECT_EQ(complete_bipartite(3, 3).induced_subgraph(side).edge_count(), 0u);
  EXPECT_THROW(cycle(4).induced_subgraph(VertexMask{1} << 4), GraphError);
}

TEST(Graph, Components) {
  EXPECT_TRUE(cycle(5).is_connected());
  const auto u = disjoint_union(cycle(3), cycle(4));
  const auto comps = u.components();
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(std::popcount(comps[0]), 3);
  EXPECT_EQ(std::popcount(comps[1]), 4);
  EXPECT_EQ(Graph(3).components().size(), 3u);
}

TEST(GraphProperty, RandomGraphInvariants) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 20);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 3 == 0) edges.emplace_back(u, v);
    const auto g = Graph::from_edge_list(n, edges);

    int degree_sum = 0;
    for (int v = 0; v < n; ++v) degree_sum += g.degree(v);
    EXPECT_EQ(degree_sum, 2 * static_cast<int>(g.edge_count()));

    for (const auto& [u, v] : g.edges()) {
      EXPECT_EQ(g.delete_edge(u, v).add_edge(u, v), g);
    }

    VertexMask seen = 0;
    for (auto c : g.components()) {
      EXPECT_EQ(seen & c, 0u);
      seen |= c;
      EXPECT_TRUE(g.induced_subgraph(c).is_connected());
    }
    EXPECT_EQ(seen, g.all_vertices());
  }
}

TEST(Graph6, KnownEncodings) {
  // Reference strings from the standard encoder.
  EXPECT_EQ(graph6::encode(complete_graph(4)), "C~");
  EXPECT_EQ(graph6::encode(cycle(5)), "Dhc");
  EXPECT_EQ(graph6::encode(Graph(1)), "@");
  EXPECT_EQ(graph6::encode(path(2)), "A_");
}

TEST(Graph6, Errors) {
  EXPECT_THROW(graph6::decode(""), graph6::Graph6Error);
  EXPECT_THROW(graph6::decode("C"), graph6::Graph6Error);
  EXPECT_THROW(graph6::decode("C~~"), graph6::Graph6Error);
  EXPECT_THROW(graph6::decode("C\x7f"), graph6::Graph6Error);
  EXPECT_THROW(graph6::decode("A`"), graph6::Graph6Error);  // padding bit set
}

TEST(Graph6, RoundTripProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 62);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 4 == 0) edges.emplace_back(u, v);
    const auto g = Graph::from_edge_list(n, edges);
    const auto text = graph6::encode(g);
    for (char c : text) {
      EXPECT_GE(c, 63);
      EXPECT_LE(c, 126);
    }
    EXPECT_EQ(graph6::decode(text), g);
    EXPECT_EQ(graph6::encode(graph6::decode(text)), text);
  }
}
