#include <gtest/gtest.h>

#include <random>

#include "rigidlab/families.hpp"
#include "rigidlab/graph.hpp"
#include "support.hpp"

using namespace rigidlab;
using namespace rigidlab::testing;

TEST(Graph, RejectsMalformedEdges) {
  Graph g(3);
  EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 3), std::invalid_argument);
  EXPECT_THROW(g.add_edge(-1, 0), std::invalid_argument);
  g.add_edge(2, 0);
  EXPECT_THROW(g.add_edge(0, 2), std::invalid_argument);
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_EQ(g.edges().front().u, 0);
  EXPECT_EQ(g.edges().front().v, 2);
}

TEST(Graph, DegreesAndRemoval) {
  Graph g = prism();
  for (int v = 0; v < 6; ++v) EXPECT_EQ(g.degree(v), 3);
  g.remove_edge(0, 3);
  EXPECT_FALSE(g.has_edge(3, 0));
  EXPECT_EQ(g.edge_count(), 8u);
  EXPECT_THROW(g.remove_edge(0, 3), std::invalid_argument);
}

TEST(Graph, InducedRelabels) {
  const Graph g = prism();
  const Graph h = g.induced({3, 4, 5});
  EXPECT_EQ(h.vertex_count(), 3);
  EXPECT_TRUE(h.same_edges(triangle()));
}

TEST(Framework, ValidatesLengths) {
  const Graph g = triangle();
  EXPECT_THROW(Framework(g, 2, {{Edge(0, 1), 1.0}, {Edge(1, 2), 1.0}}), std::invalid_argument);
  EXPECT_THROW(Framework(g, 2, {{Edge(0, 1), 1.0}, {Edge(1, 2), 1.0}, {Edge(0, 2), 0.0}}),
               std::invalid_argument);
  EXPECT_THROW(Framework(g, 0, {{Edge(0, 1), 1.0}, {Edge(1, 2), 1.0}, {Edge(0, 2), 1.0}}),
               std::invalid_argument);
  const Framework fw(g, 2, {{Edge(0, 1), 3.0}, {Edge(1, 2), 4.0}, {Edge(0, 2), 5.0}});
  EXPECT_DOUBLE_EQ(fw.length(2, 1), 4.0);
  EXPECT_DOUBLE_EQ(fw.squared_length(0, 2), 25.0);
  EXPECT_DOUBLE_EQ(fw.total_length(), 12.0);
}

TEST(Laman, NamedExamples) {
  EXPECT_TRUE(laman_check(triangle()));
  EXPECT_FALSE(laman_check(complete(4)));
  EXPECT_TRUE(laman_check(prism()));
  EXPECT_TRUE(laman_check(k33()));
  EXPECT_FALSE(laman_check(Graph(1)));
  EXPECT_TRUE(laman_check(Graph(2, {{0, 1}})));
  EXPECT_FALSE(laman_check(cycle(4)));
}

TEST(Laman, BruteforceNamedExamples) {
  EXPECT_TRUE(laman_check_bruteforce(triangle()));
  EXPECT_TRUE(laman_check_bruteforce(prism()));
  EXPECT_TRUE(laman_check_bruteforce(k33()));
  // K4 plus a pendant triangle: 7 = 2*5-3 edges but the K4 spans 6 > 5
  Graph g = complete(4);
  g = Graph(5, g.edges());
  g.add_edge(3, 4);
  EXPECT_EQ(g.edge_count(), 7u);
  EXPECT_FALSE(laman_check_bruteforce(g));
  EXPECT_FALSE(laman_check(g));
  EXPECT_THROW(laman_check_bruteforce(Graph(11)), std::invalid_argument);
}

TEST(Laman, AgreesWithBruteforceExhaustive) {
  for (int n = 2; n <= 6; ++n) {
    int checked = 0;
    for_each_graph(n, 2 * n - 3, [&](const Graph& g) {
      ASSERT_EQ(laman_check(g), laman_check_bruteforce(g)) << "n=" << n;
      ++checked;
    });
    EXPECT_GT(checked, 0);
  }
}

TEST(Laman, AgreesWithBruteforceRandom) {
  std::mt19937_64 rng(42);
  int positives = 0;
  for (int t = 0; t < 1500; ++t) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Graph g = (t % 2 == 0) ? random_graph_m(n, std::max(1, 2 * n - 3), rng)
                                 : random_graph(n, 0.5, rng);
    const bool fast = laman_check(g);
    ASSERT_EQ(fast, laman_check_bruteforce(g));
    positives += fast;
  }
  EXPECT_GT(positives, 50);
}

TEST(Laman, ImpliesMinimalCount) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const Graph g = random_graph_m(n, 2 * n - 3, rng);
    if (laman_check(g)) EXPECT_TRUE(minimal_count_check(g, 2));
  }
}

TEST(Laman, DegreeTwoRemovalPreservesLaman) {
  std::mt19937_64 rng(11);
  int removals = 0;
  for (int t = 0; t < 400; ++t) {
    const int n = 4 + static_cast<int>(rng() % 4);
    const Graph g = random_graph_m(n, 2 * n - 3, rng);
    if (!laman_check(g)) continue;
    for (int v = 0; v < n; ++v) {
      if (g.degree(v) != 2) continue;
      std::vector<int> rest;
      for (int w = 0; w < n; ++w) {
        if (w != v) rest.push_back(w);
      }
      EXPECT_TRUE(laman_check(g.induced(rest)));
      ++removals;
    }
  }
  EXPECT_GT(removals, 20);
}

TEST(MinimalCount, Examples) {
  Graph octahedron(6);
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      if (j != i + 3) octahedron.add_edge(i, j);
    }
  }
  EXPECT_EQ(octahedron.edge_count(), 12u);
  EXPECT_TRUE(minimal_count_check(octahedron, 3));
  EXPECT_TRUE(minimal_count_check(triangle(), 2));
  EXPECT_FALSE(minimal_count_check(Graph(3, {{0, 1}, {1, 2}}), 2));
  EXPECT_THROW(minimal_count_check(triangle(), 3), std::invalid_argument);
  EXPECT_EQ(minimal_edge_count(6, 3), 12);
}

TEST(Isomorphism, RelabellingInvariant) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const Graph g = random_graph(n, 0.45, rng);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h(n);
    for (const Edge& e : g.edges()) h.add_edge(perm[e.u], perm[e.v]);
    EXPECT_TRUE(isomorphic(g, h));
  }
  EXPECT_FALSE(isomorphic(prism(), k33()));
  EXPECT_FALSE(isomorphic(cycle(5), Graph(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {0, 3}})));
}
