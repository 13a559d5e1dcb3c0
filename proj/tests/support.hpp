#pragma once

#include <cstdint>
#include <functional>
#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "rigidlab/graph.hpp"

namespace rigidlab::testing {

inline std::string fixture(const std::string& name) { return std::string(RIGIDLAB_FIXTURE_DIR) + "/" + name; }

inline Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

inline Graph prism() {
  return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

inline Graph complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

inline Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

/// Calls fn for every graph on n labelled vertices with exactly m edges.
inline void for_each_graph(int n, int m, const std::function<void(const Graph&)>& fn) {
  std::vector<Edge> all;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) all.emplace_back(i, j);
  }
  const int k = static_cast<int>(all.size());
  if (m > k || m < 0) return;
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    std::vector<Edge> es;
    for (int i : idx) es.push_back(all[i]);
    fn(Graph(n, es));
    int i = m - 1;
    while (i >= 0 && idx[i] == k - m + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Random graph: each pair present independently with probability p.
inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) g.add_edge(i, j);
    }
  }
  return g;
}

/// Random graph with exactly m edges.
inline Graph random_graph_m(int n, int m, std::mt19937_64& rng) {
  std::vector<Edge> all;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) all.emplace_back(i, j);
  }
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(m));
  return Graph(n, all);
}

}  // namespace rigidlab::testing
