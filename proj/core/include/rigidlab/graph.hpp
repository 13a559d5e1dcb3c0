#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rigidlab {

/// Undirected edge stored canonically with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool contains(int w) const { return u == w || v == w; }
  int other(int w) const { return w == u ? v : u; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1.
///
/// Edges keep their insertion order; lookups go through a per-vertex
/// neighbour set. Self-loops, duplicates and out-of-range endpoints are
/// rejected with std::invalid_argument.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, std::initializer_list<std::pair<int, int>> edges);
  Graph(int n, const std::vector<Edge>& edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  void add_edge(int i, int j);
  void remove_edge(int i, int j);
  bool has_edge(int i, int j) const;

  int degree(int v) const;
  const std::set<int>& neighbors(int v) const;

  /// Edges in lexicographic order; insertion order is not significant.
  std::vector<Edge> sorted_edges() const;

  /// Subgraph induced on `vertices`, relabelled 0..k-1 in the given order.
  Graph induced(const std::vector<int>& vertices) const;

  /// Same vertex count and edge set.
  bool same_edges(const Graph& other) const;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::set<int>> adjacency_;
};

/// Graph with positive edge lengths in a fixed ambient dimension.
class Framework {
 public:
  Framework() = default;
  Framework(Graph graph, int dim, std::map<Edge, double> lengths);

  const Graph& graph() const { return graph_; }
  int dim() const { return dim_; }
  const std::map<Edge, double>& lengths() const { return lengths_; }

  double length(int i, int j) const;
  double squared_length(int i, int j) const {
    const double l = length(i, j);
    return l * l;
  }
  double total_length() const;

 private:
  Graph graph_;
  int dim_ = 2;
  std::map<Edge, double> lengths_;
};

/// (2,3)-pebble game: true iff m = 2n-3 and every k-subset (k >= 2) spans
/// at most 2k-3 edges.
bool laman_check(const Graph& g);

/// Subset-enumeration oracle for laman_check. Throws for n > 10.
bool laman_check_bruteforce(const Graph& g);

inline constexpr int kBruteforceMaxVertices = 10;

/// m == d*n - C(d+1, 2). Throws std::invalid_argument when n < d+1.
bool minimal_count_check(const Graph& g, int d);

/// Number of edges a d-minimally rigid graph on n vertices has.
long long minimal_edge_count(int n, int d);

/// Canonical adjacency string, invariant under relabelling. Intended for
/// n <= 10; cost grows with the product of degree-class factorials.
std::vector<std::uint8_t> canonical_form(const Graph& g);

bool isomorphic(const Graph& a, const Graph& b);

}  // namespace rigidlab
