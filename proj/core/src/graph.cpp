#include "rigidlab/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

namespace rigidlab {

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
  adjacency_.resize(static_cast<std::size_t>(n));
}

Graph::Graph(int n, std::initializer_list<std::pair<int, int>> edges) : Graph(n) {
  for (const auto& [i, j] : edges) add_edge(i, j);
}

Graph::Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
  for (const Edge& e : edges) add_edge(e.u, e.v);
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " out of range for n = " +
                                std::to_string(n_));
  }
}

void Graph::add_edge(int i, int j) {
  check_vertex(i);
  check_vertex(j);
  if (i == j) throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
  if (has_edge(i, j)) {
    throw std::invalid_argument("duplicate edge (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
  }
  edges_.emplace_back(i, j);
  adjacency_[i].insert(j);
  adjacency_[j].insert(i);
}

void Graph::remove_edge(int i, int j) {
  const Edge e(i, j);
  auto it = std::find(edges_.begin(), edges_.end(), e);
  if (it == edges_.end()) {
    throw std::invalid_argument("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") not present");
  }
  edges_.erase(it);
  adjacency_[i].erase(j);
  adjacency_[j].erase(i);
}

bool Graph::has_edge(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) return false;
  return adjacency_[i].count(j) != 0;
}

int Graph::degree(int v) const {
  check_vertex(v);
  return static_cast<int>(adjacency_[v].size());
}

const std::set<int>& Graph::neighbors(int v) const {
  check_vertex(v);
  return adjacency_[v];
}

std::vector<Edge> Graph::sorted_edges() const {
  std::vector<Edge> out = edges_;
  std::sort(out.begin(), out.end());
  return out;
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  std::vector<int> position(static_cast<std::size_t>(n_), -1);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    check_vertex(vertices[k]);
    position[vertices[k]] = static_cast<int>(k);
  }
  Graph sub(static_cast<int>(vertices.size()));
  for (const Edge& e : edges_) {
    if (position[e.u] >= 0 && position[e.v] >= 0) sub.add_edge(position[e.u], position[e.v]);
  }
  return sub;
}

bool Graph::same_edges(const Graph& other) const {
  return n_ == other.n_ && sorted_edges() == other.sorted_edges();
}

Framework::Framework(Graph graph, int dim, std::map<Edge, double> lengths)
    : graph_(std::move(graph)), dim_(dim), lengths_(std::move(lengths)) {
  if (dim_ < 1) throw std::invalid_argument("dimension must be at least 1");
  if (lengths_.size() != graph_.edge_count()) {
    throw std::invalid_argument("framework needs exactly one length per edge");
  }
  for (const Edge& e : graph_.edges()) {
    auto it = lengths_.find(e);
    if (it == lengths_.end()) {
      throw std::invalid_argument("missing length for edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ")");
    }
    if (!(it->second > 0.0)) {
      throw std::invalid_argument("length of edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ") must be positive");
    }
  }
}

double Framework::length(int i, int j) const {
  auto it = lengths_.find(Edge(i, j));
  if (it == lengths_.end()) {
    throw std::invalid_argument("no edge (" + std::to_string(i) + ", " + std::to_string(j) +
                                ")");
  }
  return it->second;
}

double Framework::total_length() const {
  double sum = 0.0;
  for (const auto& [e, l] : lengths_) sum += l;
  return sum;
}

namespace {

// Directed pebble-game state. Each vertex starts with two pebbles; an
// accepted edge is covered by a pebble from one endpoint and oriented away
// from it.
class PebbleGame {
 public:
  explicit PebbleGame(int n)
      : pebbles_(static_cast<std::size_t>(n), 2), out_(static_cast<std::size_t>(n)) {}

  bool insert(int u, int v) {
    while (pebbles_[u] + pebbles_[v] < 4) {
      const int target = pebbles_[u] < 2 ? u : v;
      if (!gather(target, u, v)) {
        const int alt = target == u ? v : u;
        if (pebbles_[alt] >= 2 || !gather(alt, u, v)) return false;
      }
    }
    const int from = pebbles_[u] > 0 ? u : v;
    --pebbles_[from];
    out_[from].push_back(from == u ? v : u);
    return true;
  }

 private:
  // Depth-first search from `root` along out-edges for a free pebble that
  // does not sit on the edge endpoints; the path is reversed on success.
  bool gather(int root, int u, int v) {
    const std::size_t n = pebbles_.size();
    std::vector<int> parent(n, -2);
    parent[u] = -1;
    parent[v] = -1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y : out_[x]) {
        if (parent[y] != -2) continue;
        parent[y] = x;
        if (pebbles_[y] > 0) {
          --pebbles_[y];
          int cur = y;
          while (cur != root) {
            const int prev = parent[cur];
            auto& edges = out_[prev];
            edges.erase(std::find(edges.begin(), edges.end(), cur));
            out_[cur].push_back(prev);
            cur = prev;
          }
          ++pebbles_[root];
          return true;
        }
        stack.push_back(y);
      }
    }
    return false;
  }

  std::vector<int> pebbles_;
  std::vector<std::vector<int>> out_;
};

}  // namespace

bool laman_check(const Graph& g) {
  const int n = g.vertex_count();
  if (n < 2) return false;
  if (static_cast<long long>(g.edge_count()) != 2LL * n - 3) return false;
  PebbleGame game(n);
  for (const Edge& e : g.edges()) {
    if (!game.insert(e.u, e.v)) return false;
  }
  return true;
}

bool laman_check_bruteforce(const Graph& g) {
  const int n = g.vertex_count();
  if (n > kBruteforceMaxVertices) {
    throw std::invalid_argument("brute-force Laman check is limited to n <= 10");
  }
  if (n < 2) return false;
  if (static_cast<long long>(g.edge_count()) != 2LL * n - 3) return false;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int k = std::popcount(mask);
    if (k < 2) continue;
    int spanned = 0;
    for (const Edge& e : g.edges()) {
      if ((mask >> e.u & 1u) && (mask >> e.v & 1u)) ++spanned;
    }
    if (spanned > 2 * k - 3) return false;
  }
  return true;
}

long long minimal_edge_count(int n, int d) {
  return static_cast<long long>(d) * n - static_cast<long long>(d) * (d + 1) / 2;
}

bool minimal_count_check(const Graph& g, int d) {
  if (d < 1) throw std::invalid_argument("dimension must be at least 1");
  if (g.vertex_count() < d + 1) {
    throw std::invalid_argument("a d-minimally rigid graph needs at least d+1 vertices");
  }
  return static_cast<long long>(g.edge_count()) == minimal_edge_count(g.vertex_count(), d);
}

std::vector<std::uint8_t> canonical_form(const Graph& g) {
  const int n = g.vertex_count();
  // Refine by (degree, sorted neighbour degrees); classes are ordered by
  // that key so the class layout itself is a relabelling invariant.
  std::vector<std::vector<int>> keys(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    keys[v].push_back(g.degree(v));
    std::vector<int> nd;
    for (int w : g.neighbors(v)) nd.push_back(g.degree(w));
    std::sort(nd.begin(), nd.end());
    keys[v].insert(keys[v].end(), nd.begin(), nd.end());
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return keys[a] < keys[b]; });
  std::vector<std::pair<int, int>> classes;  // [begin, end) into order
  for (int i = 0; i < n;) {
    int j = i + 1;
    while (j < n && keys[order[j]] == keys[order[i]]) ++j;
    classes.emplace_back(i, j);
    i = j;
  }

  auto encode = [&](const std::vector<int>& perm) {
    std::vector<std::uint8_t> bits;
    bits.reserve(static_cast<std::size_t>(n * (n - 1) / 2 + 1));
    bits.push_back(static_cast<std::uint8_t>(n));
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) bits.push_back(g.has_edge(perm[a], perm[b]) ? 1 : 0);
    }
    return bits;
  };

  std::vector<std::uint8_t> best;
  std::vector<int> perm = order;
  for (auto& [b, e] : classes) std::sort(perm.begin() + b, perm.begin() + e);

  // Odometer over per-class permutations.
  while (true) {
    auto code = encode(perm);
    if (best.empty() || code < best) best = std::move(code);
    std::size_t c = 0;
    for (; c < classes.size(); ++c) {
      auto [b, e] = classes[c];
      if (std::next_permutation(perm.begin() + b, perm.begin() + e)) break;
    }
    if (c == classes.size()) break;
  }
  return best;
}

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace rigidlab
