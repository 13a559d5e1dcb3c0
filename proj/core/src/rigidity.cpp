#include "rigidlab/rigidity.hpp"

#include <random>
#include <stdexcept>

namespace rigidlab {

template <typename T>
Matrix<T> rigidity_matrix(const Graph& g, const Embedding<T>& e) {
  if (e.size() != g.vertex_count()) {
    throw std::invalid_argument("embedding has " + std::to_string(e.size()) +
                                " points but the graph has " +
                                std::to_string(g.vertex_count()) + " vertices");
  }
  const int d = e.dim;
  Matrix<T> a(g.edge_count(), static_cast<std::size_t>(d) * g.vertex_count());
  std::size_t row = 0;
  for (const Edge& edge : g.edges()) {
    for (int k = 0; k < d; ++k) {
      const T diff = e.at(edge.u, k) - e.at(edge.v, k);
      a(row, static_cast<std::size_t>(edge.u) * d + k) = diff;
      a(row, static_cast<std::size_t>(edge.v) * d + k) = -diff;
    }
    ++row;
  }
  return a;
}

template <typename T>
std::vector<std::vector<T>> trivial_motions(const Embedding<T>& e) {
  const int d = e.dim;
  const int n = e.size();
  std::vector<std::vector<T>> motions;
  for (int k = 0; k < d; ++k) {
    std::vector<T> v(static_cast<std::size_t>(d) * n, T(0));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * d + k] = T(1);
    motions.push_back(std::move(v));
  }
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      std::vector<T> v(static_cast<std::size_t>(d) * n, T(0));
      for (int i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i) * d + k] = -e.at(i, l);
        v[static_cast<std::size_t>(i) * d + l] = e.at(i, k);
      }
      motions.push_back(std::move(v));
    }
  }
  return motions;
}

template Matrix<Rational> rigidity_matrix(const Graph&, const Embedding<Rational>&);
template Matrix<double> rigidity_matrix(const Graph&, const Embedding<double>&);
template std::vector<std::vector<Rational>> trivial_motions(const Embedding<Rational>&);
template std::vector<std::vector<double>> trivial_motions(const Embedding<double>&);

namespace {

long long expected_rank(const Graph& g, int d) {
  if (g.vertex_count() < d + 1) {
    throw std::invalid_argument("infinitesimal rigidity needs at least d+1 vertices");
  }
  return minimal_edge_count(g.vertex_count(), d);
}

}  // namespace

bool infinitesimally_rigid(const Graph& g, const Embedding<Rational>& e) {
  const long long target = expected_rank(g, e.dim);
  return static_cast<long long>(exact_rank(rigidity_matrix(g, e))) == target;
}

bool infinitesimally_rigid(const Graph& g, const Embedding<double>& e) {
  const long long target = expected_rank(g, e.dim);
  return static_cast<long long>(floating_rank(rigidity_matrix(g, e))) == target;
}

Embedding<Rational> random_rational_embedding(int n, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-1'000'000, 1'000'000);
  std::uniform_int_distribution<long> den(1, 1'000);
  Embedding<Rational> e(dim, n);
  for (auto& c : e.coords) {
    c = Rational(num(rng), den(rng));
    c.canonicalize();
  }
  return e;
}

bool generically_rigid(const Graph& g, int d, std::uint64_t seed) {
  if (g.vertex_count() < d + 1) return false;
  return infinitesimally_rigid(g, random_rational_embedding(g.vertex_count(), d, seed));
}

std::size_t generic_rank(const Graph& g, int d, std::uint64_t seed) {
  return exact_rank(rigidity_matrix(g, random_rational_embedding(g.vertex_count(), d, seed)));
}

Matrix<Rational> cayley_matrix(const Embedding<Rational>& e) {
  const int n = e.size();
  Matrix<Rational> x(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) {
    x(0, i) = 1;
    x(i, 0) = 1;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Rational sq = 0;
      for (int k = 0; k < e.dim; ++k) {
        const Rational diff = e.at(i, k) - e.at(j, k);
        sq += diff * diff;
      }
      x(i + 1, j + 1) = sq;
      x(j + 1, i + 1) = sq;
    }
  }
  return x;
}

Matrix<Rational> gram_from_cayley(const Matrix<Rational>& cayley) {
  // Cayley entry (i+1, j+1) holds |p_i - p_j|^2; Gram coordinates are taken
  // about p_0: y_ij = (x_0i + x_0j - x_ij) / 2 for i, j >= 1.
  const std::size_t n = cayley.rows() - 1;
  Matrix<Rational> y(n - 1, n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) {
      y(i - 1, j - 1) = (cayley(1, i + 1) + cayley(1, j + 1) - cayley(i + 1, j + 1)) / 2;
    }
  }
  return y;
}

CayleyMengerRank cayley_menger_rank_check(const Embedding<Rational>& e) {
  if (e.size() < 2) throw std::invalid_argument("Cayley-Menger check needs n >= 2");
  const Matrix<Rational> x = cayley_matrix(e);
  CayleyMengerRank out;
  out.rank_x = exact_rank(x);
  out.rank_y = exact_rank(gram_from_cayley(x));
  out.ok = out.rank_x == out.rank_y + 2 &&
           out.rank_x <= static_cast<std::size_t>(e.dim) + 2;
  return out;
}

}  // namespace rigidlab
