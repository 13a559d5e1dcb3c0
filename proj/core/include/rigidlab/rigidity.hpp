#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rigidlab/graph.hpp"
#include "rigidlab/matrix.hpp"

namespace rigidlab {

/// n points in R^d, stored as a flat coordinate vector of length d*n.
template <typename T>
struct Embedding {
  int dim = 2;
  std::vector<T> coords;

  Embedding() = default;
  Embedding(int d, int n) : dim(d), coords(static_cast<std::size_t>(d) * n, T(0)) {}

  int size() const { return dim == 0 ? 0 : static_cast<int>(coords.size()) / dim; }
  T& at(int i, int k) { return coords[static_cast<std::size_t>(i) * dim + k]; }
  const T& at(int i, int k) const { return coords[static_cast<std::size_t>(i) * dim + k]; }
  std::span<const T> point(int i) const {
    return {coords.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
  }
};

/// m x dn matrix; the row of edge (i,j) carries p_i - p_j in block i and
/// p_j - p_i in block j. Rows follow g.edges() order.
template <typename T>
Matrix<T> rigidity_matrix(const Graph& g, const Embedding<T>& e);

/// Basis of the trivial infinitesimal motions at `e`: d translations
/// followed by one rotation per coordinate plane.
template <typename T>
std::vector<std::vector<T>> trivial_motions(const Embedding<T>& e);

/// rank(rigidity matrix) == dn - C(d+1,2). Exact elimination for rationals,
/// thresholded elimination for doubles. Throws if n < d+1.
bool infinitesimally_rigid(const Graph& g, const Embedding<Rational>& e);
bool infinitesimally_rigid(const Graph& g, const Embedding<double>& e);

/// Numerators uniform in [-10^6, 10^6], denominators uniform in [1, 10^3].
Embedding<Rational> random_rational_embedding(int n, int dim, std::uint64_t seed);

/// Infinitesimal rigidity at a seeded random rational embedding.
bool generically_rigid(const Graph& g, int d, std::uint64_t seed);

/// Generic rank of the rigidity matrix (exact, at one seeded random point).
std::size_t generic_rank(const Graph& g, int d, std::uint64_t seed);

struct CayleyMengerRank {
  std::size_t rank_x = 0;  // bordered squared-distance matrix
  std::size_t rank_y = 0;  // Gram matrix about point 0
  bool ok = false;         // rank_x == rank_y + 2 && rank_x <= d + 2
};

/// Builds the bordered (n+1)x(n+1) Cayley matrix of squared distances and the
/// (n-1)x(n-1) Gram matrix obtained from it by the cosine theorem, and
/// compares their exact ranks.
CayleyMengerRank cayley_menger_rank_check(const Embedding<Rational>& e);

Matrix<Rational> cayley_matrix(const Embedding<Rational>& e);
Matrix<Rational> gram_from_cayley(const Matrix<Rational>& cayley);

}  // namespace rigidlab
