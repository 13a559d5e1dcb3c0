#include "rigidlab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace rigidlab {

std::size_t exact_rank(Matrix<Rational> m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (sgn(m(r, c)) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t k = c; k < cols; ++k) std::swap(m(pivot, k), m(rank, k));
    }
    const Rational inv = 1 / m(rank, c);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (sgn(m(r, c)) == 0) continue;
      const Rational factor = m(r, c) * inv;
      for (std::size_t k = c; k < cols; ++k) m(r, k) -= factor * m(rank, k);
    }
    ++rank;
  }
  return rank;
}

std::size_t floating_rank(Matrix<double> m, double tau) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  double scale = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) scale = std::max(scale, std::abs(m(r, c)));
  }
  if (scale == 0.0) return 0;
  const double threshold = tau * scale;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (std::abs(m(r, c)) > std::abs(m(pivot, c))) pivot = r;
    }
    if (std::abs(m(pivot, c)) <= threshold) continue;
    if (pivot != rank) {
      for (std::size_t k = c; k < cols; ++k) std::swap(m(pivot, k), m(rank, k));
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const double factor = m(r, c) / m(rank, c);
      if (factor == 0.0) continue;
      for (std::size_t k = c; k < cols; ++k) m(r, k) -= factor * m(rank, k);
    }
    ++rank;
  }
  return rank;
}

Matrix<double> to_double(const Matrix<Rational>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_d();
  }
  return out;
}

std::size_t matrix_rank(const Matrix<Rational>& m, RankMode mode) {
  return mode == RankMode::exact ? exact_rank(m) : floating_rank(to_double(m));
}

std::size_t matrix_rank(const Matrix<double>& m) { return floating_rank(m); }

}  // namespace rigidlab
