#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rigidlab {

using Rational = mpq_class;

/// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// Matrix-vector product.
  std::vector<T> apply(const std::vector<T>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix/vector size mismatch");
    std::vector<T> y(rows_, T(0));
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
    }
    return y;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

enum class RankMode { exact, floating };

/// Default relative pivot threshold for floating-point rank.
inline constexpr double kFloatingRankTolerance = 1e-8;

/// Rank by fraction-exact Gaussian elimination.
std::size_t exact_rank(Matrix<Rational> m);

/// Rank by Gaussian elimination with partial pivoting; a pivot counts only
/// if its magnitude exceeds `tau` times the largest absolute entry.
std::size_t floating_rank(Matrix<double> m, double tau = kFloatingRankTolerance);

std::size_t matrix_rank(const Matrix<Rational>& m, RankMode mode);
std::size_t matrix_rank(const Matrix<double>& m);

Matrix<double> to_double(const Matrix<Rational>& m);

}  // namespace rigidlab
