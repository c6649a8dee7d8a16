#pragma once

#include <optional>
#include <vector>

#include "norden/scalar.hpp"

namespace norden {

/// Small dense row-major matrix used for the exact linear algebra behind
/// metric inversion, signature detection and nullspace computation.
template <Field T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), ScalarTraits<T>::zero()) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = ScalarTraits<T>::one();
    return m;
  }

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }

  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (ScalarTraits<T>::is_zero(a(i, k))) continue;
        for (int j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  [[nodiscard]] Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

/// Reduced row echelon form in place. Returns the pivot columns. Float mode
/// treats |x| <= tol * (1 + max|entry|) as zero.
template <Field T>
std::vector<int> row_reduce(Matrix<T>& m);

template <Field T>
int rank(Matrix<T> m) {
  return static_cast<int>(row_reduce(m).size());
}

/// Inverse of a square matrix, or nullopt when singular.
template <Field T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m);

/// Basis of {x : m x = 0}, one vector per free column, normalized so the free
/// coordinate equals 1.
template <Field T>
std::vector<std::vector<T>> nullspace(Matrix<T> m);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Sylvester inertia of a symmetric matrix by congruence elimination with
/// pivoting (no eigenvalues).
template <Field T>
Inertia inertia(Matrix<T> m);

}  // namespace norden
