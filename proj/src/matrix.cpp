#include "norden/matrix.hpp"

#include <utility>

namespace norden {

namespace {

template <Field T>
T entry_scale(const Matrix<T>& m) {
  T s = ScalarTraits<T>::zero();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      T a = ScalarTraits<T>::abs(m(i, j));
      if (s < a) s = a;
    }
  return s;
}

template <Field T>
bool negligible(const T& x, const T& scale) {
  if constexpr (ScalarTraits<T>::exact) {
    (void)scale;
    return ScalarTraits<T>::is_zero(x);
  } else {
    return ScalarTraits<T>::abs(x) <= kFloatTolerance * (1.0 + scale);
  }
}

}  // namespace

template <Field T>
std::vector<int> row_reduce(Matrix<T>& m) {
  const T scale = entry_scale(m);
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int best = -1;
    T best_abs = ScalarTraits<T>::zero();
    for (int r = row; r < m.rows(); ++r) {
      if (negligible(m(r, col), scale)) continue;
      T a = ScalarTraits<T>::abs(m(r, col));
      if constexpr (ScalarTraits<T>::exact) {
        best = r;
        break;
      } else if (best < 0 || best_abs < a) {
        best = r;
        best_abs = a;
      }
    }
    if (best < 0) {
      for (int r = row; r < m.rows(); ++r) m(r, col) = ScalarTraits<T>::zero();
      continue;
    }
    if (best != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(best, c), m(row, c));
    const T pivot = m(row, col);
    for (int c = col; c < m.cols(); ++c) m(row, c) /= pivot;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || ScalarTraits<T>::is_zero(m(r, col))) continue;
      const T factor = m(r, col);
      for (int c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <Field T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  const int n = m.rows();
  if (m.cols() != n) return std::nullopt;
  Matrix<T> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = ScalarTraits<T>::one();
  }
  const auto pivots = row_reduce(aug);
  if (static_cast<int>(pivots.size()) < n || pivots[static_cast<std::size_t>(n - 1)] != n - 1) return std::nullopt;
  Matrix<T> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <Field T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
  const auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  std::vector<std::vector<T>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<T> v(static_cast<std::size_t>(m.cols()), ScalarTraits<T>::zero());
    v[static_cast<std::size_t>(free)] = ScalarTraits<T>::one();
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      v[static_cast<std::size_t>(pivots[r])] = -m(static_cast<int>(r), free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

template <Field T>
Inertia inertia(Matrix<T> m) {
  const T scale = entry_scale(m);
  Inertia out;
  int n = m.rows();
  // Active block is rows/cols [k, n). Each step either eliminates with a
  // nonzero diagonal pivot or creates one by the congruence e_k += e_j.
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i) {
      if (!negligible(m(i, i), scale)) {
        piv = i;
        break;
      }
    }
    if (piv < 0) {
      int pi = -1, pj = -1;
      for (int i = k; i < n && pi < 0; ++i)
        for (int j = i + 1; j < n; ++j)
          if (!negligible(m(i, j), scale)) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) {
        out.zero += n - k;
        break;
      }
      // Row/column op: e_pi <- e_pi + e_pj gives diagonal 2 m(pi,pj) != 0.
      for (int c = k; c < n; ++c) m(pi, c) += m(pj, c);
      for (int r = k; r < n; ++r) m(r, pi) += m(r, pj);
      piv = pi;
    }
    if (piv != k) {
      for (int c = 0; c < n; ++c) std::swap(m(piv, c), m(k, c));
      for (int r = 0; r < n; ++r) std::swap(m(r, piv), m(r, k));
    }
    const T d = m(k, k);
    if (ScalarTraits<T>::zero() < d) {
      ++out.positive;
    } else {
      ++out.negative;
    }
    for (int r = k + 1; r < n; ++r) {
      if (ScalarTraits<T>::is_zero(m(r, k))) continue;
      const T factor = m(r, k) / d;
      for (int c = k; c < n; ++c) m(r, c) -= factor * m(k, c);
    }
    for (int c = k + 1; c < n; ++c) m(k, c) = ScalarTraits<T>::zero();
    for (int r = k + 1; r < n; ++r) m(r, k) = ScalarTraits<T>::zero();
  }
  return out;
}

template std::vector<int> row_reduce(Matrix<Rational>&);
template std::vector<int> row_reduce(Matrix<double>&);
template std::optional<Matrix<Rational>> inverse(const Matrix<Rational>&);
template std::optional<Matrix<double>> inverse(const Matrix<double>&);
template std::vector<std::vector<Rational>> nullspace(Matrix<Rational>);
template std::vector<std::vector<double>> nullspace(Matrix<double>);
template Inertia inertia(Matrix<Rational>);
template Inertia inertia(Matrix<double>);

}  // namespace norden
