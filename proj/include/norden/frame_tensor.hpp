#pragma once

#include <array>
#include <cassert>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "norden/errors.hpp"
#include "norden/scalar.hpp"

namespace norden {

/// Largest frame dimension accepted anywhere in the library.
inline constexpr int kMaxDim = 12;

/// Visits every multi-index of `rank` indices over 0..dim-1 in row-major order
/// (last index fastest). `fn` receives a std::span<const int>.
template <typename Fn>
void for_each_multi_index(int dim, int rank, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(rank), 0);
  if (dim <= 0 && rank > 0) return;
  while (true) {
    fn(std::span<const int>(idx));
    int p = rank - 1;
    while (p >= 0 && ++idx[static_cast<std::size_t>(p)] == dim) {
      idx[static_cast<std::size_t>(p)] = 0;
      --p;
    }
    if (p < 0) return;
  }
}

/// Dense tensor over a dim-dimensional frame with con_rank upper and cov_rank
/// lower indices. Entries are stored row-major with the contravariant axes
/// first: t(a_1..a_r, b_1..b_s) with axis 0 slowest.
template <Field T>
class FrameTensor {
 public:
  FrameTensor() = default;

  FrameTensor(int dim, int con_rank, int cov_rank) : dim_(dim), con_rank_(con_rank), cov_rank_(cov_rank) {
    if (dim <= 0 || dim > kMaxDim) throw TensorError("frame dimension out of range");
    if (con_rank < 0 || cov_rank < 0) throw TensorError("negative tensor rank");
    std::size_t n = 1;
    for (int a = 0; a < rank(); ++a) n *= static_cast<std::size_t>(dim);
    entries_.assign(n, ScalarTraits<T>::zero());
  }

  /// The (1,1) identity endomorphism.
  static FrameTensor identity(int dim) {
    FrameTensor id(dim, 1, 1);
    for (int i = 0; i < dim; ++i) id(i, i) = ScalarTraits<T>::one();
    return id;
  }

  /// Rank-0 tensor holding one value.
  static FrameTensor scalar(int dim, const T& value) {
    FrameTensor s(dim, 0, 0);
    s.entries_[0] = value;
    return s;
  }

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int con_rank() const { return con_rank_; }
  [[nodiscard]] int cov_rank() const { return cov_rank_; }
  [[nodiscard]] int rank() const { return con_rank_ + cov_rank_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool is_covariant_axis(int axis) const { return axis >= con_rank_; }

  [[nodiscard]] bool same_shape(const FrameTensor& o) const {
    return dim_ == o.dim_ && con_rank_ == o.con_rank_ && cov_rank_ == o.cov_rank_;
  }

  [[nodiscard]] std::size_t offset(std::span<const int> idx) const {
    assert(static_cast<int>(idx.size()) == rank());
    std::size_t off = 0;
    for (int v : idx) {
      assert(v >= 0 && v < dim_);
      off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(v);
    }
    return off;
  }

  T& at(std::span<const int> idx) { return entries_[offset(idx)]; }
  const T& at(std::span<const int> idx) const { return entries_[offset(idx)]; }

  template <std::integral... I>
  T& operator()(I... idx) {
    const std::array<int, sizeof...(I)> a{static_cast<int>(idx)...};
    return at(a);
  }

  template <std::integral... I>
  const T& operator()(I... idx) const {
    const std::array<int, sizeof...(I)> a{static_cast<int>(idx)...};
    return at(a);
  }

  [[nodiscard]] std::span<T> entries() { return entries_; }
  [[nodiscard]] std::span<const T> entries() const { return entries_; }

  /// Value of a rank-0 tensor.
  [[nodiscard]] const T& value() const {
    if (rank() != 0) throw TensorError("value() on a tensor of nonzero rank");
    return entries_[0];
  }

  FrameTensor& operator+=(const FrameTensor& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
  }

  FrameTensor& operator-=(const FrameTensor& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
  }

  FrameTensor& operator*=(const T& s) {
    for (T& e : entries_) e *= s;
    return *this;
  }

  friend FrameTensor operator+(FrameTensor a, const FrameTensor& b) { return a += b; }
  friend FrameTensor operator-(FrameTensor a, const FrameTensor& b) { return a -= b; }
  friend FrameTensor operator*(FrameTensor a, const T& s) { return a *= s; }
  friend FrameTensor operator*(const T& s, FrameTensor a) { return a *= s; }
  friend FrameTensor operator-(FrameTensor a) { return a *= T(-1); }

  friend bool operator==(const FrameTensor& a, const FrameTensor& b) {
    return a.same_shape(b) && a.entries_ == b.entries_;
  }

 private:
  void require_same_shape(const FrameTensor& o) const {
    if (!same_shape(o)) throw TensorError("tensor shape mismatch");
  }

  int dim_ = 0;
  int con_rank_ = 0;
  int cov_rank_ = 0;
  std::vector<T> entries_;
};

template <Field T>
T max_abs(const FrameTensor<T>& t) {
  T m = ScalarTraits<T>::zero();
  for (const T& e : t.entries()) {
    T a = ScalarTraits<T>::abs(e);
    if (m < a) m = a;
  }
  return m;
}

template <Field T>
bool all_finite(const FrameTensor<T>& t) {
  for (const T& e : t.entries()) {
    if (!ScalarTraits<T>::is_finite(e)) return false;
  }
  return true;
}

/// Residual of an identity `diff == 0`, scaled by the inputs it came from.
template <Field T>
Residual<T> residual_of(const FrameTensor<T>& diff, std::initializer_list<const FrameTensor<T>*> inputs) {
  Residual<T> r;
  r.value = max_abs(diff);
  for (const FrameTensor<T>* in : inputs) {
    T m = max_abs(*in);
    if (r.scale < m) r.scale = m;
  }
  return r;
}

/// Converts an exact tensor to another field.
template <Field To>
FrameTensor<To> convert_tensor(const FrameTensor<Rational>& t) {
  FrameTensor<To> out(t.dim(), t.con_rank(), t.cov_rank());
  auto src = t.entries();
  auto dst = out.entries();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = ScalarTraits<To>::from_rational(src[k]);
  return out;
}

}  // namespace norden
