#include "norden/tensor_ops.hpp"

#include <algorithm>
#include <numeric>

namespace norden {

namespace {

void require_axis(const char* what, int axis, int rank) {
  if (axis < 0 || axis >= rank) throw TensorError(std::string(what) + ": axis out of range");
}

}  // namespace

template <Field T>
MetricPair<T>::MetricPair(FrameTensor<T> g) : g_(std::move(g)) {
  if (g_.con_rank() != 0 || g_.cov_rank() != 2) throw TensorError("metric must be a (0,2) tensor");
  auto inv = inverse(to_matrix(g_));
  if (!inv) throw ValidationError(ValidationCode::DegenerateMetric, {}, "g is singular");
  g_inv_ = from_matrix(*inv, 2, 0);
}

template <Field T>
void MetricPair<T>::attach_complex_structure(const FrameTensor<T>& J) {
  const int n = dim();
  FrameTensor<T> gt(n, 0, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T s = ScalarTraits<T>::zero();
      for (int k = 0; k < n; ++k) s += g_(i, k) * J(k, j);
      gt(i, j) = s;
    }
  g_tilde_ = std::move(gt);
}

namespace {

/// Sums weight(p, q) * t(.., p at axis_a, .., q at axis_b, ..).
template <Field T, typename Weight>
FrameTensor<T> contract_with(const FrameTensor<T>& t, int axis_a, int axis_b, Weight&& weight) {
  const int rank = t.rank();
  const int removed_cov = int(t.is_covariant_axis(axis_a)) + int(t.is_covariant_axis(axis_b));
  const int n = t.dim();
  FrameTensor<T> out(n, t.con_rank() - (2 - removed_cov), t.cov_rank() - removed_cov);

  std::vector<int> src(static_cast<std::size_t>(rank));
  for_each_multi_index(n, out.rank(), [&](std::span<const int> idx) {
    int k = 0;
    for (int a = 0; a < rank; ++a) {
      if (a != axis_a && a != axis_b) src[static_cast<std::size_t>(a)] = idx[static_cast<std::size_t>(k++)];
    }
    T sum = ScalarTraits<T>::zero();
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const T w = weight(p, q);
        if (ScalarTraits<T>::is_zero(w)) continue;
        src[static_cast<std::size_t>(axis_a)] = p;
        src[static_cast<std::size_t>(axis_b)] = q;
        sum += w * t.at(src);
      }
    out.at(idx) = sum;
  });
  return out;
}

void require_pair(const char* what, int axis_a, int axis_b, int rank) {
  if (rank < 2) throw TensorError(std::string(what) + ": rank underflow");
  require_axis(what, axis_a, rank);
  require_axis(what, axis_b, rank);
  if (axis_a == axis_b) throw TensorError(std::string(what) + ": axes must differ");
}

}  // namespace

template <Field T>
FrameTensor<T> contract(const FrameTensor<T>& t, int axis_a, int axis_b, const MetricPair<T>& metric) {
  require_pair("contract", axis_a, axis_b, t.rank());
  if (metric.dim() != t.dim()) throw TensorError("contract: metric dimension mismatch");
  const bool cov_a = t.is_covariant_axis(axis_a);
  const bool cov_b = t.is_covariant_axis(axis_b);
  if (cov_a != cov_b) return trace(t, axis_a, axis_b);
  const FrameTensor<T>& w = cov_a ? metric.g_inv() : metric.g();
  return contract_with(t, axis_a, axis_b, [&](int p, int q) { return w(p, q); });
}

template <Field T>
FrameTensor<T> trace(const FrameTensor<T>& t, int axis_a, int axis_b) {
  require_pair("trace", axis_a, axis_b, t.rank());
  if (t.is_covariant_axis(axis_a) == t.is_covariant_axis(axis_b))
    throw TensorError("trace: needs one contravariant and one covariant axis");
  return contract_with(t, axis_a, axis_b,
                       [](int p, int q) { return p == q ? ScalarTraits<T>::one() : ScalarTraits<T>::zero(); });
}

template <Field T>
FrameTensor<T> cyclic_sum(const FrameTensor<T>& t, std::array<int, 3> axes) {
  const int rank = t.rank();
  if (rank < 3) throw TensorError("cyclic_sum: rank underflow");
  for (int a : axes) require_axis("cyclic_sum", a, rank);
  if (axes[0] == axes[1] || axes[1] == axes[2] || axes[0] == axes[2])
    throw TensorError("cyclic_sum: axes must be distinct");
  if (t.is_covariant_axis(axes[0]) != t.is_covariant_axis(axes[1]) ||
      t.is_covariant_axis(axes[1]) != t.is_covariant_axis(axes[2]))
    throw TensorError("cyclic_sum: axes must share variance");

  FrameTensor<T> out(t.dim(), t.con_rank(), t.cov_rank());
  std::vector<int> src(static_cast<std::size_t>(rank));
  const auto [a, b, c] = axes;
  for_each_multi_index(t.dim(), rank, [&](std::span<const int> idx) {
    std::copy(idx.begin(), idx.end(), src.begin());
    const int x = idx[a], y = idx[b], z = idx[c];
    T sum = t.at(idx);
    src[a] = y, src[b] = z, src[c] = x;
    sum += t.at(src);
    src[a] = z, src[b] = x, src[c] = y;
    sum += t.at(src);
    out.at(idx) = sum;
  });
  return out;
}

template <Field T>
FrameTensor<T> raise_lower(const FrameTensor<T>& t, int axis, IndexDirection direction, const MetricPair<T>& metric) {
  const int rank = t.rank();
  require_axis("raise_lower", axis, rank);
  if (metric.dim() != t.dim()) throw TensorError("raise_lower: metric dimension mismatch");
  const bool lowering = direction == IndexDirection::Down;
  if (lowering == t.is_covariant_axis(axis))
    throw TensorError(lowering ? "raise_lower: axis is already covariant" : "raise_lower: axis is already contravariant");

  const int n = t.dim();
  FrameTensor<T> out(n, t.con_rank() + (lowering ? -1 : 1), t.cov_rank() + (lowering ? 1 : -1));
  // Position of the moved axis in the output layout.
  const int new_pos = lowering ? rank - 1 : t.con_rank();

  std::vector<int> src(static_cast<std::size_t>(rank));
  for_each_multi_index(n, rank, [&](std::span<const int> idx) {
    int k = 0;
    for (int a = 0; a < rank; ++a) {
      if (a == axis) continue;
      if (k == new_pos) ++k;
      src[static_cast<std::size_t>(a)] = idx[static_cast<std::size_t>(k++)];
    }
    const int w = idx[static_cast<std::size_t>(new_pos)];
    T sum = ScalarTraits<T>::zero();
    for (int l = 0; l < n; ++l) {
      const T& m = lowering ? metric.g()(l, w) : metric.g_inv()(w, l);
      if (ScalarTraits<T>::is_zero(m)) continue;
      src[static_cast<std::size_t>(axis)] = l;
      sum += m * t.at(src);
    }
    out.at(idx) = sum;
  });
  return out;
}

template <Field T>
FrameTensor<T> apply_endomorphism(const FrameTensor<T>& t, int axis, const FrameTensor<T>& E) {
  require_axis("apply_endomorphism", axis, t.rank());
  if (!t.is_covariant_axis(axis)) throw TensorError("apply_endomorphism: axis must be covariant");
  if (E.con_rank() != 1 || E.cov_rank() != 1 || E.dim() != t.dim())
    throw TensorError("apply_endomorphism: expected a (1,1) tensor of matching dimension");

  const int n = t.dim();
  FrameTensor<T> out(n, t.con_rank(), t.cov_rank());
  std::vector<int> src(static_cast<std::size_t>(t.rank()));
  for_each_multi_index(n, t.rank(), [&](std::span<const int> idx) {
    std::copy(idx.begin(), idx.end(), src.begin());
    const int k = idx[static_cast<std::size_t>(axis)];
    T sum = ScalarTraits<T>::zero();
    for (int a = 0; a < n; ++a) {
      if (ScalarTraits<T>::is_zero(E(a, k))) continue;
      src[static_cast<std::size_t>(axis)] = a;
      sum += E(a, k) * t.at(src);
    }
    out.at(idx) = sum;
  });
  return out;
}

template <Field T>
FrameTensor<T> permute_slots(const FrameTensor<T>& t, const std::vector<int>& perm) {
  if (t.con_rank() != 0) throw TensorError("permute_slots: tensor must be covariant");
  const int rank = t.rank();
  if (static_cast<int>(perm.size()) != rank) throw TensorError("permute_slots: permutation size mismatch");
  std::vector<int> check(perm);
  std::sort(check.begin(), check.end());
  for (int a = 0; a < rank; ++a)
    if (check[static_cast<std::size_t>(a)] != a) throw TensorError("permute_slots: not a permutation");

  FrameTensor<T> out(t.dim(), 0, rank);
  std::vector<int> src(static_cast<std::size_t>(rank));
  for_each_multi_index(t.dim(), rank, [&](std::span<const int> idx) {
    for (int a = 0; a < rank; ++a) src[static_cast<std::size_t>(a)] = idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])];
    out.at(idx) = t.at(src);
  });
  return out;
}

template <Field T>
FrameTensor<T> compose(const FrameTensor<T>& A, const FrameTensor<T>& B) {
  if (A.con_rank() != 1 || A.cov_rank() != 1 || !A.same_shape(B)) throw TensorError("compose: expected (1,1) tensors");
  const int n = A.dim();
  FrameTensor<T> out(n, 1, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T s = ScalarTraits<T>::zero();
      for (int k = 0; k < n; ++k) s += A(i, k) * B(k, j);
      out(i, j) = s;
    }
  return out;
}

template <Field T>
Matrix<T> to_matrix(const FrameTensor<T>& t) {
  if (t.rank() != 2) throw TensorError("to_matrix: rank must be 2");
  Matrix<T> m(t.dim(), t.dim());
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j) m(i, j) = t(i, j);
  return m;
}

template <Field T>
FrameTensor<T> from_matrix(const Matrix<T>& m, int con_rank, int cov_rank) {
  if (con_rank + cov_rank != 2 || m.rows() != m.cols()) throw TensorError("from_matrix: shape mismatch");
  FrameTensor<T> t(m.rows(), con_rank, cov_rank);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t(i, j) = m(i, j);
  return t;
}

#define NORDEN_INSTANTIATE(T)                                                                          \
  template class MetricPair<T>;                                                                        \
  template FrameTensor<T> contract(const FrameTensor<T>&, int, int, const MetricPair<T>&);            \
  template FrameTensor<T> trace(const FrameTensor<T>&, int, int);                                      \
  template FrameTensor<T> cyclic_sum(const FrameTensor<T>&, std::array<int, 3>);                       \
  template FrameTensor<T> raise_lower(const FrameTensor<T>&, int, IndexDirection, const MetricPair<T>&); \
  template FrameTensor<T> apply_endomorphism(const FrameTensor<T>&, int, const FrameTensor<T>&);       \
  template FrameTensor<T> permute_slots(const FrameTensor<T>&, const std::vector<int>&);               \
  template FrameTensor<T> compose(const FrameTensor<T>&, const FrameTensor<T>&);                       \
  template Matrix<T> to_matrix(const FrameTensor<T>&);                                                 \
  template FrameTensor<T> from_matrix(const Matrix<T>&, int, int);

NORDEN_INSTANTIATE(Rational)
NORDEN_INSTANTIATE(double)

#undef NORDEN_INSTANTIATE

}  // namespace norden
