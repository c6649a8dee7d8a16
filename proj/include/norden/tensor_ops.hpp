#pragma once

#include <array>
#include <optional>
#include <vector>

#include "norden/frame_tensor.hpp"
#include "norden/matrix.hpp"

namespace norden {

/// g, its inverse g^{ij}, and (once J is attached) the associated metric
/// g~(x,y) = g(x,Jy).
template <Field T>
class MetricPair {
 public:
  MetricPair() = default;

  /// Builds the pair from a symmetric (0,2) tensor. Throws ValidationError
  /// (DegenerateMetric) if g is singular.
  explicit MetricPair(FrameTensor<T> g);

  void attach_complex_structure(const FrameTensor<T>& J);

  [[nodiscard]] const FrameTensor<T>& g() const { return g_; }
  [[nodiscard]] const FrameTensor<T>& g_inv() const { return g_inv_; }
  [[nodiscard]] const std::optional<FrameTensor<T>>& g_tilde() const { return g_tilde_; }
  [[nodiscard]] int dim() const { return g_.dim(); }

 private:
  FrameTensor<T> g_;
  FrameTensor<T> g_inv_;
  std::optional<FrameTensor<T>> g_tilde_;
};

enum class IndexDirection { Up, Down };

/// Contracts two axes. One up and one down is a plain trace; two covariant
/// axes contract through g^{ij}; two contravariant axes through g_{ij}.
template <Field T>
FrameTensor<T> contract(const FrameTensor<T>& t, int axis_a, int axis_b, const MetricPair<T>& metric);

/// Plain trace over one contravariant and one covariant axis.
template <Field T>
FrameTensor<T> trace(const FrameTensor<T>& t, int axis_a, int axis_b);

/// t(x,y,z,..) + t(y,z,x,..) + t(z,x,y,..) where x,y,z sit at the three given
/// axes (which must share variance); other axes are held fixed.
template <Field T>
FrameTensor<T> cyclic_sum(const FrameTensor<T>& t, std::array<int, 3> axes);

/// Lowers a contravariant axis with g or raises a covariant one with g^{ij}.
/// A lowered axis becomes the last covariant axis; a raised axis becomes the
/// last contravariant axis, so lowering then raising restores the layout of a
/// (1,s) tensor.
template <Field T>
FrameTensor<T> raise_lower(const FrameTensor<T>& t, int axis, IndexDirection direction, const MetricPair<T>& metric);

/// Substitutes E e_k into the covariant slot `axis`:
/// result(.., e_k, ..) = E^a_k t(.., e_a, ..).
template <Field T>
FrameTensor<T> apply_endomorphism(const FrameTensor<T>& t, int axis, const FrameTensor<T>& E);

/// Reorders the slots of a covariant tensor:
/// result(x_0, .., x_{s-1}) = t(x_{perm[0]}, .., x_{perm[s-1]}).
template <Field T>
FrameTensor<T> permute_slots(const FrameTensor<T>& t, const std::vector<int>& perm);

/// Composition of (1,1) tensors: (A B)^i_j = A^i_k B^k_j.
template <Field T>
FrameTensor<T> compose(const FrameTensor<T>& A, const FrameTensor<T>& B);

template <Field T>
Matrix<T> to_matrix(const FrameTensor<T>& t);

template <Field T>
FrameTensor<T> from_matrix(const Matrix<T>& m, int con_rank, int cov_rank);

}  // namespace norden
