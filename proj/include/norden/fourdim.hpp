#pragma once

#include "norden/scalars.hpp"

namespace norden {

/// The invariant (0,4) tensors built from g and J:
///   pi1(x,y,z,w) = g(y,z)g(x,w) - g(x,z)g(y,w)
///   pi2(x,y,z,w) = g(y,Jz)g(x,Jw) - g(x,Jz)g(y,Jw)
///   pi3(x,y,z,w) = -g(y,z)g(x,Jw) + g(x,z)g(y,Jw) - g(y,Jz)g(x,w) + g(x,Jz)g(y,w)
template <Field T>
struct PiBasis {
  FrameTensor<T> pi1;
  FrameTensor<T> pi2;
  FrameTensor<T> pi3;
  /// The decomposition of Kähler tensors into pi1-pi2 and pi3 is only
  /// complete in dimension 4; other dimensions get the tensors with this flag
  /// cleared.
  bool four_dimensional = false;

  [[nodiscard]] FrameTensor<T> pi12() const { return pi1 - pi2; }
};

template <Field T>
PiBasis<T> build_pi(const NordenStructure<T>& s);

template <Field T>
struct KahlerDecomposition {
  T nu{};       ///< tau(L)/8, coefficient of pi1 - pi2
  T nu_star{};  ///< tau*(L)/8, coefficient of pi3
  Residual<T> residual;  ///< L - nu (pi1 - pi2) - nu* pi3
};

/// Decomposes a 4-dimensional Kähler tensor. Throws DimensionNotFour or
/// NotKahlerTensor when the preconditions fail.
template <Field T>
KahlerDecomposition<T> decompose_kahler(const FrameTensor<T>& L, const NordenStructure<T>& s);

/// a (pi1 - pi2) + b pi3.
template <Field T>
FrameTensor<T> compose_kahler(const PiBasis<T>& pi, const T& a, const T& b);

/// Residual of H = (4tau(K) - tau(P))/16 (pi1 - pi2) + (4tau*(K) - tau*(P))/16 pi3.
template <Field T>
Residual<T> h_closed_form_residual(const FrameTensor<T>& H, const ScalarReport<T>& sc, const PiBasis<T>& pi);

}  // namespace norden
