#pragma once

#include "norden/connection.hpp"

namespace norden {

// Every (0,4) curvature-type tensor L here uses slots L(x, y, z, w) in that
// order: L(x,y,z,w) = g(L(x,y)z, w).

/// Curvature of a connection on left-invariant data, lowered with g:
/// R(e_i,e_j)e_k = (Γ^l_im Γ^m_jk - Γ^l_jm Γ^m_ik - C^m_ij Γ^l_mk) e_l.
template <Field T>
FrameTensor<T> curvature_of(const ConnectionCoeffs<T>& conn, const FrameTensor<T>& C, const MetricPair<T>& metric);

/// (∇_x F)(y,z,w) as a (0,4) tensor in slots (x, y, z, w).
template <Field T>
FrameTensor<T> nabla_F(const ConnectionCoeffs<T>& nabla, const FundamentalTensor<T>& F);

/// (∇_x F)(y,z,w) - (∇_y F)(x,z,w) - R(x,y,Jz,w) + R(x,y,z,Jw).
template <Field T>
Residual<T> ricci_identity_residual(const FrameTensor<T>& nablaF, const FrameTensor<T>& R, const FrameTensor<T>& J);

/// G(x,y,z,w) = g((∇_x J)z, (∇_y J)w), the Gram tensor of ∇J.
template <Field T>
FrameTensor<T> nabla_J_gram(const NordenStructure<T>& s, const FrameTensor<T>& dJ);

/// P(x,y,z,w) = g((∇_x J)z, (∇_y J)w) - g((∇_y J)z, (∇_x J)w).
template <Field T>
FrameTensor<T> p_tensor(const NordenStructure<T>& s, const ConnectionCoeffs<T>& nabla);

/// L(x,y,Jz,Jw).
template <Field T>
FrameTensor<T> twist_last_pair(const FrameTensor<T>& L, const FrameTensor<T>& J);

/// 1/4 {2R(x,y,z,w) - 2R(x,y,Jz,Jw) + P(x,y,z,w)}: the B-connection curvature
/// on a quasi-Kähler structure.
template <Field T>
FrameTensor<T> k_via_formula(const FrameTensor<T>& R, const FrameTensor<T>& P, const FrameTensor<T>& J);

/// H(x,y,z,w) = R(x,y,z,w) - R(x,y,Jz,Jw).
template <Field T>
FrameTensor<T> h_tensor(const FrameTensor<T>& R, const FrameTensor<T>& J);

template <Field T>
struct CurvatureLikeResidual {
  Residual<T> antisym;  ///< both pair antisymmetries
  Residual<T> bianchi;  ///< cyclic sum over the first three slots

  [[nodiscard]] bool passes() const { return antisym.vanishes() && bianchi.vanishes(); }
};

template <Field T>
CurvatureLikeResidual<T> curvature_like_check(const FrameTensor<T>& L);

/// L(x,y,Jz,Jw) + L(x,y,z,w).
template <Field T>
Residual<T> kahler_residual(const FrameTensor<T>& L, const FrameTensor<T>& J);

/// Curvature-like and satisfying the J-invariance of the last pair.
template <Field T>
bool is_kahler_tensor(const FrameTensor<T>& L, const FrameTensor<T>& J);

/// Cyclic sum over x,y,z of R(x,y,Jz,Jw).
template <Field T>
Residual<T> l2_residual(const FrameTensor<T>& R, const FrameTensor<T>& J);

/// Throws BiconditionalViolation unless both residuals vanish or neither
/// does. In float mode two nonvanishing residuals must also agree within two
/// orders of magnitude.
template <Field T>
void require_biconditional(const Residual<T>& a, const Residual<T>& b, const std::string& what);

template <Field T>
struct BiconditionalResult {
  Residual<T> left;
  Residual<T> right;
  bool holds = false;  ///< both sides vanish
};

/// K is Kählerian iff 2 S R(x,y,Jz,Jw) = S P(x,y,z,w). left: residual of that
/// equation; right: first-Bianchi residual of K.
template <Field T>
BiconditionalResult<T> thm23_check(const FrameTensor<T>& R, const FrameTensor<T>& P, const FrameTensor<T>& J,
                                   const FrameTensor<T>& K);

/// Under the L2 condition: K is Kählerian iff P is. left: Bianchi(K),
/// right: Bianchi(P).
template <Field T>
BiconditionalResult<T> thm24_check(const FrameTensor<T>& P, const FrameTensor<T>& K);

template <Field T>
struct CurvatureBundle {
  FrameTensor<T> R;
  FrameTensor<T> K_direct;
  FrameTensor<T> K_formula;
  FrameTensor<T> P;
  FrameTensor<T> H;
  FrameTensor<T> nabla_F;
};

template <Field T>
CurvatureBundle<T> curvature_bundle(const NordenStructure<T>& s, const ConnectionCoeffs<T>& nabla,
                                    const ConnectionCoeffs<T>& D, const FundamentalTensor<T>& F);

}  // namespace norden
