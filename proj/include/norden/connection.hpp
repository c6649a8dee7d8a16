#pragma once

#include "norden/structure.hpp"

namespace norden {

enum class ConnectionFlavor { LeviCivita, BConnection, Generic };

/// Christoffel symbols in the frame: gamma(k, i, j) = Γ^k_ij, i.e.
/// ∇_{e_i} e_j = Γ^k_ij e_k. Left-invariant data, so the symbols are constants.
template <Field T>
struct ConnectionCoeffs {
  FrameTensor<T> gamma;
  ConnectionFlavor flavor = ConnectionFlavor::Generic;
};

/// F(x,y,z) = g((∇_x J)y, z) as a (0,3) tensor F(i, j, k).
template <Field T>
struct FundamentalTensor {
  FrameTensor<T> F;
};

template <Field T>
struct ClassFlags {
  bool is_W0 = false;
  bool is_W3 = false;
  Residual<T> w0;  ///< max |F|
  Residual<T> w3;  ///< max |S F|
};

/// Levi-Civita connection of a left-invariant metric from the Koszul formula
/// 2g(∇_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y).
template <Field T>
ConnectionCoeffs<T> levi_civita(const NordenStructure<T>& s);

/// T(x,y) = ∇_x y - ∇_y x - [x,y] must vanish.
template <Field T>
Residual<T> torsion_free_residual(const ConnectionCoeffs<T>& conn, const FrameTensor<T>& C);

/// (∇_x g)(y,z) = -g(∇_x y, z) - g(y, ∇_x z) must vanish.
template <Field T>
Residual<T> metric_compatibility_residual(const ConnectionCoeffs<T>& conn, const FrameTensor<T>& g);

/// Covariant derivative of J: result(b, i, j) is the e_b component of
/// (∇_{e_i} J) e_j = ∇_{e_i}(J e_j) - J(∇_{e_i} e_j).
template <Field T>
FrameTensor<T> derivative_of_J(const ConnectionCoeffs<T>& conn, const FrameTensor<T>& J);

template <Field T>
Residual<T> j_parallel_residual(const ConnectionCoeffs<T>& conn, const FrameTensor<T>& J);

template <Field T>
FundamentalTensor<T> fundamental_tensor(const NordenStructure<T>& s, const ConnectionCoeffs<T>& nabla);

/// Residual of F(x,y,z) = F(x,z,y) = F(x,Jy,Jz).
template <Field T>
Residual<T> f_symmetry_residual(const NordenStructure<T>& s, const FundamentalTensor<T>& F);

/// W0: F = 0. W3: cyclic sum of F over its three slots vanishes.
template <Field T>
ClassFlags<T> classify(const NordenStructure<T>& s, const FundamentalTensor<T>& F);

/// D_x y = ∇_x y + 1/2 (∇_x J) J y. Throws NaturalityViolation when Dg or DJ
/// fails to vanish.
template <Field T>
ConnectionCoeffs<T> b_connection(const NordenStructure<T>& s, const ConnectionCoeffs<T>& nabla);

/// max of the Dg and DJ residuals.
template <Field T>
Residual<T> naturality_residual(const NordenStructure<T>& s, const ConnectionCoeffs<T>& D);

/// Q(y,z,w) = 1/2 F(y,Jz,w).
template <Field T>
FrameTensor<T> q_tensor(const NordenStructure<T>& s, const FundamentalTensor<T>& F);

/// Q(y,z,w) = g(Q(y,z), w) with the vector-valued Q(y,z) = 1/2 (∇_y J) J z.
template <Field T>
FrameTensor<T> q_tensor_from_derivative(const NordenStructure<T>& s, const ConnectionCoeffs<T>& nabla);

/// Q(y,z,w) + Q(y,w,z).
template <Field T>
Residual<T> q_antisymmetry_residual(const FrameTensor<T>& Q);

/// T(x,y,z) = g(D_x y - D_y x - [x,y], z).
template <Field T>
FrameTensor<T> torsion(const NordenStructure<T>& s, const ConnectionCoeffs<T>& D);

/// T(x,y,Jz) - 1/2 (F(x,y,z) - F(y,x,z)).
template <Field T>
Residual<T> torsion_identity_residual(const NordenStructure<T>& s, const FrameTensor<T>& T_xyz,
                                      const FundamentalTensor<T>& F);

/// Cyclic sum over x,y,z of T(x,y,Jz).
template <Field T>
Residual<T> torsion_cyclic_residual(const FrameTensor<T>& T_xyz, const FrameTensor<T>& J);

}  // namespace norden
