#include "norden/connection.hpp"

namespace norden {

namespace {

/// Γ_ijl = g(∇_i e_j, e_l) = Γ^k_ij g_kl.
template <Field T>
FrameTensor<T> lowered_symbols(const FrameTensor<T>& gamma, const FrameTensor<T>& g) {
  const int n = g.dim();
  FrameTensor<T> out(n, 0, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        T s = ScalarTraits<T>::zero();
        for (int k = 0; k < n; ++k) s += gamma(k, i, j) * g(k, l);
        out(i, j, l) = s;
      }
  return out;
}

}  // namespace

template <Field T>
ConnectionCoeffs<T> levi_civita(const NordenStructure<T>& s) {
  const int n = s.dim();
  const auto& C = s.frame.C;
  const auto& g = s.g();
  const auto& gi = s.g_inv();

  // c(i,j,l) = g([e_i,e_j], e_l)
  FrameTensor<T> c(n, 0, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        T v = ScalarTraits<T>::zero();
        for (int k = 0; k < n; ++k) v += C(k, i, j) * g(k, l);
        c(i, j, l) = v;
      }

  const T half = T(1) / T(2);
  FrameTensor<T> low(n, 0, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) low(i, j, l) = half * (c(i, j, l) - c(j, l, i) + c(l, i, j));

  ConnectionCoeffs<T> out{FrameTensor<T>(n, 1, 2), ConnectionFlavor::LeviCivita};
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        T v = ScalarTraits<T>::zero();
        for (int l = 0; l < n; ++l) v += gi(k, l) * low(i, j, l);
        out.gamma(k, i, j) = v;
      }
  return out;
}

template <Field T>
Residual<T> torsion_free_residual(const ConnectionCoeffs<T>& conn, const FrameTensor<T>& C) {
  const auto& G = conn.gamma;
  FrameTensor<T> diff(G.dim(), 1, 2);
  for (int k = 0; k < G.dim(); ++k)
    for (int i = 0; i < G.dim(); ++i)
      for (int j = 0; j < G.dim(); ++j) diff(k, i, j) = G(k, i, j) - G(k, j, i) - C(k, i, j);
  return residual_of(diff, {&G, &C});
}

template <Field T>
Residual<T> metric_compatibility_residual(const ConnectionCoeffs<T>& conn, const FrameTensor<T>& g) {
  const auto low = lowered_symbols(conn.gamma, g);
  FrameTensor<T> diff(g.dim(), 0, 3);
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      for (int l = 0; l < g.dim(); ++l) diff(i, j, l) = low(i, j, l) + low(i, l, j);
  return residual_of(diff, {&low});
}

template <Field T>
FrameTensor<T> derivative_of_J(const ConnectionCoeffs<T>& conn, const FrameTensor<T>& J) {
  const auto& G = conn.gamma;
  const int n = J.dim();
  FrameTensor<T> out(n, 1, 2);
  for (int b = 0; b < n; ++b)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        T v = ScalarTraits<T>::zero();
        for (int a = 0; a < n; ++a) {
          v += G(b, i, a) * J(a, j);
          v -= J(b, a) * G(a, i, j);
        }
        out(b, i, j) = v;
      }
  return out;
}

template <Field T>
Residual<T> j_parallel_residual(const ConnectionCoeffs<T>& conn, const FrameTensor<T>& J) {
  const auto dJ = derivative_of_J(conn, J);
  return residual_of(dJ, {&conn.gamma, &J});
}

template <Field T>
FundamentalTensor<T> fundamental_tensor(const NordenStructure<T>& s, const ConnectionCoeffs<T>& nabla) {
  const auto dJ = derivative_of_J(nabla, s.J);
  const auto& g = s.g();
  const int n = s.dim();
  FundamentalTensor<T> out{FrameTensor<T>(n, 0, 3)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        T v = ScalarTraits<T>::zero();
        for (int b = 0; b < n; ++b) v += dJ(b, i, j) * g(b, k);
        out.F(i, j, k) = v;
      }
  return out;
}

template <Field T>
Residual<T> f_symmetry_residual(const NordenStructure<T>& s, const FundamentalTensor<T>& F) {
  const auto swapped = permute_slots(F.F, {0, 2, 1});
  const auto twisted = apply_endomorphism(apply_endomorphism(F.F, 1, s.J), 2, s.J);
  return residual_of(F.F - swapped, {&F.F}).merged(residual_of(F.F - twisted, {&F.F, &twisted}));
}

template <Field T>
ClassFlags<T> classify(const NordenStructure<T>& s, const FundamentalTensor<T>& F) {
  (void)s;
  ClassFlags<T> flags;
  flags.w0 = residual_of(F.F, {&F.F});
  flags.w3 = residual_of(cyclic_sum(F.F, {0, 1, 2}), {&F.F});
  flags.is_W0 = flags.w0.vanishes();
  flags.is_W3 = flags.w3.vanishes();
  return flags;
}

template <Field T>
ConnectionCoeffs<T> b_connection(const NordenStructure<T>& s, const ConnectionCoeffs<T>& nabla) {
  const auto dJ = derivative_of_J(nabla, s.J);
  const int n = s.dim();
  const T half = T(1) / T(2);
  ConnectionCoeffs<T> D{nabla.gamma, ConnectionFlavor::BConnection};
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        T v = ScalarTraits<T>::zero();
        for (int a = 0; a < n; ++a) v += dJ(k, i, a) * s.J(a, j);
        D.gamma(k, i, j) += half * v;
      }
  if (!naturality_residual(s, D).vanishes()) throw NaturalityViolation("B-connection does not preserve g and J");
  return D;
}

template <Field T>
Residual<T> naturality_residual(const NordenStructure<T>& s, const ConnectionCoeffs<T>& D) {
  return metric_compatibility_residual(D, s.g()).merged(j_parallel_residual(D, s.J));
}

template <Field T>
FrameTensor<T> q_tensor(const NordenStructure<T>& s, const FundamentalTensor<T>& F) {
  return apply_endomorphism(F.F, 1, s.J) * (T(1) / T(2));
}

template <Field T>
FrameTensor<T> q_tensor_from_derivative(const NordenStructure<T>& s, const ConnectionCoeffs<T>& nabla) {
  const auto dJ = derivative_of_J(nabla, s.J);
  const int n = s.dim();
  FrameTensor<T> q(n, 1, 2);  // q(b, y, z): e_b component of 1/2 (∇_y J) J z
  for (int b = 0; b < n; ++b)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        T v = ScalarTraits<T>::zero();
        for (int a = 0; a < n; ++a) v += dJ(b, y, a) * s.J(a, z);
        q(b, y, z) = v / T(2);
      }
  return raise_lower(q, 0, IndexDirection::Down, s.metric);
}

template <Field T>
Residual<T> q_antisymmetry_residual(const FrameTensor<T>& Q) {
  return residual_of(Q + permute_slots(Q, {0, 2, 1}), {&Q});
}

template <Field T>
FrameTensor<T> torsion(const NordenStructure<T>& s, const ConnectionCoeffs<T>& D) {
  const int n = s.dim();
  const auto& G = D.gamma;
  const auto& C = s.frame.C;
  FrameTensor<T> t(n, 1, 2);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(k, i, j) = G(k, i, j) - G(k, j, i) - C(k, i, j);
  return raise_lower(t, 0, IndexDirection::Down, s.metric);
}

template <Field T>
Residual<T> torsion_identity_residual(const NordenStructure<T>& s, const FrameTensor<T>& T_xyz,
                                      const FundamentalTensor<T>& F) {
  const auto lhs = apply_endomorphism(T_xyz, 2, s.J);
  const auto rhs = (F.F - permute_slots(F.F, {1, 0, 2})) * (T(1) / T(2));
  return residual_of(lhs - rhs, {&lhs, &rhs});
}

template <Field T>
Residual<T> torsion_cyclic_residual(const FrameTensor<T>& T_xyz, const FrameTensor<T>& J) {
  const auto tj = apply_endomorphism(T_xyz, 2, J);
  return residual_of(cyclic_sum(tj, {0, 1, 2}), {&tj});
}

#define NORDEN_INSTANTIATE(T)                                                                                  \
  template ConnectionCoeffs<T> levi_civita(const NordenStructure<T>&);                                        \
  template Residual<T> torsion_free_residual(const ConnectionCoeffs<T>&, const FrameTensor<T>&);              \
  template Residual<T> metric_compatibility_residual(const ConnectionCoeffs<T>&, const FrameTensor<T>&);      \
  template FrameTensor<T> derivative_of_J(const ConnectionCoeffs<T>&, const FrameTensor<T>&);                 \
  template Residual<T> j_parallel_residual(const ConnectionCoeffs<T>&, const FrameTensor<T>&);                \
  template FundamentalTensor<T> fundamental_tensor(const NordenStructure<T>&, const ConnectionCoeffs<T>&);    \
  template Residual<T> f_symmetry_residual(const NordenStructure<T>&, const FundamentalTensor<T>&);           \
  template ClassFlags<T> classify(const NordenStructure<T>&, const FundamentalTensor<T>&);                    \
  template ConnectionCoeffs<T> b_connection(const NordenStructure<T>&, const ConnectionCoeffs<T>&);           \
  template Residual<T> naturality_residual(const NordenStructure<T>&, const ConnectionCoeffs<T>&);            \
  template FrameTensor<T> q_tensor(const NordenStructure<T>&, const FundamentalTensor<T>&);                   \
  template FrameTensor<T> q_tensor_from_derivative(const NordenStructure<T>&, const ConnectionCoeffs<T>&);    \
  template Residual<T> q_antisymmetry_residual(const FrameTensor<T>&);                                        \
  template FrameTensor<T> torsion(const NordenStructure<T>&, const ConnectionCoeffs<T>&);                     \
  template Residual<T> torsion_identity_residual(const NordenStructure<T>&, const FrameTensor<T>&,            \
                                                 const FundamentalTensor<T>&);                                \
  template Residual<T> torsion_cyclic_residual(const FrameTensor<T>&, const FrameTensor<T>&);

NORDEN_INSTANTIATE(Rational)
NORDEN_INSTANTIATE(double)

#undef NORDEN_INSTANTIATE

}  // namespace norden
