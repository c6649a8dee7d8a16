#include "norden/curvature.hpp"

namespace norden {

template <Field T>
FrameTensor<T> curvature_of(const ConnectionCoeffs<T>& conn, const FrameTensor<T>& C, const MetricPair<T>& metric) {
  const auto& G = conn.gamma;
  const int n = G.dim();
  FrameTensor<T> up(n, 1, 3);  // up(l, i, j, k) = R^l_ijk
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          T v = ScalarTraits<T>::zero();
          for (int m = 0; m < n; ++m) {
            v += G(l, i, m) * G(m, j, k);
            v -= G(l, j, m) * G(m, i, k);
            v -= C(m, i, j) * G(l, m, k);
          }
          up(l, i, j, k) = v;
        }
  return raise_lower(up, 0, IndexDirection::Down, metric);
}

template <Field T>
FrameTensor<T> nabla_F(const ConnectionCoeffs<T>& nabla, const FundamentalTensor<T>& F) {
  const auto& G = nabla.gamma;
  const auto& f = F.F;
  const int n = f.dim();
  FrameTensor<T> out(n, 0, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          T v = ScalarTraits<T>::zero();
          for (int m = 0; m < n; ++m) {
            v -= G(m, i, j) * f(m, k, l);
            v -= G(m, i, k) * f(j, m, l);
            v -= G(m, i, l) * f(j, k, m);
          }
          out(i, j, k, l) = v;
        }
  return out;
}

template <Field T>
Residual<T> ricci_identity_residual(const FrameTensor<T>& nablaF, const FrameTensor<T>& R, const FrameTensor<T>& J) {
  const auto lhs = nablaF - permute_slots(nablaF, {1, 0, 2, 3});
  const auto rhs = apply_endomorphism(R, 2, J) - apply_endomorphism(R, 3, J);
  return residual_of(lhs - rhs, {&lhs, &rhs});
}

template <Field T>
FrameTensor<T> nabla_J_gram(const NordenStructure<T>& s, const FrameTensor<T>& dJ) {
  const int n = s.dim();
  const auto& g = s.g();
  // v(i, k, b) = g((∇_i J) e_k, e_b)
  FrameTensor<T> v(n, 0, 3);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int b = 0; b < n; ++b) {
        T acc = ScalarTraits<T>::zero();
        for (int a = 0; a < n; ++a) acc += dJ(a, i, k) * g(a, b);
        v(i, k, b) = acc;
      }
  FrameTensor<T> out(n, 0, 4);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          T acc = ScalarTraits<T>::zero();
          for (int b = 0; b < n; ++b) acc += v(x, z, b) * dJ(b, y, w);
          out(x, y, z, w) = acc;
        }
  return out;
}

template <Field T>
FrameTensor<T> p_tensor(const NordenStructure<T>& s, const ConnectionCoeffs<T>& nabla) {
  const auto gram = nabla_J_gram(s, derivative_of_J(nabla, s.J));
  return gram - permute_slots(gram, {1, 0, 2, 3});
}

template <Field T>
FrameTensor<T> twist_last_pair(const FrameTensor<T>& L, const FrameTensor<T>& J) {
  return apply_endomorphism(apply_endomorphism(L, 2, J), 3, J);
}

template <Field T>
FrameTensor<T> k_via_formula(const FrameTensor<T>& R, const FrameTensor<T>& P, const FrameTensor<T>& J) {
  FrameTensor<T> k = R * T(2);
  k -= twist_last_pair(R, J) * T(2);
  k += P;
  return k * (T(1) / T(4));
}

template <Field T>
FrameTensor<T> h_tensor(const FrameTensor<T>& R, const FrameTensor<T>& J) {
  return R - twist_last_pair(R, J);
}

template <Field T>
CurvatureLikeResidual<T> curvature_like_check(const FrameTensor<T>& L) {
  if (L.con_rank() != 0 || L.cov_rank() != 4) throw TensorError("curvature_like_check: expected a (0,4) tensor");
  CurvatureLikeResidual<T> out;
  out.antisym = residual_of(L + permute_slots(L, {1, 0, 2, 3}), {&L})
                    .merged(residual_of(L + permute_slots(L, {0, 1, 3, 2}), {&L}));
  out.bianchi = residual_of(cyclic_sum(L, {0, 1, 2}), {&L});
  return out;
}

template <Field T>
Residual<T> kahler_residual(const FrameTensor<T>& L, const FrameTensor<T>& J) {
  const auto twisted = twist_last_pair(L, J);
  return residual_of(twisted + L, {&L, &twisted});
}

template <Field T>
bool is_kahler_tensor(const FrameTensor<T>& L, const FrameTensor<T>& J) {
  return curvature_like_check(L).passes() && kahler_residual(L, J).vanishes();
}

template <Field T>
Residual<T> l2_residual(const FrameTensor<T>& R, const FrameTensor<T>& J) {
  const auto twisted = twist_last_pair(R, J);
  return residual_of(cyclic_sum(twisted, {0, 1, 2}), {&R, &twisted});
}

template <Field T>
void require_biconditional(const Residual<T>& a, const Residual<T>& b, const std::string& what) {
  const bool za = a.vanishes();
  const bool zb = b.vanishes();
  if (za != zb) {
    throw BiconditionalViolation(what + ": one side vanishes (" + a.str() + " vs " + b.str() + ")");
  }
  if constexpr (!ScalarTraits<T>::exact) {
    if (!za) {
      const double hi = std::max(a.value, b.value);
      const double lo = std::min(a.value, b.value);
      if (hi > 100.0 * lo) throw BiconditionalViolation(what + ": residuals differ by more than 100x");
    }
  }
}

template <Field T>
BiconditionalResult<T> thm23_check(const FrameTensor<T>& R, const FrameTensor<T>& P, const FrameTensor<T>& J,
                                   const FrameTensor<T>& K) {
  const auto lhs = cyclic_sum(twist_last_pair(R, J), {0, 1, 2}) * T(2);
  const auto rhs = cyclic_sum(P, {0, 1, 2});
  BiconditionalResult<T> out;
  out.left = residual_of(lhs - rhs, {&R, &P});
  out.right = curvature_like_check(K).bianchi;
  require_biconditional(out.left, out.right, "K Kählerian iff 2 S R(x,y,Jz,Jw) = S P");
  out.holds = out.left.vanishes();
  return out;
}

template <Field T>
BiconditionalResult<T> thm24_check(const FrameTensor<T>& P, const FrameTensor<T>& K) {
  BiconditionalResult<T> out;
  out.left = curvature_like_check(K).bianchi;
  out.right = curvature_like_check(P).bianchi;
  require_biconditional(out.left, out.right, "K Kählerian iff P Kählerian");
  out.holds = out.left.vanishes();
  return out;
}

template <Field T>
CurvatureBundle<T> curvature_bundle(const NordenStructure<T>& s, const ConnectionCoeffs<T>& nabla,
                                    const ConnectionCoeffs<T>& D, const FundamentalTensor<T>& F) {
  CurvatureBundle<T> b;
  b.R = curvature_of(nabla, s.frame.C, s.metric);
  b.K_direct = curvature_of(D, s.frame.C, s.metric);
  b.P = p_tensor(s, nabla);
  b.K_formula = k_via_formula(b.R, b.P, s.J);
  b.H = h_tensor(b.R, s.J);
  b.nabla_F = nabla_F(nabla, F);
  return b;
}

#define NORDEN_INSTANTIATE(T)                                                                                      \
  template FrameTensor<T> curvature_of(const ConnectionCoeffs<T>&, const FrameTensor<T>&, const MetricPair<T>&); \
  template FrameTensor<T> nabla_F(const ConnectionCoeffs<T>&, const FundamentalTensor<T>&);                      \
  template Residual<T> ricci_identity_residual(const FrameTensor<T>&, const FrameTensor<T>&, const FrameTensor<T>&); \
  template FrameTensor<T> nabla_J_gram(const NordenStructure<T>&, const FrameTensor<T>&);                        \
  template FrameTensor<T> p_tensor(const NordenStructure<T>&, const ConnectionCoeffs<T>&);                       \
  template FrameTensor<T> twist_last_pair(const FrameTensor<T>&, const FrameTensor<T>&);                         \
  template FrameTensor<T> k_via_formula(const FrameTensor<T>&, const FrameTensor<T>&, const FrameTensor<T>&);    \
  template FrameTensor<T> h_tensor(const FrameTensor<T>&, const FrameTensor<T>&);                                \
  template CurvatureLikeResidual<T> curvature_like_check(const FrameTensor<T>&);                                 \
  template Residual<T> kahler_residual(const FrameTensor<T>&, const FrameTensor<T>&);                            \
  template bool is_kahler_tensor(const FrameTensor<T>&, const FrameTensor<T>&);                                  \
  template Residual<T> l2_residual(const FrameTensor<T>&, const FrameTensor<T>&);                                \
  template void require_biconditional(const Residual<T>&, const Residual<T>&, const std::string&);              \
  template BiconditionalResult<T> thm23_check(const FrameTensor<T>&, const FrameTensor<T>&, const FrameTensor<T>&, \
                                              const FrameTensor<T>&);                                            \
  template BiconditionalResult<T> thm24_check(const FrameTensor<T>&, const FrameTensor<T>&);                     \
  template CurvatureBundle<T> curvature_bundle(const NordenStructure<T>&, const ConnectionCoeffs<T>&,            \
                                               const ConnectionCoeffs<T>&, const FundamentalTensor<T>&);

NORDEN_INSTANTIATE(Rational)
NORDEN_INSTANTIATE(double)

#undef NORDEN_INSTANTIATE

}  // namespace norden
