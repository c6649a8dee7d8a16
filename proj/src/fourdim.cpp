#include "norden/fourdim.hpp"

namespace norden {

template <Field T>
PiBasis<T> build_pi(const NordenStructure<T>& s) {
  const int n = s.dim();
  const auto& g = s.g();
  const auto& gt = *s.metric.g_tilde();  // gt(a,b) = g(e_a, J e_b)
  PiBasis<T> pi{FrameTensor<T>(n, 0, 4), FrameTensor<T>(n, 0, 4), FrameTensor<T>(n, 0, 4), n == 4};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          pi.pi1(x, y, z, w) = g(y, z) * g(x, w) - g(x, z) * g(y, w);
          pi.pi2(x, y, z, w) = gt(y, z) * gt(x, w) - gt(x, z) * gt(y, w);
          pi.pi3(x, y, z, w) = -g(y, z) * gt(x, w) + g(x, z) * gt(y, w) - gt(y, z) * g(x, w) + gt(x, z) * g(y, w);
        }
  return pi;
}

template <Field T>
FrameTensor<T> compose_kahler(const PiBasis<T>& pi, const T& a, const T& b) {
  return pi.pi12() * a + pi.pi3 * b;
}

template <Field T>
KahlerDecomposition<T> decompose_kahler(const FrameTensor<T>& L, const NordenStructure<T>& s) {
  if (s.dim() != 4) throw DimensionNotFour("Kähler tensor decomposition requires dimension 4");
  if (!is_kahler_tensor(L, s.J)) throw NotKahlerTensor("tensor is not a Kähler tensor");
  const auto pi = build_pi(s);
  const auto traces = ricci_and_scalar(L, s.metric, s.J);
  KahlerDecomposition<T> out;
  out.nu = traces.tau / T(8);
  out.nu_star = traces.tau_star / T(8);
  const auto rebuilt = compose_kahler(pi, out.nu, out.nu_star);
  out.residual = residual_of(L - rebuilt, {&L, &rebuilt});
  return out;
}

template <Field T>
Residual<T> h_closed_form_residual(const FrameTensor<T>& H, const ScalarReport<T>& sc, const PiBasis<T>& pi) {
  const T a = (T(4) * sc.K.tau - sc.P.tau) / T(16);
  const T b = (T(4) * sc.K.tau_star - sc.P.tau_star) / T(16);
  const auto expected = compose_kahler(pi, a, b);
  return residual_of(H - expected, {&H, &expected});
}

#define NORDEN_INSTANTIATE(T)                                                                            \
  template PiBasis<T> build_pi(const NordenStructure<T>&);                                               \
  template FrameTensor<T> compose_kahler(const PiBasis<T>&, const T&, const T&);                         \
  template KahlerDecomposition<T> decompose_kahler(const FrameTensor<T>&, const NordenStructure<T>&);    \
  template Residual<T> h_closed_form_residual(const FrameTensor<T>&, const ScalarReport<T>&, const PiBasis<T>&);

NORDEN_INSTANTIATE(Rational)
NORDEN_INSTANTIATE(double)

#undef NORDEN_INSTANTIATE

}  // namespace norden
