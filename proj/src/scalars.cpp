#include "norden/scalars.hpp"

namespace norden {

template <Field T>
RicciData<T> ricci_and_scalar(const FrameTensor<T>& L, const MetricPair<T>& metric, const FrameTensor<T>& J) {
  RicciData<T> out;
  out.rho = contract(L, 0, 3, metric);
  out.tau = contract(out.rho, 0, 1, metric).value();
  out.rho_star = contract(apply_endomorphism(L, 3, J), 0, 3, metric);
  out.tau_star = contract(apply_endomorphism(out.rho, 1, J), 0, 1, metric).value();
  out.tau_star_alt = contract(out.rho_star, 0, 1, metric).value();
  return out;
}

template <Field T>
T tau_star_star(const FrameTensor<T>& R, const MetricPair<T>& metric, const FrameTensor<T>& J) {
  const auto inner = contract(twist_last_pair(R, J), 0, 3, metric);  // (k, s)
  return contract(inner, 0, 1, metric).value();
}

namespace {

/// sum g^{ab} g^{cd} G(slots...) with the two pairs of contracted slots given.
template <Field T>
T double_trace(const FrameTensor<T>& G, const MetricPair<T>& metric, int a1, int a2) {
  // Contract (a1, a2) first; the remaining two slots keep their order.
  const auto once = contract(G, a1, a2, metric);
  return contract(once, 0, 1, metric).value();
}

}  // namespace

template <Field T>
T norm_nabla_J(const NordenStructure<T>& s, const FrameTensor<T>& dJ) {
  // gram(i, j, k, s) = g((∇_i J)e_k, (∇_j J)e_s); contract (i,j) then (k,s).
  return double_trace(nabla_J_gram(s, dJ), s.metric, 0, 1);
}

template <Field T>
T w3_norm_rhs(const NordenStructure<T>& s, const FrameTensor<T>& dJ) {
  // gram(i, s, k, j) = g((∇_i J)e_k, (∇_s J)e_j); contract (i,j) then (s,k).
  return T(-2) * double_trace(nabla_J_gram(s, dJ), s.metric, 0, 3);
}

template <Field T>
Residual<T> w3_norm_identity_residual(const NordenStructure<T>& s, const FrameTensor<T>& dJ) {
  return scalar_residual(norm_nabla_J(s, dJ), w3_norm_rhs(s, dJ));
}

template <Field T>
ScalarReport<T> scalar_report(const NordenStructure<T>& s, const CurvatureBundle<T>& curv, const FrameTensor<T>& dJ) {
  ScalarReport<T> out;
  out.R = ricci_and_scalar(curv.R, s.metric, s.J);
  out.K = ricci_and_scalar(curv.K_direct, s.metric, s.J);
  out.P = ricci_and_scalar(curv.P, s.metric, s.J);
  out.tau_star_star = tau_star_star(curv.R, s.metric, s.J);
  out.norm_nabla_J = norm_nabla_J(s, dJ);
  return out;
}

template <Field T>
Section3Residuals<T> section3_relations(const ScalarReport<T>& sc, const FrameTensor<T>& J) {
  Section3Residuals<T> out;
  const T half = T(1) / T(2);
  const T& tau = sc.R.tau;
  const T& tau_K = sc.K.tau;
  const T& tau_P = sc.P.tau;
  const T& norm = sc.norm_nabla_J;

  const auto lhs = sc.R.rho - apply_endomorphism(sc.R.rho_star, 1, J);
  const auto rhs = sc.K.rho * T(2) - sc.P.rho * half;
  out.ricci_relation = residual_of(lhs - rhs, {&lhs, &rhs});

  out.scalar_relation = scalar_residual<T>(tau - sc.tau_star_star, T(2) * tau_K - half * tau_P);
  out.norm_tau_relation = scalar_residual<T>(norm, T(-2) * (tau + sc.tau_star_star));
  out.tau_relation = scalar_residual<T>(tau, tau_K - (tau_P + norm) / T(4));
  out.tau_p_relation = scalar_residual<T>(tau_P, -half * norm);
  out.tau_k_relation = scalar_residual<T>(tau, tau_K - norm / T(8));
  return out;
}

template <Field T>
IsotropicKahler<T> isotropic_kahler_check(const ScalarReport<T>& sc) {
  const Residual<T> norm = scalar_residual<T>(sc.norm_nabla_J, ScalarTraits<T>::zero());
  const Residual<T> tau_gap = scalar_residual<T>(sc.R.tau, sc.K.tau);
  require_biconditional(norm, tau_gap, "isotropic-Kähler iff tau = tau(K)");
  return {norm.vanishes(), tau_gap.vanishes()};
}

#define NORDEN_INSTANTIATE(T)                                                                                   \
  template RicciData<T> ricci_and_scalar(const FrameTensor<T>&, const MetricPair<T>&, const FrameTensor<T>&); \
  template T tau_star_star(const FrameTensor<T>&, const MetricPair<T>&, const FrameTensor<T>&);               \
  template T norm_nabla_J(const NordenStructure<T>&, const FrameTensor<T>&);                                  \
  template T w3_norm_rhs(const NordenStructure<T>&, const FrameTensor<T>&);                                   \
  template Residual<T> w3_norm_identity_residual(const NordenStructure<T>&, const FrameTensor<T>&);           \
  template ScalarReport<T> scalar_report(const NordenStructure<T>&, const CurvatureBundle<T>&,                \
                                         const FrameTensor<T>&);                                              \
  template Section3Residuals<T> section3_relations(const ScalarReport<T>&, const FrameTensor<T>&);            \
  template IsotropicKahler<T> isotropic_kahler_check(const ScalarReport<T>&);

NORDEN_INSTANTIATE(Rational)
NORDEN_INSTANTIATE(double)

#undef NORDEN_INSTANTIATE

}  // namespace norden
