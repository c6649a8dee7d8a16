#pragma once

#include "norden/curvature.hpp"

namespace norden {

/// Ricci-type traces of a (0,4) tensor L.
template <Field T>
struct RicciData {
  FrameTensor<T> rho;       ///< rho(y,z) = g^{ij} L(e_i,y,z,e_j)
  FrameTensor<T> rho_star;  ///< rho*(y,z) = g^{ij} L(e_i,y,z,Je_j)
  T tau{};                  ///< g^{ij} rho(e_i,e_j)
  T tau_star{};             ///< g^{ij} rho(e_i,Je_j), as conventionally written
  T tau_star_alt{};         ///< g^{ij} rho*(e_i,e_j), the other natural reading
};

template <Field T>
RicciData<T> ricci_and_scalar(const FrameTensor<T>& L, const MetricPair<T>& metric, const FrameTensor<T>& J);

/// tau** = g^{ij} g^{ks} R(e_i, e_k, Je_s, Je_j).
template <Field T>
T tau_star_star(const FrameTensor<T>& R, const MetricPair<T>& metric, const FrameTensor<T>& J);

/// |∇J|^2 = g^{ij} g^{ks} g((∇_{e_i}J)e_k, (∇_{e_j}J)e_s).
template <Field T>
T norm_nabla_J(const NordenStructure<T>& s, const FrameTensor<T>& dJ);

/// -2 g^{ij} g^{ks} g((∇_{e_i}J)e_k, (∇_{e_s}J)e_j), which equals |∇J|^2 on
/// quasi-Kähler structures.
template <Field T>
T w3_norm_rhs(const NordenStructure<T>& s, const FrameTensor<T>& dJ);

template <Field T>
Residual<T> w3_norm_identity_residual(const NordenStructure<T>& s, const FrameTensor<T>& dJ);

template <Field T>
struct ScalarReport {
  RicciData<T> R;
  RicciData<T> K;
  RicciData<T> P;
  T tau_star_star{};
  T norm_nabla_J{};
};

template <Field T>
ScalarReport<T> scalar_report(const NordenStructure<T>& s, const CurvatureBundle<T>& curv, const FrameTensor<T>& dJ);

template <Field T>
struct Section3Residuals {
  Residual<T> ricci_relation;     ///< rho(y,z) - rho*(y,Jz) = 2 rho(K)(y,z) - 1/2 rho(P)(y,z)
  Residual<T> scalar_relation;    ///< tau - tau** = 2 tau(K) - 1/2 tau(P)
  Residual<T> norm_tau_relation;  ///< |∇J|^2 = -2 (tau + tau**)
  Residual<T> tau_relation;       ///< tau = tau(K) - 1/4 (tau(P) + |∇J|^2)
  Residual<T> tau_p_relation;     ///< tau(P) = -1/2 |∇J|^2
  Residual<T> tau_k_relation;     ///< tau = tau(K) - 1/8 |∇J|^2
};

template <Field T>
Section3Residuals<T> section3_relations(const ScalarReport<T>& sc, const FrameTensor<T>& J);

template <Field T>
struct IsotropicKahler {
  bool isotropic = false;        ///< |∇J|^2 = 0
  bool tau_equals_tau_K = false;
};

/// Throws BiconditionalViolation if |∇J|^2 = 0 and tau = tau(K) disagree.
template <Field T>
IsotropicKahler<T> isotropic_kahler_check(const ScalarReport<T>& sc);

}  // namespace norden
