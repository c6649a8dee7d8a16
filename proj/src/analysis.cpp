#include "norden/analysis.hpp"

namespace norden {

template <Field T>
const ConnectionCoeffs<T>& Analysis<T>::nabla() {
  if (!nabla_) nabla_ = levi_civita(s_);
  return *nabla_;
}

template <Field T>
const FrameTensor<T>& Analysis<T>::dJ() {
  if (!dJ_) dJ_ = derivative_of_J(nabla(), s_.J);
  return *dJ_;
}

template <Field T>
const FundamentalTensor<T>& Analysis<T>::F() {
  if (!F_) F_ = fundamental_tensor(s_, nabla());
  return *F_;
}

template <Field T>
const ClassFlags<T>& Analysis<T>::flags() {
  if (!flags_) flags_ = classify(s_, F());
  return *flags_;
}

template <Field T>
const ConnectionCoeffs<T>& Analysis<T>::D() {
  if (!D_) D_ = b_connection(s_, nabla());
  return *D_;
}

template <Field T>
const FrameTensor<T>& Analysis<T>::torsion() {
  if (!torsion_) torsion_ = norden::torsion(s_, D());
  return *torsion_;
}

template <Field T>
const CurvatureBundle<T>& Analysis<T>::curvature() {
  if (!curvature_) curvature_ = curvature_bundle(s_, nabla(), D(), F());
  return *curvature_;
}

template <Field T>
const ScalarReport<T>& Analysis<T>::scalars() {
  if (!scalars_) scalars_ = scalar_report(s_, curvature(), dJ());
  return *scalars_;
}

template <Field T>
const PiBasis<T>& Analysis<T>::pi() {
  if (!pi_) pi_ = build_pi(s_);
  return *pi_;
}

template <Field T>
bool Analysis<T>::is_L2() {
  return l2_residual(curvature().R, s_.J).vanishes();
}

template <Field T>
bool Analysis<T>::K_kahler() {
  return is_kahler_tensor(curvature().K_direct, s_.J);
}

template <Field T>
bool Analysis<T>::gate(std::string_view name) {
  if (name == "is_W3") return is_W3();
  if (name == "is_L2") return is_L2();
  if (name == "K_kahler") return K_kahler();
  if (name == "dim4") return dim4();
  throw Error("unknown gate '" + std::string(name) + "'");
}

template class Analysis<Rational>;
template class Analysis<double>;

}  // namespace norden
