#pragma once

#include <optional>

#include "norden/fourdim.hpp"

namespace norden {

/// Every derived object of a validated structure, computed on first use and
/// cached. Errors raised while computing an object propagate to the caller and
/// are raised again on the next request.
template <Field T>
class Analysis {
 public:
  explicit Analysis(NordenStructure<T> s) : s_(std::move(s)) {}

  [[nodiscard]] const NordenStructure<T>& structure() const { return s_; }
  [[nodiscard]] int dim() const { return s_.dim(); }

  const ConnectionCoeffs<T>& nabla();
  const FrameTensor<T>& dJ();
  const FundamentalTensor<T>& F();
  const ClassFlags<T>& flags();
  const ConnectionCoeffs<T>& D();
  const FrameTensor<T>& torsion();
  const CurvatureBundle<T>& curvature();
  const ScalarReport<T>& scalars();
  const PiBasis<T>& pi();

  bool is_W3() { return flags().is_W3; }
  /// S R(x,y,Jz,Jw) = 0.
  bool is_L2();
  /// K_direct is a Kähler tensor (equivalently, satisfies the first Bianchi identity).
  bool K_kahler();
  [[nodiscard]] bool dim4() const { return s_.dim() == 4; }

  /// Looks up a gate by its report name: is_W3, is_L2, K_kahler, dim4.
  bool gate(std::string_view name);

 private:
  NordenStructure<T> s_;
  std::optional<ConnectionCoeffs<T>> nabla_;
  std::optional<FrameTensor<T>> dJ_;
  std::optional<FundamentalTensor<T>> F_;
  std::optional<ClassFlags<T>> flags_;
  std::optional<ConnectionCoeffs<T>> D_;
  std::optional<FrameTensor<T>> torsion_;
  std::optional<CurvatureBundle<T>> curvature_;
  std::optional<ScalarReport<T>> scalars_;
  std::optional<PiBasis<T>> pi_;
};

}  // namespace norden
