#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <sstream>
#include <string>

namespace norden {

/// Exact arbitrary-precision rational. GMP keeps values canonically reduced.
using Rational = mpq_class;

enum class ScalarMode { Rational, Float };

/// Relative tolerance for float-mode residuals: r <= kFloatTolerance * (1 + scale).
inline constexpr double kFloatTolerance = 1e-9;

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr ScalarMode mode = ScalarMode::Rational;

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_rational(const Rational& q) { return q; }
  static Rational from_int(long v) { return Rational(v); }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static bool is_finite(const Rational&) { return true; }
  static std::string str(const Rational& x) { return x.get_str(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr ScalarMode mode = ScalarMode::Float;

  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double from_int(long v) { return static_cast<double>(v); }
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static bool is_zero(double x) { return x == 0.0; }
  static bool is_finite(double x) { return std::isfinite(x); }
  static std::string str(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  }
};

/// Scalar field usable as a tensor entry type.
template <typename T>
concept Field = requires(T a, T b) {
  { a + b };
  { a - b };
  { a * b };
  { a / b };
  { ScalarTraits<T>::zero() } -> std::convertible_to<T>;
  { ScalarTraits<T>::abs(a) } -> std::convertible_to<T>;
};

/// Max-absolute residual of an identity, with the magnitude of the inputs it
/// was computed from. Exact mode passes only on an exact zero; float mode
/// passes when value <= tol * (1 + scale).
template <Field T>
struct Residual {
  T value = ScalarTraits<T>::zero();
  T scale = ScalarTraits<T>::zero();

  /// `looseness` multiplies the float tolerance (search pre-filter uses 1e3).
  [[nodiscard]] bool vanishes(double looseness = 1.0) const {
    if constexpr (ScalarTraits<T>::exact) {
      return ScalarTraits<T>::is_zero(value);
    } else {
      return value <= kFloatTolerance * looseness * (1.0 + scale);
    }
  }

  [[nodiscard]] std::string str() const { return ScalarTraits<T>::str(value); }

  /// Combines two residuals covering different conditions of one check.
  [[nodiscard]] Residual merged(const Residual& other) const {
    Residual r;
    r.value = value < other.value ? other.value : value;
    r.scale = scale < other.scale ? other.scale : scale;
    return r;
  }
};

template <Field T>
T scalar_residual_scale(std::initializer_list<T> parts) {
  T m = ScalarTraits<T>::zero();
  for (const T& p : parts) {
    T a = ScalarTraits<T>::abs(p);
    if (m < a) m = a;
  }
  return m;
}

/// Residual of a scalar equation lhs == rhs.
template <Field T>
Residual<T> scalar_residual(const T& lhs, const T& rhs) {
  Residual<T> r;
  r.value = ScalarTraits<T>::abs(T(lhs - rhs));
  r.scale = scalar_residual_scale<T>({lhs, rhs});
  return r;
}

}  // namespace norden
