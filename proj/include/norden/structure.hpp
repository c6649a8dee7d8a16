#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "norden/frame_tensor.hpp"
#include "norden/matrix.hpp"
#include "norden/tensor_ops.hpp"

namespace norden {

/// Parsed but unvalidated input: structure constants, metric and almost
/// complex structure with exact rational entries. Indices are 0-based.
class RawSpec {
 public:
  RawSpec() = default;
  RawSpec(int dim, ScalarMode mode = ScalarMode::Rational);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] ScalarMode mode() const { return mode_; }
  void set_mode(ScalarMode mode) { mode_ = mode; }

  /// C^k_{ij}: [e_i, e_j] = C^k_{ij} e_k.
  [[nodiscard]] const Rational& C(int k, int i, int j) const { return C_[c_index(k, i, j)]; }
  [[nodiscard]] const Rational& g(int i, int j) const { return g_[m_index(i, j)]; }
  /// J^i_j: J e_j = J^i_j e_i.
  [[nodiscard]] const Rational& J(int i, int j) const { return J_[m_index(i, j)]; }

  /// Sets C^k_{ij} and C^k_{ji} = -C^k_{ij}.
  void set_bracket(int i, int j, int k, const Rational& v);
  /// Sets C^k_{ij} alone (used to represent deliberately broken input).
  void set_C_raw(int k, int i, int j, const Rational& v) { C_[c_index(k, i, j)] = v; }
  /// Sets g_{ij} and g_{ji}.
  void set_g(int i, int j, const Rational& v);
  void set_g_raw(int i, int j, const Rational& v) { g_[m_index(i, j)] = v; }
  void set_J(int i, int j, const Rational& v) { J_[m_index(i, j)] = v; }

  friend bool operator==(const RawSpec&, const RawSpec&) = default;

 private:
  [[nodiscard]] std::size_t c_index(int k, int i, int j) const {
    return static_cast<std::size_t>((k * dim_ + i) * dim_ + j);
  }
  [[nodiscard]] std::size_t m_index(int i, int j) const { return static_cast<std::size_t>(i * dim_ + j); }

  int dim_ = 0;
  ScalarMode mode_ = ScalarMode::Rational;
  std::vector<Rational> C_;
  std::vector<Rational> g_;
  std::vector<Rational> J_;
};

/// Parses the line-oriented structure format. Throws ParseError.
RawSpec parse_spec(std::istream& in);
RawSpec parse_spec(std::string_view text);
RawSpec read_spec_file(const std::filesystem::path& path);

/// Canonical serialization: zero entries omitted, C with i<j sorted by
/// (i,j,k), g upper triangle, J row-major, rationals in lowest terms.
std::string export_spec(const RawSpec& spec);
void write_spec_file(const std::filesystem::path& path, const RawSpec& spec);

/// Exact value of an integer, p/q or (when allowed) decimal literal.
Rational parse_value(std::string_view token, bool allow_decimal);

/// diag(1,..,1,-1,..,-1) with J e_i = e_{i+n}, J e_{i+n} = -e_i and C = 0.
RawSpec canonical_norden(int dim);

/// Lie algebra data over the frame: C as a (1,2) tensor C(k, i, j) = C^k_{ij}.
template <Field T>
struct LieFrame {
  FrameTensor<T> C;

  [[nodiscard]] int dim() const { return C.dim(); }
};

/// Validated almost complex structure with Norden metric on a Lie algebra.
template <Field T>
struct NordenStructure {
  LieFrame<T> frame;
  FrameTensor<T> J;  ///< (1,1): J(i, j) = J^i_j
  MetricPair<T> metric;
  Inertia signature;

  [[nodiscard]] int dim() const { return J.dim(); }
  [[nodiscard]] const FrameTensor<T>& g() const { return metric.g(); }
  [[nodiscard]] const FrameTensor<T>& g_inv() const { return metric.g_inv(); }
};

/// Checks every structure invariant and returns the validated structure, or
/// throws ValidationError naming the first violation with 1-based witness
/// indices. Order: dimension, antisymmetry, Jacobi, J^2 = -I, Norden
/// condition, nondegeneracy, signature.
template <Field T>
NordenStructure<T> validate(const RawSpec& raw);

/// g~(x,y) = g(x,Jy).
template <Field T>
FrameTensor<T> associated_metric(const NordenStructure<T>& s);

/// Jacobi residual tensor (1,3): sum_m C^m_{ij} C^l_{mk} + cyclic, indexed (l; i, j, k).
template <Field T>
FrameTensor<T> jacobiator(const FrameTensor<T>& C);

}  // namespace norden
