#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "norden/analysis.hpp"

namespace norden {

/// Small rationals used for structure constants and combination weights.
std::vector<Rational> default_pool();

struct SampleStats {
  std::uint64_t tries = 0;
  std::uint64_t emitted = 0;
  std::map<std::string, std::uint64_t> rejections;  ///< validation code -> count
};

/// Deterministic stream of valid structures. The abelian structure with the
/// canonical (g, J) comes first; the rest mix sparse random brackets and
/// almost-abelian algebras [e_1, e_j] = A e_j, each on a randomly twisted
/// (g, J). Invalid candidates are discarded and counted in `stats`.
std::vector<RawSpec> sample_structures(int dim, std::uint64_t seed, int count, const std::vector<Rational>& pool,
                                       SampleStats* stats = nullptr);

/// Canonical (g, J) changed by the integer basis change P (det P = ±1):
/// g' = P^T g P, J' = P^{-1} J P.
RawSpec twisted_norden(int dim, const Matrix<Rational>& P);

/// Random unimodular integer matrix built from a few elementary operations.
Matrix<Rational> random_unimodular(int dim, std::mt19937_64& rng, int steps);

/// Linear space of structure constants: unknowns are C^k_ij with i < j.
struct LinearCSpace {
  int dim = 0;
  std::vector<std::array<int, 3>> unknowns;  ///< (k, i, j)
  std::vector<std::vector<Rational>> basis;
};

/// Constraint matrix of the W3 condition (cyclic sum of F) as a linear map of
/// the C unknowns, for the (g, J) of `gJ` (its C is ignored).
Matrix<Rational> w3_constraint_matrix(const RawSpec& gJ);
/// Same for F = 0.
Matrix<Rational> w0_constraint_matrix(const RawSpec& gJ);

/// Exact nullspace of the W3 constraints. Jacobi is not imposed.
LinearCSpace solve_w3_linear(const RawSpec& gJ);
LinearCSpace solve_w0_linear(const RawSpec& gJ);

/// `gJ` with C = sum_m coeffs[m] * space.basis[m].
RawSpec with_structure_constants(const RawSpec& gJ, const LinearCSpace& space, const std::vector<Rational>& coeffs);

/// Exact Jacobi check of raw structure constants.
bool satisfies_jacobi(const RawSpec& raw);

enum class SearchTarget { W3Nontrivial, W3L2, IsotropicKahlerNonKahler, W3L2KahlerK4d, KahlerNonflat, GenericNonW3 };

SearchTarget parse_target(std::string_view name);
std::string to_string(SearchTarget t);
std::vector<std::string> target_names();

/// Exact predicate of a target on a structure.
bool target_holds(SearchTarget t, Analysis<Rational>& a);

struct HuntOptions {
  SearchTarget target = SearchTarget::W3Nontrivial;
  int dim = 4;
  std::uint64_t seed = 1;
  std::uint64_t budget = 2000;
  std::uint64_t max_hits = 10;
  std::filesystem::path out_dir;
};

struct HuntResult {
  HuntOptions options;
  std::uint64_t tries = 0;
  std::vector<std::filesystem::path> files;
  std::map<std::string, std::uint64_t> rejections;

  [[nodiscard]] std::uint64_t hits() const { return files.size(); }
  /// Deterministic text, also written to <out_dir>/summary.txt.
  [[nodiscard]] std::string summary() const;
};

/// Searches for certified examples of `target`. Each hit is written in
/// canonical form, read back, re-validated and re-certified. Zero hits is a
/// normal result.
HuntResult hunt(const HuntOptions& options);

/// Re-reads an example file and checks the target predicate and that the
/// full identity report has no failures.
bool certify_file(const std::filesystem::path& path, SearchTarget target);

}  // namespace norden
