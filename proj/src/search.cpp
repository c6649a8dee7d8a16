#include "norden/search.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>

#include "norden/report.hpp"

namespace norden {

std::vector<Rational> default_pool() {
  return {Rational(0), Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2), Rational(2), Rational(-2)};
}

namespace {

// Uniform-enough choice that does not depend on the standard library's
// distribution implementation, so streams match across platforms.
std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

Rational pick_nonzero(std::mt19937_64& rng, const std::vector<Rational>& pool) {
  std::vector<const Rational*> nz;
  for (const auto& q : pool)
    if (sgn(q) != 0) nz.push_back(&q);
  if (nz.empty()) throw Error("coefficient pool has no nonzero value");
  return *nz[pick(rng, nz.size())];
}

FrameTensor<Rational> c_tensor(const RawSpec& raw) {
  const int n = raw.dim();
  FrameTensor<Rational> C(n, 1, 2);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) C(k, i, j) = raw.C(k, i, j);
  return C;
}

RawSpec copy_gJ(const RawSpec& src) {
  RawSpec out(src.dim(), src.mode());
  for (int i = 0; i < src.dim(); ++i)
    for (int j = 0; j < src.dim(); ++j) {
      out.set_g_raw(i, j, src.g(i, j));
      out.set_J(i, j, src.J(i, j));
    }
  return out;
}

RawSpec random_frame(int dim, std::mt19937_64& rng) {
  if (pick(rng, 2) == 0) return canonical_norden(dim);
  return twisted_norden(dim, random_unimodular(dim, rng, 1 + static_cast<int>(pick(rng, 3))));
}

/// Sparse random brackets or an almost-abelian algebra on the given (g, J).
RawSpec random_brackets(const RawSpec& frame, std::mt19937_64& rng, const std::vector<Rational>& pool) {
  const int n = frame.dim();
  RawSpec out = copy_gJ(frame);
  if (pick(rng, 2) == 0) {
    const int entries = 1 + static_cast<int>(pick(rng, 3));
    for (int e = 0; e < entries; ++e) {
      int i = static_cast<int>(pick(rng, n));
      int j = static_cast<int>(pick(rng, n - 1));
      if (j >= i) ++j;
      const int k = static_cast<int>(pick(rng, n));
      out.set_bracket(i, j, k, pick_nonzero(rng, pool));
    }
  } else {
    // [e_1, e_j] = sum_i A_ij e_i over the ideal spanned by e_2..e_n, which
    // satisfies Jacobi for every A.
    for (int j = 1; j < n; ++j)
      for (int i = 1; i < n; ++i)
        if (pick(rng, 3) == 0) out.set_bracket(0, j, i, pick_nonzero(rng, pool));
  }
  return out;
}

NordenStructure<Rational> with_tensor_C(const NordenStructure<Rational>& base, FrameTensor<Rational> C) {
  NordenStructure<Rational> s = base;
  s.frame.C = std::move(C);
  return s;
}

std::vector<std::array<int, 3>> c_unknowns(int n) {
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) out.push_back({k, i, j});
  return out;
}

/// Column u holds the entries of `condition(F)` for C = the u-th unit bracket;
/// F is linear in C, so these columns span the constraint map.
template <typename Condition>
Matrix<Rational> constraint_matrix(const RawSpec& gJ, Condition condition) {
  const int n = gJ.dim();
  const auto base = validate<Rational>(copy_gJ(gJ));
  const auto unknowns = c_unknowns(n);
  std::vector<FrameTensor<Rational>> cols;
  for (const auto& [k, i, j] : unknowns) {
    FrameTensor<Rational> C(n, 1, 2);
    C(k, i, j) = 1;
    C(k, j, i) = -1;
    const auto s = with_tensor_C(base, std::move(C));
    cols.push_back(condition(fundamental_tensor(s, levi_civita(s)).F));
  }
  const int rows = static_cast<int>(cols.front().size());
  Matrix<Rational> m(rows, static_cast<int>(cols.size()));
  for (int c = 0; c < m.cols(); ++c) {
    const auto& e = cols[static_cast<std::size_t>(c)].entries();
    for (int r = 0; r < rows; ++r) m(r, c) = e[static_cast<std::size_t>(r)];
  }
  return m;
}

LinearCSpace space_of(const RawSpec& gJ, Matrix<Rational> m) {
  LinearCSpace out;
  out.dim = gJ.dim();
  out.unknowns = c_unknowns(gJ.dim());
  out.basis = nullspace(std::move(m));
  return out;
}

}  // namespace

RawSpec twisted_norden(int dim, const Matrix<Rational>& P) {
  const RawSpec canon = canonical_norden(dim);
  const auto Pinv = inverse(P);
  if (!Pinv) throw Error("twist matrix is singular");
  Matrix<Rational> g(dim, dim), J(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      g(i, j) = canon.g(i, j);
      J(i, j) = canon.J(i, j);
    }
  const auto g2 = P.transposed() * g * P;
  const auto J2 = *Pinv * J * P;
  RawSpec out(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      out.set_g_raw(i, j, g2(i, j));
      out.set_J(i, j, J2(i, j));
    }
  return out;
}

Matrix<Rational> random_unimodular(int dim, std::mt19937_64& rng, int steps) {
  auto P = Matrix<Rational>::identity(dim);
  for (int s = 0; s < steps; ++s) {
    const int i = static_cast<int>(pick(rng, dim));
    int j = static_cast<int>(pick(rng, dim - 1));
    if (j >= i) ++j;
    const Rational sign = pick(rng, 2) == 0 ? 1 : -1;
    // e_j <- e_j + sign * e_i (column operation)
    for (int r = 0; r < dim; ++r) P(r, j) += sign * P(r, i);
  }
  return P;
}

std::vector<RawSpec> sample_structures(int dim, std::uint64_t seed, int count, const std::vector<Rational>& pool,
                                       SampleStats* stats) {
  if (dim <= 0 || dim % 2 != 0) throw Error("dimension must be even");
  SampleStats local;
  SampleStats& st = stats ? *stats : local;
  std::mt19937_64 rng(seed);
  std::vector<RawSpec> out;
  for (int t = 0; t < count; ++t) {
    ++st.tries;
    RawSpec cand = t == 0 ? canonical_norden(dim) : random_brackets(random_frame(dim, rng), rng, pool);
    try {
      (void)validate<Rational>(cand);
    } catch (const ValidationError& e) {
      ++st.rejections[to_string(e.code())];
      continue;
    }
    ++st.emitted;
    out.push_back(std::move(cand));
  }
  return out;
}

Matrix<Rational> w3_constraint_matrix(const RawSpec& gJ) {
  return constraint_matrix(gJ, [](const FrameTensor<Rational>& F) { return cyclic_sum(F, {0, 1, 2}); });
}

Matrix<Rational> w0_constraint_matrix(const RawSpec& gJ) {
  return constraint_matrix(gJ, [](const FrameTensor<Rational>& F) { return F; });
}

LinearCSpace solve_w3_linear(const RawSpec& gJ) { return space_of(gJ, w3_constraint_matrix(gJ)); }
LinearCSpace solve_w0_linear(const RawSpec& gJ) { return space_of(gJ, w0_constraint_matrix(gJ)); }

RawSpec with_structure_constants(const RawSpec& gJ, const LinearCSpace& space, const std::vector<Rational>& coeffs) {
  if (coeffs.size() != space.basis.size()) throw Error("coefficient count does not match the basis");
  std::vector<Rational> x(space.unknowns.size(), Rational(0));
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    if (sgn(coeffs[m]) == 0) continue;
    for (std::size_t u = 0; u < x.size(); ++u) x[u] += coeffs[m] * space.basis[m][u];
  }
  RawSpec out = copy_gJ(gJ);
  for (std::size_t u = 0; u < x.size(); ++u) {
    const auto& [k, i, j] = space.unknowns[u];
    out.set_bracket(i, j, k, x[u]);
  }
  return out;
}

bool satisfies_jacobi(const RawSpec& raw) {
  const auto jac = jacobiator(c_tensor(raw));
  return std::all_of(jac.entries().begin(), jac.entries().end(), [](const Rational& v) { return sgn(v) == 0; });
}

namespace {

struct TargetName {
  SearchTarget target;
  const char* name;
};

constexpr TargetName kTargets[] = {
    {SearchTarget::W3Nontrivial, "w3-nontrivial"},
    {SearchTarget::W3L2, "w3-l2"},
    {SearchTarget::IsotropicKahlerNonKahler, "isotropic-kahler-nonkahler"},
    {SearchTarget::W3L2KahlerK4d, "w3-l2-kahlerK-4d"},
    {SearchTarget::KahlerNonflat, "kahler-nonflat"},
    {SearchTarget::GenericNonW3, "generic-non-w3"},
};

bool is_zero_tensor(const FrameTensor<Rational>& t) {
  return std::all_of(t.entries().begin(), t.entries().end(), [](const Rational& v) { return sgn(v) == 0; });
}

/// Conditions of the target that require something to vanish, checked in
/// float mode with a loosened threshold. Only these may reject early: a
/// "must be nonzero" condition is left to the exact stage.
bool float_prefilter(SearchTarget t, Analysis<double>& a) {
  constexpr double loose = 1e3;
  const auto& J = a.structure().J;
  switch (t) {
    case SearchTarget::W3Nontrivial: return a.flags().w3.vanishes(loose);
    case SearchTarget::W3L2: return a.flags().w3.vanishes(loose) && l2_residual(a.curvature().R, J).vanishes(loose);
    case SearchTarget::IsotropicKahlerNonKahler:
      return a.flags().w3.vanishes(loose) && scalar_residual(a.scalars().norm_nabla_J, 0.0).vanishes(loose);
    case SearchTarget::W3L2KahlerK4d:
      return a.dim4() && a.flags().w3.vanishes(loose) && l2_residual(a.curvature().R, J).vanishes(loose) &&
             curvature_like_check(a.curvature().K_direct).bianchi.vanishes(loose);
    case SearchTarget::KahlerNonflat: return a.flags().w0.vanishes(loose);
    case SearchTarget::GenericNonW3: return true;
  }
  return true;
}

bool uses_w3_space(SearchTarget t) {
  return t != SearchTarget::KahlerNonflat && t != SearchTarget::GenericNonW3;
}

}  // namespace

SearchTarget parse_target(std::string_view name) {
  for (const auto& t : kTargets)
    if (name == t.name) return t.target;
  throw Error("unknown search target '" + std::string(name) + "'");
}

std::string to_string(SearchTarget t) {
  for (const auto& e : kTargets)
    if (e.target == t) return e.name;
  return "?";
}

std::vector<std::string> target_names() {
  std::vector<std::string> out;
  for (const auto& t : kTargets) out.emplace_back(t.name);
  return out;
}

bool target_holds(SearchTarget t, Analysis<Rational>& a) {
  const auto& f = a.flags();
  const bool nontrivial = f.is_W3 && !f.is_W0;
  switch (t) {
    case SearchTarget::W3Nontrivial: return nontrivial;
    case SearchTarget::W3L2: return nontrivial && a.is_L2();
    case SearchTarget::IsotropicKahlerNonKahler: return nontrivial && sgn(a.scalars().norm_nabla_J) == 0;
    case SearchTarget::W3L2KahlerK4d: return a.dim4() && nontrivial && a.is_L2() && a.K_kahler();
    case SearchTarget::KahlerNonflat: return f.is_W0 && !is_zero_tensor(a.curvature().R);
    case SearchTarget::GenericNonW3: return !f.is_W3;
  }
  return false;
}

bool certify_file(const std::filesystem::path& path, SearchTarget target) {
  const RawSpec raw = read_spec_file(path);
  std::ifstream in(path, std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes != export_spec(raw)) return false;
  Analysis<Rational> a(validate<Rational>(raw));
  if (!target_holds(target, a)) return false;
  return !run_checks(a).any_fail();
}

std::string HuntResult::summary() const {
  std::ostringstream os;
  os << "target: " << to_string(options.target) << '\n'
     << "dim: " << options.dim << '\n'
     << "seed: " << options.seed << '\n'
     << "budget: " << options.budget << '\n'
     << "max-hits: " << options.max_hits << '\n'
     << "tries: " << tries << '\n'
     << "hits: " << hits() << '\n';
  if (files.empty()) {
    os << "result: zero hits within budget; no certified example found\n";
  } else {
    os << "files:\n";
    for (const auto& f : files) os << "  " << f.filename().string() << '\n';
  }
  os << "rejections:\n";
  if (rejections.empty()) os << "  none\n";
  for (const auto& [reason, n] : rejections) os << "  " << reason << ": " << n << '\n';
  return os.str();
}

HuntResult hunt(const HuntOptions& opt) {
  if (opt.dim <= 0 || opt.dim % 2 != 0) throw Error("dimension must be even");
  if (opt.dim > kMaxDim) throw Error("dimension too large");
  if (opt.target == SearchTarget::W3L2KahlerK4d && opt.dim != 4)
    throw Error("target " + to_string(opt.target) + " requires dimension 4");
  HuntResult result;
  result.options = opt;
  std::filesystem::create_directories(opt.out_dir);

  std::mt19937_64 rng(opt.seed);
  const auto pool = default_pool();

  // A fixed catalogue of (g, J) per run: the canonical pair and a few twists.
  constexpr int kFrames = 6;
  std::vector<RawSpec> frames{canonical_norden(opt.dim)};
  for (int f = 1; f < kFrames; ++f) frames.push_back(twisted_norden(opt.dim, random_unimodular(opt.dim, rng, f % 3 + 1)));
  std::vector<std::optional<LinearCSpace>> spaces(frames.size());

  std::set<std::string> seen;
  const auto reject = [&](const std::string& why) { ++result.rejections[why]; };

  for (std::uint64_t t = 0; t < opt.budget && result.hits() < opt.max_hits; ++t) {
    ++result.tries;
    const std::size_t fi = pick(rng, frames.size());
    RawSpec cand;
    if (opt.target == SearchTarget::GenericNonW3) {
      cand = random_brackets(frames[fi], rng, pool);
    } else {
      auto& space = spaces[fi];
      if (!space) space = uses_w3_space(opt.target) ? solve_w3_linear(frames[fi]) : solve_w0_linear(frames[fi]);
      const auto nb = space->basis.size();
      if (nb == 0) {
        reject("empty-space");
        continue;
      }
      static constexpr int kTerms[] = {1, 1, 2, 2, 3};
      const auto terms = std::min<std::size_t>(static_cast<std::size_t>(kTerms[pick(rng, 5)]), nb);
      std::vector<Rational> coeffs(nb, Rational(0));
      for (std::size_t m = 0; m < terms; ++m) {
        std::size_t idx = pick(rng, nb);
        while (sgn(coeffs[idx]) != 0) idx = (idx + 1) % nb;
        coeffs[idx] = pick_nonzero(rng, pool);
      }
      cand = with_structure_constants(frames[fi], *space, coeffs);
    }
    if (!satisfies_jacobi(cand)) {
      reject("jacobi");
      continue;
    }
    try {
      Analysis<double> fa(validate<double>(cand));
      if (!float_prefilter(opt.target, fa)) {
        reject("float-prefilter");
        continue;
      }
      Analysis<Rational> a(validate<Rational>(cand));
      if (!target_holds(opt.target, a)) {
        reject("predicate");
        continue;
      }
      if (run_checks(a).any_fail()) {
        reject("report-fail");
        continue;
      }
    } catch (const ValidationError& e) {
      reject(to_string(e.code()));
      continue;
    }
    const std::string text = export_spec(cand);
    if (!seen.insert(text).second) {
      reject("duplicate");
      continue;
    }
    char name[96];
    std::snprintf(name, sizeof name, "%s-%03zu.norden", to_string(opt.target).c_str(), result.files.size());
    const auto path = opt.out_dir / name;
    write_spec_file(path, cand);
    if (!certify_file(path, opt.target)) throw Error("example " + path.string() + " failed re-certification from disk");
    result.files.push_back(path);
  }

  std::ofstream(opt.out_dir / "summary.txt", std::ios::binary) << result.summary();
  return result;
}

}  // namespace norden
