#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "norden/report.hpp"
#include "norden/search.hpp"
#include "oracles.hpp"

using namespace norden;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("norden-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int oracle_rank(std::vector<oracle::V1> rows) {
  int rank = 0;
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int p = rank;
    while (p < static_cast<int>(rows.size()) && rows[p][c] == 0) ++p;
    if (p == static_cast<int>(rows.size())) continue;
    std::swap(rows[p], rows[rank]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (int j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

// The cyclic sum of F is linear in C; its image of the unit brackets,
// computed with the oracle, spans the constraint row space.
int oracle_w3_nullity(const RawSpec& gJ) {
  const int n = gJ.dim();
  std::vector<oracle::V1> columns;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        auto d = oracle::from_raw(gJ);
        d.C = oracle::zeros3(n);
        d.C[k][i][j] = 1;
        d.C[k][j][i] = -1;
        const auto S = oracle::cyclic3(oracle::fundamental(d, oracle::christoffel(d)));
        oracle::V1 col;
        for (const auto& a : S)
          for (const auto& b : a)
            for (const auto& v : b) col.push_back(v);
        columns.push_back(col);
      }
  // rank of the column set equals rank of the constraint matrix
  return static_cast<int>(columns.size()) - oracle_rank(columns);
}

}  // namespace

TEST(Sampling, DeterministicAndValid) {
  SampleStats st1, st2;
  const auto a = sample_structures(4, 17, 25, default_pool(), &st1);
  const auto b = sample_structures(4, 17, 25, default_pool(), &st2);
  // count is a budget of tries; rejected candidates are not replaced
  EXPECT_EQ(st1.tries, 25u);
  EXPECT_EQ(st1.emitted, a.size());
  ASSERT_GT(a.size(), 10u);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.front(), canonical_norden(4));
  for (const auto& raw : a) EXPECT_NO_THROW(validate<Rational>(raw));
  EXPECT_NE(a, sample_structures(4, 18, 25, default_pool()));
}

TEST(Sampling, RejectsOddDimension) {
  EXPECT_THROW(sample_structures(5, 1, 3, default_pool()), Error);
}

TEST(Frames, TwistIsStillNorden) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    const auto P = random_unimodular(4, rng, 6);
    const auto s = validate<Rational>(twisted_norden(4, P));
    EXPECT_EQ(s.dim(), 4);
  }
}

TEST(LinearSolve, W3NullspaceMatchesOracle) {
  const RawSpec base = canonical_norden(4);
  const auto space = solve_w3_linear(base);
  EXPECT_EQ(space.unknowns.size(), 24u);
  EXPECT_EQ(static_cast<int>(space.basis.size()), oracle_w3_nullity(base));
  EXPECT_EQ(space.basis.size(), 12u);

  std::mt19937_64 rng(8);
  const RawSpec twisted = twisted_norden(4, random_unimodular(4, rng, 5));
  EXPECT_EQ(static_cast<int>(solve_w3_linear(twisted).basis.size()), oracle_w3_nullity(twisted));
}

TEST(LinearSolve, BasisVectorsAreW3WhenJacobiHolds) {
  const RawSpec base = canonical_norden(4);
  const auto space = solve_w3_linear(base);
  int jacobi_ok = 0;
  for (std::size_t m = 0; m < space.basis.size(); ++m) {
    std::vector<Rational> coeffs(space.basis.size(), Rational(0));
    coeffs[m] = 1;
    const RawSpec raw = with_structure_constants(base, space, coeffs);
    if (!satisfies_jacobi(raw)) continue;
    ++jacobi_ok;
    Analysis<Rational> a(validate<Rational>(raw));
    EXPECT_TRUE(a.is_W3()) << m;
  }
  EXPECT_GT(jacobi_ok, 0);
}

TEST(LinearSolve, W0SpaceInsideW3Space) {
  const RawSpec base = canonical_norden(4);
  const auto w0 = solve_w0_linear(base);
  const auto w3 = solve_w3_linear(base);
  EXPECT_LE(w0.basis.size(), w3.basis.size());
  const auto M = w3_constraint_matrix(base);
  for (const auto& v : w0.basis)
    for (int r = 0; r < M.rows(); ++r) {
      Rational s = 0;
      for (int c = 0; c < M.cols(); ++c) s += M(r, c) * v[static_cast<std::size_t>(c)];
      EXPECT_EQ(s, 0);
    }
}

TEST(Jacobi, DetectsViolation) {
  RawSpec raw = canonical_norden(4);
  EXPECT_TRUE(satisfies_jacobi(raw));
  raw.set_bracket(0, 1, 1, Rational(1));  // [e1,e2] = e2
  raw.set_bracket(1, 2, 2, Rational(1));  // [e2,e3] = e3
  EXPECT_FALSE(satisfies_jacobi(raw));
}

TEST(Targets, NamesRoundTrip) {
  for (const auto& n : target_names()) EXPECT_EQ(to_string(parse_target(n)), n);
  EXPECT_THROW(parse_target("nope"), Error);
}

TEST(Hunt, DeterministicAndCertified) {
  HuntOptions o;
  o.target = SearchTarget::W3Nontrivial;
  o.dim = 4;
  o.seed = 7;
  o.budget = 400;
  o.max_hits = 3;
  o.out_dir = scratch("hunt-a");
  const auto r1 = hunt(o);
  auto o2 = o;
  o2.out_dir = scratch("hunt-b");
  const auto r2 = hunt(o2);
  ASSERT_EQ(r1.hits(), 3u);
  EXPECT_EQ(r1.summary(), r2.summary());
  for (std::size_t i = 0; i < r1.files.size(); ++i) {
    EXPECT_EQ(r1.files[i].filename(), r2.files[i].filename());
    EXPECT_EQ(slurp(r1.files[i]), slurp(r2.files[i]));
    EXPECT_TRUE(certify_file(r1.files[i], o.target));
    Analysis<Rational> a(validate<Rational>(read_spec_file(r1.files[i])));
    EXPECT_TRUE(a.is_W3());
    EXPECT_FALSE(a.flags().is_W0);
    EXPECT_FALSE(run_checks(a).any_fail());
  }
  EXPECT_EQ(slurp(o.out_dir / "summary.txt"), r1.summary());
  fs::remove_all(o.out_dir);
  fs::remove_all(o2.out_dir);
}

TEST(Hunt, ZeroHitsIsReportedExplicitly) {
  HuntOptions o;
  o.target = SearchTarget::W3L2KahlerK4d;
  o.dim = 4;
  o.seed = 1;
  o.budget = 50;
  o.out_dir = scratch("hunt-zero");
  const auto r = hunt(o);
  EXPECT_EQ(r.hits(), 0u);
  EXPECT_EQ(r.tries, 50u);
  EXPECT_NE(r.summary().find("zero hits"), std::string::npos);
  fs::remove_all(o.out_dir);
}

TEST(Hunt, FourDimensionalTargetNeedsDimFour) {
  HuntOptions o;
  o.target = SearchTarget::W3L2KahlerK4d;
  o.dim = 6;
  o.budget = 1;
  o.out_dir = scratch("hunt-6");
  EXPECT_THROW(hunt(o), Error);
  fs::remove_all(o.out_dir);
}

TEST(Certify, RejectsWrongTargetAndNonCanonicalBytes) {
  const fs::path dir = scratch("certify");
  fs::create_directories(dir);
  const fs::path p = dir / "x.norden";
  write_spec_file(p, testutil::corpus("generic-4d-a.norden"));
  EXPECT_TRUE(certify_file(p, SearchTarget::GenericNonW3));
  EXPECT_FALSE(certify_file(p, SearchTarget::W3Nontrivial));
  {
    std::ofstream out(p, std::ios::app);
    out << "# trailing comment\n";
  }
  EXPECT_FALSE(certify_file(p, SearchTarget::GenericNonW3));
  fs::remove_all(dir);
}
