#include <gtest/gtest.h>

#include "norden/analysis.hpp"
#include "oracles.hpp"

using namespace norden;

namespace {

struct Case {
  std::string name;
  RawSpec raw;
  Analysis<Rational> a;
};

std::vector<Case> corpus() {
  std::vector<Case> out;
  for (const auto& p : testutil::corpus_files()) {
    RawSpec raw = read_spec_file(p);
    out.push_back({p.filename().string(), raw, Analysis<Rational>(validate<Rational>(raw))});
  }
  return out;
}

// g^{ij} rho(e_i, J e_j)
Rational trace_with_J(const oracle::Data& d, const oracle::V2& rho) {
  Rational s = 0;
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      for (int m = 0; m < d.n; ++m) s += d.gi[i][j] * rho[i][m] * d.J[m][j];
  return s;
}

}  // namespace

TEST(Ricci, MatchesOracleTraces) {
  for (auto& c : corpus()) {
    const auto d = oracle::from_raw(c.raw);
    const auto R = oracle::curvature(d, oracle::christoffel(d));
    const auto rho = oracle::ricci(d, R);
    const auto& sc = c.a.scalars();
    EXPECT_TRUE(oracle::equals2(sc.R.rho, rho)) << c.name;
    EXPECT_EQ(sc.R.tau, oracle::scalar(d, rho)) << c.name;
    EXPECT_EQ(sc.R.tau_star, trace_with_J(d, rho)) << c.name;
  }
}

TEST(Ricci, RhoIsSymmetricForLeviCivita) {
  for (auto& c : corpus()) {
    const auto& rho = c.a.scalars().R.rho;
    EXPECT_EQ(rho, permute_slots(rho, {1, 0})) << c.name;
  }
}

TEST(Scalars, TauStarStarAndNormMatchOracle) {
  for (auto& c : corpus()) {
    const auto d = oracle::from_raw(c.raw);
    const auto G = oracle::christoffel(d);
    const auto R = oracle::curvature(d, G);
    const int n = d.n;
    Rational tss = 0, norm = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int s = 0; s < n; ++s) {
            if (d.gi[i][j] == 0 || d.gi[k][s] == 0) continue;
            Rational r = 0;  // R(e_i, e_k, J e_s, J e_j)
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b) r += d.J[a][s] * d.J[b][j] * R[i][k][a][b];
            tss += d.gi[i][j] * d.gi[k][s] * r;
            norm += d.gi[i][j] * d.gi[k][s] * oracle::gdot(d, oracle::nablaJ(d, G, i, k), oracle::nablaJ(d, G, j, s));
          }
    EXPECT_EQ(c.a.scalars().tau_star_star, tss) << c.name;
    EXPECT_EQ(c.a.scalars().norm_nabla_J, norm) << c.name;
  }
}

TEST(Scalars, W3NormIdentity) {
  int checked = 0;
  for (auto& c : corpus()) {
    if (!c.a.is_W3()) continue;
    ++checked;
    EXPECT_TRUE(w3_norm_identity_residual(c.a.structure(), c.a.dJ()).vanishes()) << c.name;
  }
  EXPECT_GE(checked, 5);
}

TEST(Scalars, W3NormIdentityFailsOffClass) {
  bool failed = false;
  for (auto& c : corpus())
    if (!c.a.is_W3()) failed = failed || !w3_norm_identity_residual(c.a.structure(), c.a.dJ()).vanishes();
  EXPECT_TRUE(failed);
}

TEST(Scalars, RelationsOnQuasiKahler) {
  for (auto& c : corpus()) {
    if (!c.a.is_W3()) continue;
    const auto r = section3_relations(c.a.scalars(), c.a.structure().J);
    EXPECT_TRUE(r.ricci_relation.vanishes()) << c.name;
    EXPECT_TRUE(r.scalar_relation.vanishes()) << c.name;
    EXPECT_TRUE(r.norm_tau_relation.vanishes()) << c.name;
    EXPECT_TRUE(r.tau_relation.vanishes()) << c.name;
    EXPECT_TRUE(r.tau_p_relation.vanishes()) << c.name;
    EXPECT_TRUE(r.tau_k_relation.vanishes()) << c.name;
  }
}

TEST(Scalars, TauRelationsHoldWithNonzeroNorm) {
  // The relations are not vacuous: some shipped example has |∇J|^2 != 0.
  bool nonzero = false;
  for (auto& c : corpus())
    if (c.a.is_W3()) nonzero = nonzero || c.a.scalars().norm_nabla_J != 0;
  EXPECT_TRUE(nonzero);
}

TEST(Isotropic, KahlerIffTauMatches) {
  int iso = 0;
  for (auto& c : corpus()) {
    if (!c.a.is_W3()) continue;
    IsotropicKahler<Rational> r;
    ASSERT_NO_THROW(r = isotropic_kahler_check(c.a.scalars())) << c.name;
    EXPECT_EQ(r.isotropic, r.tau_equals_tau_K) << c.name;
    if (r.isotropic && !c.a.flags().is_W0) ++iso;
  }
  EXPECT_GT(iso, 0);  // a non-Kähler isotropic example is present
}

TEST(Isotropic, NamedExample) {
  Analysis<Rational> a(validate<Rational>(testutil::corpus("isotropic-kahler-4d.norden")));
  EXPECT_FALSE(a.flags().is_W0);
  EXPECT_EQ(a.scalars().norm_nabla_J, 0);
  EXPECT_EQ(a.scalars().R.tau, a.scalars().K.tau);
}

TEST(Isotropic, MismatchThrows) {
  ScalarReport<Rational> sc;
  sc.norm_nabla_J = 0;
  sc.R.tau = 1;
  sc.K.tau = 2;
  EXPECT_THROW(isotropic_kahler_check(sc), BiconditionalViolation);
  sc.norm_nabla_J = 8;
  sc.K.tau = 1;
  EXPECT_THROW(isotropic_kahler_check(sc), BiconditionalViolation);
}

TEST(FloatMode, ScalarsAgree) {
  for (auto& c : corpus()) {
    Analysis<double> f(validate<double>(c.raw));
    const auto& e = c.a.scalars();
    const auto& x = f.scalars();
    EXPECT_NEAR(x.R.tau, e.R.tau.get_d(), 1e-9) << c.name;
    EXPECT_NEAR(x.K.tau, e.K.tau.get_d(), 1e-9) << c.name;
    EXPECT_NEAR(x.norm_nabla_J, e.norm_nabla_J.get_d(), 1e-9) << c.name;
  }
}
