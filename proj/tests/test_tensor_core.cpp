#include <gtest/gtest.h>

#include <random>

#include "norden/tensor_ops.hpp"
#include "oracles.hpp"

using namespace norden;

namespace {

FrameTensor<Rational> random_tensor(int dim, int con, int cov, std::mt19937_64& rng) {
  FrameTensor<Rational> t(dim, con, cov);
  for (auto& e : t.entries()) e = testutil::q(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1);
  return t;
}

MetricPair<Rational> metric_of(const RawSpec& raw) {
  FrameTensor<Rational> g(raw.dim(), 0, 2);
  for (int i = 0; i < raw.dim(); ++i)
    for (int j = 0; j < raw.dim(); ++j) g(i, j) = raw.g(i, j);
  return MetricPair<Rational>(g);
}

}  // namespace

TEST(FrameTensor, LayoutIsRowMajorWithUpperAxesFirst) {
  FrameTensor<Rational> t(3, 1, 2);
  EXPECT_EQ(t.size(), 27u);
  t(1, 2, 0) = 5;
  const std::array<int, 3> idx{1, 2, 0};
  EXPECT_EQ(t.offset(idx), 1u * 9 + 2 * 3 + 0);
  EXPECT_EQ(t.entries()[15], 5);
  EXPECT_FALSE(t.is_covariant_axis(0));
  EXPECT_TRUE(t.is_covariant_axis(1));
}

TEST(FrameTensor, RejectsBadShapes) {
  EXPECT_THROW(FrameTensor<Rational>(0, 0, 2), TensorError);
  EXPECT_THROW(FrameTensor<Rational>(kMaxDim + 1, 0, 1), TensorError);
  EXPECT_THROW(FrameTensor<Rational>(2, -1, 1), TensorError);
  FrameTensor<Rational> a(2, 0, 2), b(2, 1, 1);
  EXPECT_THROW(a += b, TensorError);
  EXPECT_THROW((void)a.value(), TensorError);
}

TEST(FrameTensor, Arithmetic) {
  std::mt19937_64 rng(3);
  const auto a = random_tensor(3, 0, 2, rng);
  const auto b = random_tensor(3, 0, 2, rng);
  EXPECT_EQ((a + b) - b, a);
  EXPECT_EQ(a * Rational(2), a + a);
  EXPECT_EQ(-a + a, FrameTensor<Rational>(3, 0, 2));
}

TEST(Contract, MatchesNestedLoopsOnEveryAxisPair) {
  const RawSpec raw = testutil::corpus("w3-4d-b.norden");
  const auto d = oracle::from_raw(raw);
  const auto metric = metric_of(raw);
  std::mt19937_64 rng(11);
  const auto L = random_tensor(4, 0, 4, rng);
  oracle::V4 Lv = oracle::zeros4(4);
  for_each_multi_index(4, 4, [&](std::span<const int> i) { Lv[i[0]][i[1]][i[2]][i[3]] = L.at(i); });
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      const auto got = contract(L, a, b, metric);
      EXPECT_TRUE(oracle::equals2(got, oracle::contract4(d, Lv, a, b))) << a << "," << b;
      // Reversed axis order gives the same result for a symmetric g^{ij}.
      EXPECT_EQ(got, contract(L, b, a, metric));
    }
}

TEST(Contract, MixedVarianceIsTrace) {
  const auto metric = metric_of(canonical_norden(2));
  FrameTensor<Rational> E(2, 1, 1);
  E(0, 0) = 3;
  E(1, 1) = -1;
  E(0, 1) = 7;
  EXPECT_EQ(contract(E, 0, 1, metric).value(), 2);
  EXPECT_EQ(trace(E, 0, 1).value(), 2);
}

TEST(Contract, TwoUpperAxesUseTheMetric) {
  const auto metric = metric_of(canonical_norden(2));  // g = diag(1, -1)
  FrameTensor<Rational> t(2, 2, 0);
  t(0, 0) = 1;
  t(1, 1) = 1;
  EXPECT_EQ(contract(t, 0, 1, metric).value(), 0);
}

TEST(Contract, Errors) {
  const auto metric = metric_of(canonical_norden(2));
  FrameTensor<Rational> v(2, 0, 1);
  EXPECT_THROW(contract(v, 0, 1, metric), TensorError);  // rank underflow
  FrameTensor<Rational> t(2, 0, 2);
  EXPECT_THROW(contract(t, 0, 2, metric), TensorError);
  EXPECT_THROW(contract(t, 1, 1, metric), TensorError);
  FrameTensor<Rational> big(4, 0, 2);
  EXPECT_THROW(contract(big, 0, 1, metric), TensorError);  // frame mismatch
}

TEST(CyclicSum, MatchesNestedLoops) {
  std::mt19937_64 rng(5);
  const auto F = random_tensor(4, 0, 3, rng);
  oracle::V3 Fv = oracle::zeros3(4);
  for_each_multi_index(4, 3, [&](std::span<const int> i) { Fv[i[0]][i[1]][i[2]] = F.at(i); });
  EXPECT_TRUE(oracle::equals3(cyclic_sum(F, {0, 1, 2}), oracle::cyclic3(Fv)));

  const auto L = random_tensor(3, 0, 4, rng);
  oracle::V4 Lv = oracle::zeros4(3);
  for_each_multi_index(3, 4, [&](std::span<const int> i) { Lv[i[0]][i[1]][i[2]][i[3]] = L.at(i); });
  EXPECT_TRUE(oracle::equals4(cyclic_sum(L, {0, 1, 2}), oracle::cyclic4(Lv)));
}

TEST(CyclicSum, InvariantUnderRotation) {
  std::mt19937_64 rng(9);
  const auto F = random_tensor(3, 0, 3, rng);
  const auto S = cyclic_sum(F, {0, 1, 2});
  EXPECT_EQ(S, permute_slots(S, {1, 2, 0}));
  EXPECT_THROW(cyclic_sum(F, {0, 1, 3}), TensorError);
  EXPECT_THROW(cyclic_sum(F, {0, 0, 1}), TensorError);
  FrameTensor<Rational> mixed(3, 1, 2);
  EXPECT_THROW(cyclic_sum(mixed, {0, 1, 2}), TensorError);
}

TEST(RaiseLower, RoundTrip) {
  const RawSpec raw = testutil::corpus("w3-4d-a.norden");
  const auto metric = metric_of(raw);
  std::mt19937_64 rng(2);
  const auto R = random_tensor(4, 1, 3, rng);
  const auto low = raise_lower(R, 0, IndexDirection::Down, metric);
  EXPECT_EQ(low.con_rank(), 0);
  EXPECT_EQ(low.cov_rank(), 4);
  // The lowered index moves to the last slot.
  const auto d = oracle::from_raw(raw);
  for (int l = 0; l < 4; ++l)
    for (int w = 0; w < 4; ++w) {
      Rational s = 0;
      for (int m = 0; m < 4; ++m) s += R(m, 1, 2, 3) * d.g[m][w];
      EXPECT_EQ(low(1, 2, 3, w), s);
    }
  EXPECT_EQ(raise_lower(low, 3, IndexDirection::Up, metric), R);
  EXPECT_THROW(raise_lower(R, 4, IndexDirection::Down, metric), TensorError);
  EXPECT_THROW(raise_lower(R, 1, IndexDirection::Down, metric), TensorError);  // already covariant
}

TEST(ApplyEndomorphism, SubstitutesIntoSlot) {
  const RawSpec raw = canonical_norden(4);
  FrameTensor<Rational> J(4, 1, 1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) J(i, j) = raw.J(i, j);
  std::mt19937_64 rng(4);
  const auto t = random_tensor(4, 0, 2, rng);
  const auto tj = apply_endomorphism(t, 1, J);
  // J e_1 = e_3 (0-based: J e_0 = e_2).
  for (int x = 0; x < 4; ++x) EXPECT_EQ(tj(x, 0), t(x, 2));
  EXPECT_EQ(apply_endomorphism(tj, 1, J), -t);
  EXPECT_EQ(compose(J, J), -FrameTensor<Rational>::identity(4));
}

TEST(Matrix, RankInverseNullspace) {
  Matrix<Rational> m(3, 3);
  int v = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = v++;
  EXPECT_EQ(rank(m), 2);
  EXPECT_FALSE(inverse(m).has_value());
  const auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 1u);
  for (int i = 0; i < 3; ++i) {
    Rational s = 0;
    for (int j = 0; j < 3; ++j) s += m(i, j) * ns[0][static_cast<std::size_t>(j)];
    EXPECT_EQ(s, 0);
  }
  m(2, 2) = 10;
  const auto inv = inverse(m);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(m * *inv, Matrix<Rational>::identity(3));
}

TEST(Matrix, InertiaHandlesZeroDiagonal) {
  Matrix<Rational> h(2, 2);  // hyperbolic plane: zero diagonal
  h(0, 1) = h(1, 0) = 1;
  const auto in = inertia(h);
  EXPECT_EQ(in.positive, 1);
  EXPECT_EQ(in.negative, 1);
  EXPECT_EQ(in.zero, 0);
  Matrix<Rational> s(3, 3);
  s(0, 0) = 2;
  s(1, 1) = 0;
  s(2, 2) = -5;
  const auto in2 = inertia(s);
  EXPECT_EQ(in2.positive, 1);
  EXPECT_EQ(in2.negative, 1);
  EXPECT_EQ(in2.zero, 1);
}

TEST(ResidualTest, FloatToleranceIsRelative) {
  Residual<double> r{1e-8, 1e3};
  EXPECT_TRUE(r.vanishes());
  Residual<double> big{1e-3, 1.0};
  EXPECT_FALSE(big.vanishes());
  EXPECT_TRUE((Residual<double>{1e-7, 0.0}).vanishes(1e3));
  EXPECT_TRUE((Residual<Rational>{Rational(0), Rational(5)}).vanishes());
  EXPECT_FALSE((Residual<Rational>{Rational(1, 1000000000), Rational(0)}).vanishes());
}
