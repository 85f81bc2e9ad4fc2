#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace hybridsched;
using testing_support::random_matrix;

TEST(Rational, ParsesExactDecimalsAndFractions) {
  EXPECT_EQ(parse_rational("12"), Rational(12));
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("-0.125"), Rational(-1, 8));
  EXPECT_EQ(parse_rational("2.5E2"), Rational(250));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_rational("7/3"), Rational(7, 3));
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("3x"), std::invalid_argument);
}

TEST(Rational, Ceil) {
  EXPECT_EQ(hybridsched::ceil(Rational(3, 2)), Integer(2));
  EXPECT_EQ(hybridsched::ceil(Rational(4)), Integer(4));
  EXPECT_EQ(hybridsched::ceil(Rational(0)), Integer(0));
  EXPECT_TRUE(is_integer(Rational(6, 3)));
  EXPECT_FALSE(is_integer(Rational(7, 3)));
}

TEST(DemandMatrix, RejectsNegativeAndEmpty) {
  EXPECT_THROW(DemandMatrix(0), std::invalid_argument);
  DemandMatrix m(2);
  EXPECT_THROW(m.set(0, 1, -1), std::invalid_argument);
  EXPECT_THROW((DemandMatrix{{1, 2}, {3}}), std::invalid_argument);
}

TEST(Stats, TwoByTwo) {
  MatrixStats s = stats(DemandMatrix{{2, 0}, {1, 3}});
  EXPECT_EQ(s.rho, 4);
  EXPECT_EQ(s.tau, 2u);
  EXPECT_DOUBLE_EQ(s.density, 0.75);
}

TEST(Stats, ZeroMatrix) {
  MatrixStats s = stats(DemandMatrix(3));
  EXPECT_EQ(s.rho, 0);
  EXPECT_EQ(s.tau, 0u);
  EXPECT_DOUBLE_EQ(s.density, 0.0);
}

TEST(Stats, FivePortFixture) {
  MatrixStats s = stats(testing_support::five_port_fixture());
  EXPECT_EQ(s.rho, 102);
  EXPECT_EQ(s.tau, 5u);
  EXPECT_EQ(testing_support::five_port_fixture().col_sum(4), 102);
}

TEST(Bistochastic, SmallCases) {
  DemandMatrix m{{1, 2}, {2, 1}};
  EXPECT_TRUE(is_k_bistochastic(m, 3));
  EXPECT_FALSE(is_k_bistochastic(m, 4));
  EXPECT_TRUE(is_k_bistochastic(DemandMatrix(2), 0));
}

TEST(FabricParams, Check) {
  EXPECT_NO_THROW((FabricParams{2, 0, 1, 0}.check()));
  EXPECT_THROW((FabricParams{2, -1, 1, 0}.check()), std::invalid_argument);
  EXPECT_THROW((FabricParams{2, 1, 0, 0}.check()), std::invalid_argument);
  EXPECT_THROW((FabricParams{2, 1, 1, 2}.check()), std::invalid_argument);
  EXPECT_EQ((FabricParams{2, 20, 100, 10}.quantum()), 2000);
}

// Independent recomputation of the statistics.
MatrixStats reference_stats(const DemandMatrix& d) {
  const std::size_t n = d.size();
  MatrixStats s{0, 0, 0, 0};
  for (std::size_t a = 0; a < n; ++a) {
    Rational r = 0, c = 0;
    std::size_t rn = 0, cn = 0;
    for (std::size_t b = 0; b < n; ++b) {
      r += d(a, b);
      c += d(b, a);
      rn += d(a, b) != 0;
      cn += d(b, a) != 0;
    }
    s.rho = std::max({s.rho, r, c});
    s.tau = std::max({s.tau, rn, cn});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s.nnz += d(i, j) != 0;
  s.density = static_cast<double>(s.nnz) / static_cast<double>(n * n);
  return s;
}

TEST(StatsProperty, MatchesReferenceAndBounds) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 500; ++iter) {
    std::size_t n = 1 + iter % 9;
    DemandMatrix d = random_matrix(rng, n, 0.1 + (iter % 10) / 10.0, 1000, iter % 3 == 0);
    MatrixStats s = stats(d), ref = reference_stats(d);
    ASSERT_EQ(s.rho, ref.rho);
    ASSERT_EQ(s.tau, ref.tau);
    ASSERT_EQ(s.nnz, ref.nnz);
    ASSERT_DOUBLE_EQ(s.density, ref.density);
    ASSERT_LE(s.rho, d.max_entry() * static_cast<long>(n));
    ASSERT_GE(s.rho * static_cast<long>(n), d.total());
    ASSERT_GE(s.rho, d.max_entry());
    ASSERT_EQ(s.tau == 0, s.rho == 0);
    ASSERT_EQ(s.density == 0.0, s.rho == 0);
  }
}

TEST(StatsProperty, PermutationInvariant) {
  std::mt19937_64 rng(12);
  for (int iter = 0; iter < 300; ++iter) {
    std::size_t n = 1 + iter % 8;
    DemandMatrix d = random_matrix(rng, n, 0.5, 100);
    std::vector<std::size_t> pr(n), pc(n);
    std::iota(pr.begin(), pr.end(), std::size_t{0});
    std::iota(pc.begin(), pc.end(), std::size_t{0});
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    DemandMatrix q(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q.set(pr[i], pc[j], d(i, j));
    MatrixStats a = stats(d), b = stats(q);
    ASSERT_EQ(a.rho, b.rho);
    ASSERT_EQ(a.tau, b.tau);
    ASSERT_DOUBLE_EQ(a.density, b.density);
  }
}
