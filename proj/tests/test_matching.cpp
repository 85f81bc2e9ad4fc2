#include "support.hpp"

#include <gtest/gtest.h>

using namespace hybridsched;
using testing_support::random_matrix;

namespace {

// Exhaustive search: does any permutation keep every matched entry >= gamma?
bool matching_exists(const DemandMatrix& d, const Rational& gamma) {
  for (const auto& p : all_permutations(d.size())) {
    bool ok = true;
    for (std::size_t i = 0; i < d.size() && ok; ++i) ok = d(i, p[i]) >= gamma;
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST(Permutation, Validation) {
  EXPECT_NO_THROW(PermutationMatrix({2, 0, 1}));
  EXPECT_THROW(PermutationMatrix({0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(PermutationMatrix({0, 3, 1}), std::invalid_argument);
  auto id = PermutationMatrix::identity(3);
  EXPECT_TRUE(id.connects(1, 1));
  EXPECT_FALSE(id.connects(1, 2));
}

TEST(Threshold, TwoByTwo) {
  DemandMatrix d{{1, 2}, {2, 1}};
  auto p = perfect_matching_at_threshold(d, 2);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->ports(), (std::vector<std::size_t>{1, 0}));
  EXPECT_FALSE(perfect_matching_at_threshold(d, 3));
  EXPECT_THROW(perfect_matching_at_threshold(d, 0), std::invalid_argument);
}

TEST(BinarySupport, Examples) {
  BoolMatrix b = binary_support(DemandMatrix{{0, 5}, {3, 0}});
  EXPECT_EQ(b, (BoolMatrix{{false, true}, {true, false}}));
  BoolMatrix z = binary_support(DemandMatrix(2));
  EXPECT_EQ(z, (BoolMatrix{{false, false}, {false, false}}));
}

TEST(BinarySupport, ThresholdAtMinNonzeroIsSupport) {
  DemandMatrix d{{0, 5, 2}, {3, 0, 0}, {0, 2, 7}};
  BoolMatrix at_min(3, std::vector<bool>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) at_min[i][j] = d(i, j) >= 2;
  EXPECT_EQ(binary_support(d), at_min);
}

TEST(Matching, Deterministic) {
  DemandMatrix d{{3, 3, 3}, {3, 3, 3}, {3, 3, 3}};
  auto first = perfect_matching_at_threshold(d, 1);
  ASSERT_TRUE(first);
  for (int k = 0; k < 5; ++k) EXPECT_EQ(perfect_matching_at_threshold(d, 1), first);
}

TEST(MatchingProperty, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 2000; ++iter) {
    std::size_t n = 1 + iter % 5;
    DemandMatrix d = random_matrix(rng, n, 0.3 + (iter % 7) / 10.0, 16);
    Rational gamma = 1 + iter % 12;
    auto p = perfect_matching_at_threshold(d, gamma);
    ASSERT_EQ(p.has_value(), matching_exists(d, gamma)) << d << " gamma " << gamma;
    if (p) {
      ASSERT_TRUE(PermutationMatrix::is_bijection(p->ports()));
      ASSERT_GE(min_matched(d, *p), gamma);
      // Monotone: a smaller threshold still admits a matching.
      ASSERT_TRUE(perfect_matching_at_threshold(d, gamma / 2));
    }
  }
}

TEST(MatchingProperty, CompleteOnStuffedSupport) {
  std::mt19937_64 rng(32);
  for (int iter = 0; iter < 1000; ++iter) {
    std::size_t n = 1 + iter % 10;
    DemandMatrix d = random_matrix(rng, n, 0.2 + (iter % 8) / 10.0, 1000, iter % 2 == 0);
    if (d.is_zero()) continue;
    StuffedDemand s = stuff(d);
    Rational min_nz = s.matrix.max_entry();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (s.matrix(i, j) > 0) min_nz = std::min(min_nz, s.matrix(i, j));
    ASSERT_TRUE(perfect_matching_at_threshold(s.matrix, min_nz)) << s.matrix;
    ASSERT_TRUE(perfect_matching(binary_support(s.matrix)));
  }
}
