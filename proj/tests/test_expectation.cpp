#include <gtest/gtest.h>

#include "support.hpp"

using namespace derivkit;
using testgen::mat;

namespace {

Rational trace(const Matrix& x) {
  Rational t = 0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    t += x(i, i);
  return t;
}

} // namespace

TEST(SignedPermutations, GroupOrder) {
  EXPECT_EQ(signed_permutations(1).size(), 2u);
  EXPECT_EQ(signed_permutations(2).size(), 8u);
  EXPECT_EQ(signed_permutations(3).size(), 48u);
  for (const auto& g : signed_permutations(3))
    EXPECT_EQ(g * g.transpose(), Matrix::identity(3));
}

TEST(Average, Examples) {
  EXPECT_EQ(signed_perm_average(2, mat(2, 2, {1, 2, 3, 4})), Rational(5, 2) * Matrix::identity(2));
  EXPECT_EQ(signed_perm_average(2, mat(2, 2, {0, 1, 0, 0})), Matrix(2, 2));
  EXPECT_EQ(signed_perm_average(3, Matrix::identity(3)), Matrix::identity(3));
}

TEST(Average, Errors) {
  EXPECT_THROW(signed_perm_average(5, Matrix::identity(5)), PreconditionError);
  EXPECT_THROW(signed_perm_average(2, Matrix::identity(3)), PreconditionError);
  EXPECT_THROW(signed_perm_average(0, Matrix(0, 0)), PreconditionError);
}

TEST(Average, RandomEqualsNormalizedTrace) {
  testgen::Gen g(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + g.index(4);
    const Matrix x = g.matrix(n, n);
    const Matrix e = signed_perm_average(n, x);
    ASSERT_EQ(e, Rational(trace(x) / static_cast<long>(n)) * Matrix::identity(n));
    ASSERT_EQ(signed_perm_average(n, e), e);
  }
}

TEST(FactorExpectation, MatchesPartialTrace) {
  testgen::Gen g(32);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + g.index(2), m = 1 + g.index(3);
    const Matrix x = g.matrix(n * m, n * m);
    const Matrix e = factor_expectation(n, m, x);
    ASSERT_EQ(e, kron(Rational(1, static_cast<unsigned long>(m)) * partial_trace_second(n, m, x), Matrix::identity(m)));
    ASSERT_EQ(factor_expectation(n, m, e), e);
  }
}

TEST(FactorExpectation, FixesFirstFactor) {
  const Matrix a = mat(2, 2, {1, 2, 3, 4});
  const Matrix x = kron(a, Matrix::identity(2));
  EXPECT_EQ(factor_expectation(2, 2, x), x);
  EXPECT_THROW(factor_expectation(2, 2, Matrix::identity(3)), PreconditionError);
}

TEST(ExpectationInDlie, SmallMatrixAlgebras) {
  for (std::size_t n : {2u, 3u}) {
    const auto r = expectation_in_dlie(n);
    EXPECT_TRUE(r.member) << n;
    EXPECT_TRUE(r.coords.has_value());
    EXPECT_TRUE(r.summands_in_nlie);
    EXPECT_TRUE(r.average_matches);
    EXPECT_TRUE(r.kills_scalars);
    EXPECT_EQ(r.dlie_dim, (n * n - 1) * (n * n - 1));
  }
  EXPECT_THROW(expectation_in_dlie(4), PreconditionError);
}
