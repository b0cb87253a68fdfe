#include <gtest/gtest.h>

#include "support.hpp"

using namespace derivkit;
using testgen::v;

TEST(TLie, DiagonalTwo) {
  // (e1|e2 - e2|e1)^2 = e1|e2 + e2|e1, so the closure is two-dimensional
  const FinAlg d2 = diagonal_algebra(2);
  const Subspace t = tlie_subspace(d2);
  EXPECT_EQ(t.dim(), 2u);
  EXPECT_TRUE(t.contains(simple_tensor(v({1, 0}), v({0, 1}))));
  EXPECT_TRUE(t.contains(simple_tensor(v({0, 1}), v({1, 0}))));
}

TEST(TLie, MatrixTwo) {
  EXPECT_EQ(tlie_subspace(matrix_algebra(2)).dim(), 9u);
}

TEST(TLie, TrivialUnitalAlgebra) {
  const FinAlg one({"1"}, {{{0, 1}}}, v({1}));
  EXPECT_EQ(tlie_subspace(one).dim(), 0u);
  EXPECT_EQ(nlie_subspace(one).dim(), 0u);
  EXPECT_TRUE(decide_L_property(one).equal);
}

TEST(NLie, Dimensions) {
  EXPECT_EQ(nlie_subspace(matrix_algebra(2)).dim(), 9u);
  for (std::size_t n = 1; n <= 4; ++n)
    EXPECT_EQ(nlie_subspace(diagonal_algebra(n)).dim(), n * n - n);
}

TEST(NLie, ExcludesOneTensorOne) {
  for (const FinAlg& b : {matrix_algebra(2), diagonal_algebra(3), poly_quotient(v({-2, 0, 0, 1}))}) {
    const Vector one = *b.unit();
    EXPECT_FALSE(nlie_subspace(b).contains(simple_tensor(one, one)));
  }
}

TEST(LProperty, MatrixAlgebras) {
  for (std::size_t n : {2u, 3u}) {
    const auto verdict = decide_L_property(matrix_algebra(n));
    EXPECT_TRUE(verdict.equal);
    EXPECT_EQ(verdict.tlie_dim, (n * n - 1) * (n * n - 1));
    EXPECT_FALSE(verdict.witness.has_value());
  }
}

TEST(LProperty, SingleGenerator) {
  for (const Vector& p : {v({0, 0, 1}), v({0, 0, 0, 1}), v({-2, 0, 0, 1}), v({0, -1, 0, 0, 1})}) {
    const std::size_t d = p.size() - 1;
    const auto verdict = decide_L_property(poly_quotient(p));
    EXPECT_TRUE(verdict.equal);
    EXPECT_EQ(verdict.nlie_dim, d * d - d);
  }
}

TEST(LProperty, DirectSum) {
  EXPECT_TRUE(decide_L_property(direct_sum(matrix_algebra(2), poly_quotient(v({0, 0, 1})))).equal);
}

TEST(LProperty, NonUnitalRejected) {
  const FinAlg zero({"a", "b"}, std::vector<SparseVector>(4));
  EXPECT_THROW(tlie_subspace(zero), PreconditionError);
  EXPECT_THROW(nlie_subspace(zero), PreconditionError);
  EXPECT_THROW(decide_L_property(zero), PreconditionError);
  EXPECT_THROW(semiideal_verify(zero), PreconditionError);
}

TEST(Semiideal, MatrixTwo) {
  const auto r = semiideal_verify(matrix_algebra(2));
  EXPECT_EQ(r.left_ideal_dim, 12u);
  EXPECT_EQ(r.right_ideal_dim, 12u);
  EXPECT_EQ(r.meet_dim, 9u);
  EXPECT_TRUE(r.ok());
}

TEST(Semiideal, Commutative) {
  const auto d3 = semiideal_verify(diagonal_algebra(3));
  EXPECT_EQ(d3.left_ideal_dim, 6u);
  EXPECT_EQ(d3.right_ideal_dim, 6u);
  EXPECT_EQ(d3.meet_dim, 6u);
  EXPECT_TRUE(d3.ok());
  const auto p = semiideal_verify(poly_quotient(v({-2, 0, 0, 1})));
  EXPECT_EQ(p.meet_dim, 6u);
  EXPECT_EQ(p.nlie_dim, 6u);
  EXPECT_TRUE(p.ok());
}

TEST(Invariants, TLieInsideNLie) {
  testgen::Gen g(42);
  for (int trial = 0; trial < 200; ++trial) {
    const FinAlg b = g.algebra();
    const FinAlg sq = tensor_square_op(b);
    const Subspace t = tlie_subspace(b, sq);
    const Subspace nl = nlie_subspace(b);
    ASSERT_TRUE(t.is_subspace_of(nl)) << "trial " << trial;
    // Independent check on a random element: both multiplications vanish.
    Vector x = zero_vector(sq.dim());
    for (const auto& basis : t.basis())
      axpy(x, g.rational(), basis);
    const auto maps = multiplication_maps(b);
    ASSERT_TRUE(is_zero(maps.m.apply(x)));
    ASSERT_TRUE(is_zero(maps.m_op.apply(x)));
  }
}

TEST(Invariants, NLieIsSubalgebra) {
  testgen::Gen g(43);
  for (int trial = 0; trial < 40; ++trial) {
    const FinAlg b = g.algebra();
    const FinAlg sq = tensor_square_op(b);
    const Subspace nl = nlie_subspace(b);
    ASSERT_EQ(generated_subalgebra(sq, nl.basis()), nl);
  }
}
