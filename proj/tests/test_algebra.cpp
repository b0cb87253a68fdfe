#include <gtest/gtest.h>

#include "support.hpp"

using namespace derivkit;
using testgen::v;

namespace {

Vector e(const FinAlg& a, const std::string& label) {
  const auto& ls = a.labels();
  const auto it = std::find(ls.begin(), ls.end(), label);
  if (it == ls.end())
    throw std::out_of_range(label);
  return a.basis_element(static_cast<std::size_t>(it - ls.begin()));
}

} // namespace

TEST(StandardAlgebras, MatrixUnits) {
  const FinAlg m2 = matrix_algebra(2);
  EXPECT_EQ(m2.dim(), 4u);
  EXPECT_EQ(m2.multiply(e(m2, "e11"), e(m2, "e12")), e(m2, "e12"));
  EXPECT_TRUE(is_zero(m2.multiply(e(m2, "e12"), e(m2, "e11"))));
  EXPECT_EQ(*m2.unit(), v({1, 0, 0, 1}));
  EXPECT_TRUE(validate_algebra(matrix_algebra(3)).valid());
}

TEST(StandardAlgebras, Diagonal) {
  const FinAlg d3 = diagonal_algebra(3);
  EXPECT_EQ(d3.dim(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(d3.multiply(d3.basis_element(i), d3.basis_element(j)),
                d3.multiply(d3.basis_element(j), d3.basis_element(i)));
    }
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_EQ(d3.multiply(d3.basis_element(i), d3.basis_element(i)), d3.basis_element(i));
}

TEST(StandardAlgebras, TruncatedPolynomial) {
  const FinAlg p = poly_quotient(v({0, 0, 0, 1}));
  EXPECT_EQ(p.dim(), 3u);
  EXPECT_TRUE(is_zero(p.multiply(e(p, "x"), e(p, "x^2"))));
  EXPECT_EQ(p.multiply(e(p, "x"), e(p, "x")), e(p, "x^2"));
}

TEST(StandardAlgebras, QuotientReducesModulus) {
  // x^3 = 2 in Q[x]/(x^3 - 2)
  const FinAlg p = poly_quotient(v({-2, 0, 0, 1}));
  EXPECT_EQ(p.multiply(e(p, "x"), e(p, "x^2")), v({2, 0, 0}));
  EXPECT_EQ(power(p, e(p, "x"), 4), v({0, 2, 0}));
  EXPECT_THROW(poly_quotient(v({1, 2})), PreconditionError);
  EXPECT_THROW(poly_quotient(v({3})), PreconditionError);
}

TEST(StandardAlgebras, DirectSumAndUnitization) {
  const FinAlg s = direct_sum(matrix_algebra(2), diagonal_algebra(2));
  const auto r = validate_algebra(s);
  EXPECT_TRUE(r.valid());
  EXPECT_TRUE(r.has_unit);
  EXPECT_EQ(*s.unit(), v({1, 0, 0, 1, 1, 1}));
  EXPECT_EQ(s.labels()[4], "d1@2");

  const FinAlg nil = FinAlg::from_products({"x", "x^2"}, {{0, 0, v({0, 1})}});
  EXPECT_FALSE(nil.is_unital());
  const FinAlg u = unitization(nil);
  EXPECT_TRUE(validate_algebra(u).valid());
  EXPECT_EQ(u.dim(), nil.dim() + 1);
}

TEST(StandardAlgebras, QuotientRejectsNonIdeal) {
  const FinAlg m2 = matrix_algebra(2);
  try {
    quotient(m2, span_canonical({e(m2, "e11")}, 4));
    FAIL();
  } catch (const PreconditionError& err) {
    EXPECT_NE(std::string(err.what()).find("not a two-sided ideal"), std::string::npos);
  }
}

TEST(StandardAlgebras, QuotientByIdeal) {
  // Q[x]/(x^3) modulo (x^2) is Q[x]/(x^2)
  const FinAlg q = quotient(poly_quotient(v({0, 0, 0, 1})), span_canonical({v({0, 0, 1})}, 3));
  EXPECT_EQ(q.dim(), 2u);
  EXPECT_TRUE(validate_algebra(q).valid());
  EXPECT_TRUE(is_zero(q.multiply(q.basis_element(1), q.basis_element(1))));
}

TEST(Validation, FailingTriple) {
  // e1 e1 = e2, e2 e1 = e1: (e1 e1) e1 = e1 but e1 (e1 e1) = e1 e2 = 0
  const FinAlg bad = FinAlg::from_products({"e1", "e2"}, {{0, 0, v({0, 1})}, {1, 0, v({1, 0})}});
  const auto r = validate_algebra(bad);
  EXPECT_FALSE(r.associative);
  ASSERT_TRUE(r.failing_triple.has_value());
  const auto [i, j, k] = *r.failing_triple;
  const Vector lhs = bad.multiply(bad.multiply(bad.basis_element(i), bad.basis_element(j)), bad.basis_element(k));
  const Vector rhs = bad.multiply(bad.basis_element(i), bad.multiply(bad.basis_element(j), bad.basis_element(k)));
  EXPECT_NE(lhs, rhs);
}

TEST(Validation, BadUnit) {
  const FinAlg d2 = diagonal_algebra(2);
  const FinAlg wrong(d2.labels(), {{{0, 1}}, {}, {}, {{1, 1}}}, v({1, 0}));
  const auto r = validate_algebra(wrong);
  EXPECT_TRUE(r.associative);
  EXPECT_FALSE(r.unit_valid);
  EXPECT_EQ(r.unit_failure, 1u);
}

TEST(Validation, MalformedTables) {
  EXPECT_THROW(FinAlg({"a"}, {}), PreconditionError);
  EXPECT_THROW(FinAlg({"a"}, {{{3, 1}}}), PreconditionError);
  EXPECT_THROW(FinAlg::from_products({"a"}, {{0, 0, v({1, 0})}}), DimensionMismatch);
}

TEST(TensorSquare, DiagonalIsGridFunctions) {
  const FinAlg sq = tensor_square_op(diagonal_algebra(2));
  EXPECT_EQ(sq.dim(), 4u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_EQ(sq.multiply(sq.basis_element(i), sq.basis_element(j)),
                i == j ? sq.basis_element(i) : zero_vector(4));
}

TEST(TensorSquare, OppositeOrderOnTheRight) {
  const FinAlg m2 = matrix_algebra(2);
  const FinAlg sq = tensor_square_op(m2);
  const Vector lhs = simple_tensor(e(m2, "e12"), e(m2, "e12"));
  const Vector rhs = simple_tensor(e(m2, "e21"), e(m2, "e21"));
  EXPECT_EQ(sq.multiply(lhs, rhs), simple_tensor(e(m2, "e11"), e(m2, "e22")));
  EXPECT_EQ(sq.labels()[1], "e11|e12");
  EXPECT_TRUE(validate_algebra(tensor_square_op(poly_quotient(v({0, 0, 1})))).valid());
}

TEST(MultiplicationMaps, MatrixUnits) {
  const FinAlg m2 = matrix_algebra(2);
  const auto maps = multiplication_maps(m2);
  const Vector t = simple_tensor(e(m2, "e12"), e(m2, "e21"));
  EXPECT_EQ(maps.m.apply(t), e(m2, "e11"));
  EXPECT_EQ(maps.m_op.apply(t), e(m2, "e22"));
  const Vector one = *m2.unit();
  EXPECT_EQ(maps.m.apply(simple_tensor(one, one)), one);
  EXPECT_EQ(kernel(maps.m).dim(), 12u);
}

TEST(MultiplicationMaps, RandomAlgebrasAreHomomorphicOnSimpleTensors) {
  testgen::Gen g(17);
  for (int trial = 0; trial < 30; ++trial) {
    const FinAlg b = g.algebra();
    const auto maps = multiplication_maps(b);
    const Vector a = g.vector(b.dim()), c = g.vector(b.dim());
    EXPECT_EQ(maps.m.apply(simple_tensor(a, c)), b.multiply(a, c));
    EXPECT_EQ(maps.m_op.apply(simple_tensor(a, c)), b.multiply(c, a));
  }
}

TEST(Elements, PolynomialEvaluation) {
  const FinAlg m2 = matrix_algebra(2);
  const Vector n = e(m2, "e12");
  // 1 + 2n + 3n^2 = 1 + 2n for nilpotent n
  EXPECT_EQ(evaluate_polynomial(m2, v({1, 2, 3}), n), v({1, 2, 0, 1}));
  EXPECT_EQ(detail::describe(m2, v({1, 0, -1, 0})), "1*e11 + -1*e21");
}
