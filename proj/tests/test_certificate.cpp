#include <gtest/gtest.h>

#include "support.hpp"

using namespace derivkit;
using testgen::v;

namespace {

const std::vector<std::string> XY = doubled_variables(1);
const std::vector<std::string> X = base_variables(1);

MultiPoly P(const std::string& text) { return parse_poly(text, XY); }
MultiPoly F(const std::string& text) { return parse_poly(text, X); }

} // namespace

TEST(Decompose, BaseCase) {
  EXPECT_EQ(decompose_one_variable(P("x - y")), Certificate::gen(F("x")));
  EXPECT_EQ(decompose_one_variable(P("3*x - 3*y")), Certificate::scale(3, Certificate::gen(F("x"))));
}

TEST(Decompose, SingleGenerator) {
  EXPECT_EQ(decompose_one_variable(P("x^2 - y^2")), Certificate::gen(F("x^2")));
}

TEST(Decompose, CubicExample) {
  const Certificate expected = Certificate::sum(
      {Certificate::scale(Rational(1, 3), Certificate::gen(F("x^3"))),
       Certificate::product({Certificate::gen(F("x")),
                             Certificate::product({Certificate::gen(F("x")),
                                                   Certificate::scale(Rational(-1, 3), Certificate::gen(F("x")))})})});
  const Certificate c = decompose_one_variable(P("x^2*y - x*y^2"));
  EXPECT_EQ(c, expected);
  EXPECT_EQ(P("1/3*(x^3 - y^3) - 1/3*(x - y)^3"), P("x^2*y - x*y^2"));
  EXPECT_TRUE(verify_certificate(c, PolynomialContext{}, P("x^2*y - x*y^2")).pass);
}

TEST(Decompose, ZeroIsEmptySum) {
  const Certificate c = decompose_one_variable(MultiPoly(XY));
  EXPECT_EQ(c.kind(), Certificate::Kind::Sum);
  EXPECT_TRUE(c.children().empty());
  EXPECT_TRUE(evaluate(c, PolynomialContext{}).is_zero());
}

TEST(Decompose, RejectsDiagonalNonVanishing) {
  try {
    decompose_one_variable(P("x^2 + y"));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("x^2 + x"), std::string::npos);
  }
}

TEST(Decompose, RandomReplayUpToDegreeTwelve) {
  testgen::Gen g(99);
  for (int trial = 0; trial < 100; ++trial) {
    const MultiPoly p = g.diagonal_vanishing(static_cast<unsigned>(2 + g.index(11)));
    const auto r = verify_certificate(decompose_one_variable(p), PolynomialContext{}, p);
    ASSERT_TRUE(r.pass) << format_poly(p) << " residual " << format_poly(r.residual);
  }
}

TEST(Verify, FailureReportsResidual) {
  const auto r = verify_certificate(Certificate::gen(F("x")), PolynomialContext{}, P("x + y"));
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.residual, P("-2*y"));
}

TEST(Verify, ElementaryOperatorsOnM3) {
  testgen::Gen g(5);
  const BimoduleRep rep = regular_bimodule(matrix_algebra(3));
  const Certificate c = decompose_one_variable(P("x^2*y - x*y^2"));
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = g.matrix(3, 3);
    const ElementaryOperatorContext ctx(rep, flatten(a));
    const Matrix op = evaluate(c, ctx);
    // Independent: apply b -> a^2 b a - a b a^2 to every matrix unit.
    for (std::size_t j = 0; j < 9; ++j) {
      const Matrix b = unflatten(3, unit_vector(9, j));
      EXPECT_EQ(op.apply(flatten(b)), flatten(a * a * b * a - a * b * a * a));
    }
    EXPECT_TRUE(verify_certificate(c, ctx, rep.left_of(flatten(a * a)) * rep.right_of(flatten(a)) -
                                               rep.left_of(flatten(a)) * rep.right_of(flatten(a * a)))
                    .pass);
  }
}

TEST(Certificate, Structure) {
  EXPECT_THROW(Certificate::product({}), PreconditionError);
  EXPECT_THROW(Certificate::gen(P("x")), PreconditionError);
  const Certificate c = decompose_one_variable(P("x^2*y - x*y^2"));
  EXPECT_EQ(c.node_count(), 9u);
}

TEST(TransferQuotient, NilpotentSquare) {
  const MultiPoly q = F("x^2");
  const auto ctx = quotient_context(q);
  const FinAlg& c = ctx.algebra();
  const Vector one = *c.unit(), x = v({0, 1});
  const Vector t = simple_tensor(x, x) - simple_tensor(one, power(c, x, 2));
  // t = x|x - 1|x^2; x^2 = 0 here so t = x|x
  const Certificate cert = transfer_quotient(q, t);
  EXPECT_TRUE(verify_certificate(cert, ctx, t).pass);
  // Route through the square identity: 2(1|x^2 - x|x) = (x|1 - 1|x)^2 - (x^2|1 - 1|x^2)
  const Vector dx = derivation_generator(c, x);
  const Vector via_identity = scaled(Rational(-1, 2), ctx.square().multiply(dx, dx) - derivation_generator(c, power(c, x, 2)));
  EXPECT_EQ(via_identity, t);
}

TEST(TransferQuotient, ZeroElement) {
  const Certificate cert = transfer_quotient(F("x^2"), zero_vector(4));
  EXPECT_EQ(cert.kind(), Certificate::Kind::Sum);
  EXPECT_TRUE(cert.children().empty());
}

TEST(TransferQuotient, RandomNLieElements) {
  testgen::Gen g(12);
  for (const char* modulus : {"x^3 - 2", "x^4 - x", "x^3"}) {
    const MultiPoly q = F(modulus);
    const auto ctx = quotient_context(q);
    const Subspace nlie = nlie_subspace(ctx.algebra());
    for (int trial = 0; trial < 10; ++trial) {
      Vector t = zero_vector(nlie.ambient_dim());
      for (const auto& b : nlie.basis())
        axpy(t, g.rational(), b);
      EXPECT_TRUE(verify_certificate(transfer_quotient(q, t), ctx, t).pass) << modulus;
    }
  }
}

TEST(TransferQuotient, RejectsOutsideNLie) {
  const MultiPoly q = F("x^2");
  EXPECT_THROW(transfer_quotient(q, simple_tensor(v({1, 0}), v({1, 0}))), PreconditionError);
  EXPECT_THROW(transfer_quotient(q, v({1, 0})), DimensionMismatch);
}
