#include <gtest/gtest.h>

#include "derivkit/io.hpp"
#include "support.hpp"

using namespace derivkit;
using io::json;
using testgen::v;

namespace {

std::string field_of(const std::string& text, const std::function<void(const json&)>& load) {
  try {
    load(io::parse_json(text));
  } catch (const io::SchemaError& e) {
    return e.field();
  }
  return "<accepted>";
}

} // namespace

TEST(Io, MatrixAlgebraRoundTripIsByteIdentical) {
  const std::string first = io::dump(io::to_json(matrix_algebra(3)));
  const FinAlg back = io::algebra_from_json(io::parse_json(first));
  EXPECT_EQ(io::dump(io::to_json(back)), first);
  EXPECT_EQ(back.dim(), 9u);
  EXPECT_EQ(back.labels(), matrix_algebra(3).labels());
  EXPECT_EQ(*back.unit(), *matrix_algebra(3).unit());
}

TEST(Io, RandomAlgebrasRoundTrip) {
  testgen::Gen g(41);
  for (int trial = 0; trial < 30; ++trial) {
    const FinAlg a = g.algebra();
    const std::string text = io::dump(io::to_json(a));
    ASSERT_EQ(io::dump(io::to_json(io::algebra_from_json(io::parse_json(text)))), text);
  }
}

TEST(Io, NonCanonicalRationalSuggestsReduction) {
  const std::string text = R"({"dim": 1, "labels": ["1"], "structure": [[0, 0, ["2/4"]]]})";
  try {
    io::algebra_from_json(io::parse_json(text));
    FAIL();
  } catch (const io::SchemaError& e) {
    EXPECT_EQ(e.field(), "/structure/0/2/0");
    EXPECT_NE(std::string(e.what()).find("\"1/2\""), std::string::npos);
  }
}

TEST(Io, SchemaErrorsNameTheField) {
  const auto alg = [](const json& j) { io::algebra_from_json(j); };
  EXPECT_EQ(field_of(R"({"labels": [], "structure": []})", alg), "/dim");
  EXPECT_EQ(field_of(R"({"dim": 2, "labels": ["a"], "structure": []})", alg), "/labels");
  EXPECT_EQ(field_of(R"({"dim": 1, "labels": ["a"], "structure": [[0, 0, [1]]]})", alg), "/structure/0/2/0");
  EXPECT_EQ(field_of(R"({"dim": 1, "labels": ["a"], "structure": [[0, 1, ["1"]]]})", alg), "/structure/0");
  EXPECT_EQ(field_of(R"({"dim": 1, "labels": ["a"], "structure": [[0, 0, ["0"]]]})", alg), "/structure/0/2");
  EXPECT_EQ(field_of(R"({"dim": 1, "labels": ["a"], "structure": [], "unit": ["1", "0"]})", alg), "/unit");
  const auto sub = [](const json& j) { io::subspace_from_json(j); };
  EXPECT_EQ(field_of(R"({"ambient_dim": 2, "basis": [["2", "0"]]})", sub), "/basis");
  EXPECT_EQ(field_of(R"({"ambient_dim": 2, "basis": [["1"]]})", sub), "/basis/0");
  const auto poly = [](const json& j) { io::poly_from_json(j); };
  EXPECT_EQ(field_of(R"({"variables": ["x", "y"], "terms": [[[0, 1], "1"], [[1, 0], "1"]]})", poly), "/terms/1");
  EXPECT_THROW(io::parse_json("{"), ParseError);
}

TEST(Io, SubspaceRoundTrip) {
  const Subspace s = span_canonical({v({1, 2, 0}), v({0, 1, 1})}, 3);
  EXPECT_EQ(io::subspace_from_json(io::to_json(s)), s);
}

TEST(Io, PolyRoundTrip) {
  const MultiPoly p = parse_poly("1/3*x^3 - x*y + 2", doubled_variables(1));
  EXPECT_EQ(io::poly_from_json(io::to_json(p)), p);
}

TEST(Io, CertificateRoundTripReplays) {
  const MultiPoly p = parse_poly("x^2*y - x*y^2", doubled_variables(1));
  const Certificate c = decompose_one_variable(p);
  const std::string text = io::dump(io::to_json(c));
  const Certificate back = io::certificate_from_json(io::parse_json(text));
  EXPECT_EQ(back, c);
  EXPECT_TRUE(verify_certificate(back, PolynomialContext{}, p).pass);
  EXPECT_THROW(io::certificate_from_json(io::parse_json(R"({"product": []})")), io::SchemaError);
  EXPECT_THROW(io::certificate_from_json(io::parse_json(R"({"gen": "x", "extra": 1})")), io::SchemaError);
  EXPECT_THROW(io::certificate_from_json(io::parse_json(R"({"leaf": "x"})")), io::SchemaError);
}

TEST(Io, LambdaRows) {
  const LambdaMatrix l = io::lambda_from_json(io::parse_json(R"([["0", "-1"], ["1"]])"));
  EXPECT_EQ(l.size(), 2u);
  EXPECT_EQ(l.at({0, 1}), Rational(-1));
  EXPECT_EQ(l.at({1, 0}), Rational(1));
}

TEST(Io, SubmoduleFormIsOneBased) {
  LieSubmoduleForm form{span_canonical({v({1, 1})}, 2), {{0, 1}}};
  const json j = io::to_json(form);
  EXPECT_EQ(j["K"], json::parse("[[1, 2]]"));
  EXPECT_EQ(j["G"]["ambient_dim"], 2);
}
