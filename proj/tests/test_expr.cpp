#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nabla/classify.hpp"
#include "nabla/expr.hpp"
#include "nabla/table.hpp"

using namespace nabla;

TEST(Parser, ExampleOneIsRational) {
  const auto e = parseExpression("9/((s+1)^2*(s-2))");
  EXPECT_EQ(classify(e), Classification::Rational);
  EXPECT_EQ(toRational(*e).denominator().degree(), 3);
}

TEST(Parser, ExampleTwoIsFractionalSum) {
  const auto e = parseExpression("1/(s^0.5-0.2) - s^0.2/(s^0.7-0.3)");
  EXPECT_EQ(classify(e), Classification::FractionalSum);
  const auto form = toFractionalSum(e);
  ASSERT_TRUE(form);
  ASSERT_EQ(form->atoms.size(), 2u);
  EXPECT_DOUBLE_EQ(form->atoms[0].alpha, 0.5);
  EXPECT_DOUBLE_EQ(form->atoms[0].beta, 0.5);
  EXPECT_DOUBLE_EQ(form->atoms[0].lambda.real(), 0.2);
  EXPECT_DOUBLE_EQ(form->atoms[0].coefficient.real(), 1.0);
  EXPECT_DOUBLE_EQ(form->atoms[1].alpha, 0.7);
  EXPECT_NEAR(form->atoms[1].beta, 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(form->atoms[1].lambda.real(), 0.3);
  EXPECT_DOUBLE_EQ(form->atoms[1].coefficient.real(), -1.0);
}

TEST(Parser, ScaledAtomsNormalize) {
  const auto form = toFractionalSum(parseExpression("3/(2*s^0.5 - 0.4)"));
  ASSERT_TRUE(form);
  EXPECT_DOUBLE_EQ(form->atoms[0].coefficient.real(), 1.5);
  EXPECT_DOUBLE_EQ(form->atoms[0].lambda.real(), 0.2);
}

TEST(Parser, Precedence) {
  const cplx s = 0.7;
  EXPECT_NEAR(evaluate(*parseExpression("2^3^2"), s).real(), 512.0, 1e-12);
  EXPECT_NEAR(evaluate(*parseExpression("-s^2"), s).real(), -0.49, 1e-15);
  EXPECT_NEAR(evaluate(*parseExpression("1 - 2*3 / 4 + 5"), s).real(), 4.5, 1e-15);
  EXPECT_NEAR(evaluate(*parseExpression("s^(10/7)"), s).real(), std::pow(0.7, 10.0 / 7.0), 1e-15);
  EXPECT_NEAR(evaluate(*parseExpression("2*pi + e"), s).real(), 2 * std::numbers::pi + std::numbers::e, 1e-15);
  EXPECT_NEAR(evaluate(*parseExpression("1e-3*s"), s).real(), 7e-4, 1e-18);
  EXPECT_NEAR(evaluate(*parseExpression("0.5j*2"), s).imag(), 1.0, 0.0);
}

TEST(Parser, SyntaxErrorsHavePositions) {
  try {
    parseExpression("2s");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 2);
    EXPECT_FALSE(e.expected().empty());
  }
  try {
    parseExpression("1 +\n (s");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parseExpression(""), ParseError);
  EXPECT_THROW(parseExpression("1 $ 2"), ParseError);
  EXPECT_THROW(parseExpression("foo + 1"), ParseError);
  EXPECT_THROW(parseExpression("(s+1"), ParseError);
}

TEST(Parser, UnsupportedConstructs) {
  for (const char* text : {"1/(e^s-0.5)", "1/(exp(s)-0.5)", "1/log(s^2+0.5)", "1/tan(1/s)", "1/tanh(s)",
                           "gamma(s)/gamma(s+0.5)", "1/(sinh(sqrt(s))*sqrt(s))", "(s^2+1)^0.5", "s^s"})
    EXPECT_THROW(parseExpression(text), UnsupportedError) << text;
  try {
    parseExpression("1/(e^s-0.5)");
  } catch (const UnsupportedError& e) {
    EXPECT_NE(std::string(e.what()).find("residues"), std::string::npos);
  }
}

TEST(Parser, ConstantsOnly) {
  EXPECT_NEAR(evaluateConstant("0.3^(10/7)").real(), std::pow(0.3, 10.0 / 7.0), 1e-16);
  EXPECT_THROW(evaluateConstant("s+1"), InvalidArgumentError);
}

TEST(Printer, RoundTripIdempotent) {
  std::vector<std::string> corpus{"9/((s+1)^2*(s-2))", "1/(s^0.5-0.2) - s^0.2/(s^0.7-0.3)", "-(s+1)*-2", "s^-1",
                                  "(s^2)^3", "2^3^2", "1-(2-3)", "1/(2/s)", "-s^2", "(-s)^2", "0.5j + s"};
  for (int row = 1; row <= kTableRows; ++row) corpus.push_back(tableEntry(row, {}).transform);
  for (const auto& text : corpus) {
    const std::string once = toString(*parseExpression(text));
    const std::string twice = toString(*parseExpression(once));
    EXPECT_EQ(once, twice) << text;
    const cplx s(0.8, 0.1);
    EXPECT_LT(std::abs(evaluate(*parseExpression(text), s) - evaluate(*parseExpression(once), s)), 1e-14) << text;
  }
}

TEST(Classify, TableColumnsAreRationalOrCandidates) {
  for (int row = 1; row <= kTableRows; ++row) {
    const auto c = classify(parseExpression(tableEntry(row, {}).transform));
    EXPECT_TRUE(c == Classification::Rational || c == Classification::TableCandidate ||
                c == Classification::FractionalSum)
        << "row " << row;
    if (row <= 4 || row == 7 || row == 8) EXPECT_EQ(c, Classification::Rational) << "row " << row;
    if (row >= 11) EXPECT_EQ(c, Classification::TableCandidate) << "row " << row;
  }
  EXPECT_EQ(classify(parseExpression("(0.2*s^0.2-0.3)/(s^1.2-0.2*s^0.7-0.3*s^0.5+0.06)")),
            Classification::Unsupported);
}

TEST(Rationalize, CancellationNoiseTrimmed) {
  const auto rf = toRational(*parseExpression("(s+1)/((s+1)*(s-2))"));
  EXPECT_EQ(rf.poles().size(), 1u);
  EXPECT_THROW(toRational(*parseExpression("1/s^0.5")), UnsupportedError);
}
