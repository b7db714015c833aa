#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nabla/expr.hpp"
#include "nabla/table.hpp"
#include "nabla/verify.hpp"
#include "oracles.hpp"

using namespace nabla;

TEST(TableLookup, RowThirteen) {
  const auto hit = tableLookup(*parseExpression("sin(pi/6)*(1-s)/(1-2*cos(pi/6)*(1-s)+(1-s)^2)"));
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->row, 13);
  EXPECT_NEAR(hit->params.omega, std::numbers::pi / 6.0, 1e-15);
  EXPECT_EQ(hit->rocText, "|1-s| < 1");
}

TEST(TableLookup, RowFour) {
  const auto hit = tableLookup(*parseExpression("1/(1-0.5+0.5*s)"));
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->row, 4);
  EXPECT_EQ(hit->sequence, "0.5^{k-a-1}");
  EXPECT_EQ(hit->rocText, "|1-s|*0.5 < 1");
}

TEST(TableLookup, NoMatch) { EXPECT_FALSE(tableLookup(*parseExpression("s^3+2"))); }

TEST(TableLookup, EveryRowFindsItself) {
  for (cplx lam : {cplx(0.3), cplx(-0.5)})
    for (int row = 1; row <= kTableRows; ++row) {
      TableParams p;
      p.lambda = lam;
      const auto entry = tableEntry(row, p);
      const auto hit = tableLookup(*parseExpression(entry.transform));
      ASSERT_TRUE(hit) << "row " << row;
      EXPECT_EQ(hit->row, row);
    }
}

TEST(TableLookup, OtherParameters) {
  const auto six = tableLookup(*parseExpression("1/(1-0.25+0.25*s)^2.5"));
  ASSERT_TRUE(six);
  EXPECT_EQ(six->row, 6);
  EXPECT_DOUBLE_EQ(six->params.gamma, 0.25);
  EXPECT_DOUBLE_EQ(six->params.alpha, 1.5);
  const auto eight = tableLookup(*parseExpression("1/(s+0.5)^3"));
  ASSERT_TRUE(eight);
  EXPECT_EQ(eight->row, 8);
  EXPECT_EQ(eight->params.order, 3);
  const auto nine = tableLookup(*parseExpression("s^0.2/(s^0.7-0.3)"));
  ASSERT_TRUE(nine);
  EXPECT_EQ(nine->row, 9);
  EXPECT_NEAR(nine->params.beta, 0.5, 1e-12);
}

TEST(TableRows, SequencesAgreeWithIndependentFormulas) {
  const TableParams p;
  for (int n = 1; n <= 12; ++n) {
    EXPECT_NEAR(tableEntry(4, p).sequenceAt(n).real(), std::pow(0.5, n - 1), 1e-15);
    EXPECT_NEAR(tableEntry(5, p).sequenceAt(n).real(), std::tgamma(n + 0.5) / std::tgamma(n) / std::tgamma(1.5), 1e-12);
    EXPECT_NEAR(tableEntry(8, p).sequenceAt(n).real(), n / std::pow(0.7, n + 1), 1e-9);
    EXPECT_NEAR(tableEntry(9, p).sequenceAt(n).real(), oracle::mittagLeffler(0.5, 0.5, 0.3, n).real(), 1e-10);
    EXPECT_NEAR(tableEntry(10, p).sequenceAt(n).real(), (n - 1) * oracle::mittagLeffler(0.5, 0.5, 0.3, n).real(), 1e-9);
    EXPECT_NEAR(tableEntry(16, p).sequenceAt(n).real(), std::cosh(std::numbers::pi / 6 * (n - 1)), 1e-12);
  }
}

TEST(TableRows, RoundTripAllRows) {
  for (cplx lam : {cplx(0.3), cplx(-0.5)})
    for (int row = 1; row <= kTableRows; ++row) {
      TableParams p;
      p.lambda = lam;
      const auto r = tableRoundTrip(tableEntry(row, p));
      EXPECT_TRUE(r.passed) << "row " << row << " error " << r.maxRelativeError;
    }
}

TEST(TableRows, InvalidParameters) {
  EXPECT_THROW(tableEntry(0, {}), InvalidArgumentError);
  EXPECT_THROW(tableEntry(17, {}), InvalidArgumentError);
  TableParams bad;
  bad.lambda = 1.0;
  EXPECT_THROW(tableEntry(7, bad), InvalidArgumentError);
  EXPECT_THROW(tableEntry(9, bad), DomainError);
  bad.gamma = 0.0;
  EXPECT_THROW(tableEntry(4, bad), InvalidArgumentError);
}
