#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nabla/specfun.hpp"
#include "oracles.hpp"

using namespace nabla;

TEST(Rising, Examples) {
  EXPECT_NEAR(risingFactorial(3.0, 2.0).real(), 12.0, 1e-12);
  EXPECT_NEAR(risingFactorial(1.0, 0.5).real(), std::sqrt(std::numbers::pi) / 2.0, 1e-13);
  EXPECT_NEAR(risingFactorial(2.0, 0.0).real(), 1.0, 1e-15);
  EXPECT_THROW(risingFactorial(0.0, 1.0), Error);
}

TEST(MittagLeffler, Examples) {
  EXPECT_NEAR(discreteMittagLeffler({0.7, 1.0, 0.0, 0.0}, 5.0).real(), 1.0, 1e-15);
  EXPECT_NEAR(discreteMittagLeffler({0.5, 0.5, 0.2, 0.0}, 1.0).real(), 1.25, 1e-14);
  EXPECT_NEAR(discreteMittagLeffler({1.0, 1.0, 0.2, 0.0}, 4.0).real(), 2.44140625, 1e-12);
  EXPECT_NEAR(discreteMittagLeffler({1.0, 1.0, 0.2, 2.5}, 6.5).real(), 2.44140625, 1e-12);
  EXPECT_THROW(discreteMittagLeffler({1.0, 1.0, 0.2, 0.0}, 0.0), InvalidArgumentError);
}

TEST(MittagLeffler, Validation) {
  EXPECT_THROW(validate({0.0, 1.0, 0.2, 0.0}), InvalidArgumentError);
  EXPECT_THROW(validate({1.0, -1.0, 0.2, 0.0}), InvalidArgumentError);
  EXPECT_THROW(validate({1.0, 1.0, 1.0, 0.0}), DomainError);
  EXPECT_THROW(mittagLefflerAtOffset({0.5, 0.5, cplx(0.0, 1.2), 0.0}, 3), DomainError);
}

TEST(MittagLeffler, IdentityWithGeometric) {
  for (cplx lam : {cplx(0.2), cplx(-0.5), cplx(0.0, 0.5)})
    for (int n = 1; n <= 20; ++n) {
      const cplx want = std::pow(1.0 - lam, -n);
      EXPECT_LT(std::abs(mittagLefflerAtOffset({1.0, 1.0, lam, 0.0}, n) - want), 1e-10 * std::abs(want));
    }
}

TEST(MittagLeffler, FirstValueIsGeometricSeries) {
  for (double al : {0.3, 0.5, 0.7, 1.2})
    for (double be : {0.3, 0.5, 0.7, 1.2})
      for (cplx lam : {cplx(0.2), cplx(-0.6), cplx(0.3, 0.4)}) {
        const cplx want = 1.0 / (1.0 - lam);
        EXPECT_LT(std::abs(mittagLefflerAtOffset({al, be, lam, 0.0}, 1) - want), 1e-10 * std::abs(want));
      }
}

TEST(MittagLeffler, ZeroLambdaIsFirstTerm) {
  for (double be : {0.3, 0.5, 1.0, 2.5})
    for (int n = 1; n <= 10; ++n) {
      const double want = std::exp(std::lgamma(n + be - 1.0) - std::lgamma(n) - std::lgamma(be));
      EXPECT_NEAR(mittagLefflerAtOffset({0.5, be, 0.0, 0.0}, n).real(), want, 1e-12 * want);
    }
}

TEST(MittagLeffler, AgreesWithQuadPrecisionOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ab(0.2, 2.0), lr(-0.5, 0.5);
  for (int i = 0; i < 100; ++i) {
    const double al = ab(rng), be = ab(rng);
    const cplx lam(lr(rng), lr(rng));
    const int n = 1 + static_cast<int>(rng() % 25);
    const cplx want = oracle::mittagLeffler(al, be, lam, n);
    // Sum of term magnitudes is F(|lambda|); cancellation costs that much times long double epsilon.
    const double conditioning = oracle::mittagLeffler(al, be, std::abs(lam), n).real();
    EXPECT_LT(std::abs(mittagLefflerAtOffset({al, be, lam, 0.0}, n) - want),
              1e-10 * std::max(1.0, std::abs(want)) + 1e-17 * n * conditioning)
        << al << " " << be << " " << lam << " " << n;
  }
}

// Property: doubling the iteration cap does not move a converged value.
TEST(MittagLeffler, TruncationStableProperty) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ab(0.2, 2.0), lr(-0.5, 0.5);
  for (int i = 0; i < 100; ++i) {
    const MLParams p{ab(rng), ab(rng), cplx(lr(rng), lr(rng)), 0.0};
    const int n = 1 + static_cast<int>(rng() % 30);
    const cplx a = mittagLefflerAtOffset(p, n, {10000, 1e-15, 3});
    const cplx b = mittagLefflerAtOffset(p, n, {20000, 1e-15, 3});
    EXPECT_LT(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST(MittagLeffler, IterationCapReported) {
  try {
    mittagLefflerAtOffset({0.5, 0.5, 0.999, 0.0}, 50, {5, 1e-15, 3});
    FAIL() << "expected convergence error";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.lastTermMagnitude(), 0.0);
  }
}
