#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nabla/rational.hpp"
#include "nabla/roc.hpp"
#include "oracles.hpp"

using namespace nabla;

namespace {

RationalFunction exampleOne() { return {Polynomial::constant(9.0), Polynomial({-2.0, -3.0, 0.0, 1.0})}; }

}  // namespace

TEST(Rational, EvaluateExamples) {
  EXPECT_NEAR(exampleOne()(1.0).real(), -2.25, 1e-15);
  EXPECT_NEAR(RationalFunction(Polynomial::constant(1.0), Polynomial::identity())(0.5).real(), 2.0, 1e-15);
  try {
    exampleOne()(-1.0);
    FAIL() << "expected pole error";
  } catch (const PoleEvaluationError& e) {
    EXPECT_NEAR(e.pole().real(), -1.0, 1e-9);
  }
}

TEST(Rational, Poles) {
  const auto p = exampleOne().poles();
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p[0].value.real(), -1.0, 1e-10);
  EXPECT_EQ(p[0].multiplicity, 2);
  EXPECT_NEAR(p[1].value.real(), 2.0, 1e-12);
  const RationalFunction seven(Polynomial::constant(1.0), Polynomial({-0.3, 1.0}));
  ASSERT_EQ(seven.poles().size(), 1u);
  EXPECT_NEAR(seven.poles()[0].value.real(), 0.3, 1e-15);
}

TEST(Rational, CancelsCommonFactor) {
  const RationalFunction f(Polynomial({-2.0, 1.0}), Polynomial({-2.0, 1.0}) * Polynomial({1.0, 1.0}));
  ASSERT_EQ(f.poles().size(), 1u);
  EXPECT_NEAR(f.poles()[0].value.real(), -1.0, 1e-12);
  EXPECT_EQ(f.numerator().degree(), 0);
}

TEST(Rational, NormalizedMonic) {
  const RationalFunction f(Polynomial({2.0, 4.0}), Polynomial({1.0, 2.0, 2.0}));
  EXPECT_NEAR(std::abs(f.denominator().leading() - 1.0), 0.0, 1e-15);
  EXPECT_THROW(RationalFunction(Polynomial::constant(1.0), Polynomial()), InvalidArgumentError);
}

TEST(Rational, SeriesAtOneExamples) {
  const auto c = seriesAtOne(exampleOne(), 2);
  EXPECT_NEAR(c[0].real(), -2.25, 1e-14);
  EXPECT_NEAR(c[1].real(), 0.0, 1e-14);
  EXPECT_NEAR(c[2].real(), -1.6875, 1e-14);
  for (cplx v : seriesAtOne(RationalFunction(Polynomial::constant(1.0), Polynomial::identity()), 3))
    EXPECT_NEAR(v.real(), 1.0, 1e-15);
  const auto d = seriesAtOne(RationalFunction::polynomial(Polynomial::constant(1.0)), 2);
  EXPECT_EQ(d, (std::vector<cplx>{1.0, 0.0, 0.0}));
  EXPECT_THROW(seriesAtOne(RationalFunction(Polynomial::constant(1.0), Polynomial({-1.0, 1.0})), 3),
               NotInvertibleError);
}

// Property: the truncated series at 1 reproduces F inside half the pole distance.
TEST(Rational, SeriesReproducesFunctionProperty) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 60; ++trial) {
    const auto r = oracle::randomRational(rng, trial);
    const RationalFunction f(Polynomial(r.num), Polynomial(r.den));
    const double rho = 0.5 * f.poleDistanceFromOne();
    const int terms = static_cast<int>(std::ceil(std::log(1e-13) / std::log(0.5))) + 20;
    const auto c = seriesAtOne(f, terms);
    for (int j = 0; j < 5; ++j) {
      const cplx w = rho * std::polar(1.0, ang(rng));
      cplx acc{0.0}, pw{1.0};
      for (cplx cj : c) {
        acc += cj * pw;
        pw *= w;
      }
      const cplx want = f(1.0 - w);
      EXPECT_LT(std::abs(acc - want), 1e-8 * std::max(1.0, std::abs(want))) << "trial " << trial;
    }
  }
}

// Property: poles of a product of well-separated factors have the factor multiplicities.
TEST(Rational, PolesFromFactorsProperty) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto r = oracle::randomRational(rng, trial);
    const RationalFunction f(Polynomial::constant(1.0), Polynomial(r.den));
    int total = 0;
    for (const auto& p : f.poles()) {
      int count = 0;
      for (cplx z : r.roots) count += std::abs(z - p.value) < 1e-6 ? 1 : 0;
      EXPECT_EQ(count, p.multiplicity) << "trial " << trial;
      total += p.multiplicity;
    }
    EXPECT_EQ(total, static_cast<int>(r.roots.size()));
  }
}

TEST(Roc, Membership) {
  const Roc disk = Roc::disk(1.0);
  EXPECT_TRUE(rocContains(disk, 0.5));
  EXPECT_FALSE(rocContains(disk, 2.5));
  const Roc example2({DiskAroundOne{1.0}, OriginExclusion{std::pow(0.3, 10.0 / 7.0)}});
  EXPECT_FALSE(rocContains(example2, 0.1));
  EXPECT_TRUE(rocContains(example2, 0.5));
  EXPECT_TRUE(Roc::wholePlane().contains(cplx(100.0, -3.0)));
}

TEST(Roc, Validation) {
  EXPECT_THROW(Roc::disk(0.0), InvalidArgumentError);
  EXPECT_THROW(Roc({OriginExclusion{-1.0}}), InvalidArgumentError);
  EXPECT_THROW(Roc({FractionalDominance{0.0, 0.2}}), InvalidArgumentError);
}

// Property: shrinking every radius keeps only points that were members before.
TEST(Roc, MonotoneProperty) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 3.0);
  const Roc wide({DiskAroundOne{1.2}, OriginExclusion{0.1}});
  const Roc narrow({DiskAroundOne{0.8}, OriginExclusion{0.3}});
  for (int i = 0; i < 2000; ++i) {
    const cplx s(u(rng), u(rng) - 0.75);
    if (narrow.contains(s)) EXPECT_TRUE(wide.contains(s));
  }
}

TEST(Roc, InferAndPrint) {
  const Roc r = inferRoc(exampleOne());
  ASSERT_TRUE(r.diskRadius());
  EXPECT_NEAR(*r.diskRadius(), 1.0, 1e-12);
  EXPECT_EQ(Roc({DiskAroundOne{0.5}, OriginExclusion{0.1}}).toString(), "|1-s| < 0.5 and |s| > 0.1");
  EXPECT_EQ(Roc().toString(), "all s");
}
