#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nabla/invert.hpp"
#include "oracles.hpp"

using namespace nabla;

namespace {

RationalFunction exampleOne() { return {Polynomial::constant(9.0), Polynomial({-2.0, -3.0, 0.0, 1.0})}; }
RationalFunction over(Polynomial num, std::vector<cplx> roots) {
  return {std::move(num), Polynomial(oracle::fromRoots(roots))};
}

}  // namespace

TEST(InvertInside, Examples) {
  const auto v = invertInside(exampleOne(), 3);
  EXPECT_NEAR(v[0].real(), -2.25, 1e-14);
  EXPECT_NEAR(v[1].real(), 0.0, 1e-14);
  EXPECT_NEAR(v[2].real(), -1.6875, 1e-14);
  const auto d = invertInside(RationalFunction::polynomial(Polynomial::constant(1.0)), 4);
  EXPECT_EQ(d, (std::vector<cplx>{1.0, 0.0, 0.0, 0.0}));
  for (cplx x : invertInside(over(Polynomial::constant(1.0), {0.0}), 4)) EXPECT_NEAR(x.real(), 1.0, 1e-15);
  EXPECT_THROW(invertInside(over(Polynomial::constant(1.0), {1.0}), 3), NotInvertibleError);
}

TEST(InvertOutside, ExampleOneTerms) {
  const auto cf = invertOutside(exampleOne());
  ASSERT_EQ(cf.terms().size(), 3u);
  for (int n = 1; n <= 30; ++n) {
    const double want = oracle::exampleOneClosedForm(n);
    EXPECT_NEAR(evalClosedForm(cf, n), want, 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST(InvertOutside, TablePairs) {
  const auto seven = invertOutside(over(Polynomial::constant(1.0), {0.3}));
  ASSERT_EQ(seven.terms().size(), 1u);
  const auto* g = std::get_if<GeometricTerm>(&seven.terms()[0]);
  ASSERT_NE(g, nullptr);
  EXPECT_NEAR(g->coefficient.real(), 1.0, 1e-14);
  EXPECT_NEAR(evalClosedForm(seven, 3.0), std::pow(0.7, -3), 1e-12);

  const auto eight = invertOutside(over(Polynomial::constant(1.0), {2.0, 2.0}));
  for (int n = 1; n <= 6; ++n) EXPECT_NEAR(evalClosedForm(eight, n), n / std::pow(-1.0, n + 1), 1e-9);
}

TEST(InvertPartialFractions, Examples) {
  const auto cf = invertPartialFractions(exampleOne(), 0.0);
  ASSERT_EQ(cf.terms().size(), 3u);
  EXPECT_NEAR(evalClosedForm(cf, 2.0), 0.0, 1e-12);

  const auto ramp = invertPartialFractions(over(Polynomial::constant(1.0), {0.0, 0.0}));
  for (int n = 1; n <= 10; ++n) EXPECT_NEAR(evalClosedForm(ramp, n), n, 1e-9);

  const auto two = invertPartialFractions(over(Polynomial::constant(1.0), {2.0}) - over(Polynomial::constant(1.0), {-1.0}));
  ASSERT_EQ(two.terms().size(), 2u);
  for (int n = 1; n <= 8; ++n) EXPECT_NEAR(evalClosedForm(two, n), std::pow(-1.0, -n) - std::pow(2.0, -n), 1e-12);
}

TEST(InvertPartialFractions, ConstantIsImpulse) {
  const auto cf = invertPartialFractions(RationalFunction::polynomial(Polynomial::constant(2.5)));
  ASSERT_EQ(cf.terms().size(), 1u);
  EXPECT_TRUE(std::holds_alternative<ImpulseTerm>(cf.terms()[0]));
  EXPECT_DOUBLE_EQ(evalClosedForm(cf, 1.0), 2.5);
  EXPECT_DOUBLE_EQ(evalClosedForm(cf, 2.0), 0.0);
}

TEST(InvertFractional, ExampleTwo) {
  FractionalSumForm form{{{1.0, 0.5, 0.5, 0.2}, {-1.0, 0.7, 0.5, 0.3}}};
  const auto cf = invertFractional(form, 0.0);
  ASSERT_EQ(cf.terms().size(), 2u);
  EXPECT_NEAR(evalClosedForm(cf, 1.0), 1.25 - 1.0 / 0.7, 1e-12);
  for (int n = 1; n <= 10; ++n) {
    const double want = (oracle::mittagLeffler(0.5, 0.5, 0.2, n) - oracle::mittagLeffler(0.7, 0.5, 0.3, n)).real();
    EXPECT_NEAR(evalClosedForm(cf, n), want, 1e-10);
  }
}

TEST(InvertFractional, Edges) {
  const auto geo = invertFractional({{{1.0, 1.0, 1.0, 0.2}}});
  EXPECT_NEAR(evalClosedForm(geo, 5.0), std::pow(0.8, -5), 1e-10);
  EXPECT_NEAR(evalClosedForm(invertFractional({}), 3.0), 0.0, 0.0);
  EXPECT_THROW(invertFractional({{{1.0, 0.5, 0.5, 1.5}}}), DomainError);
  EXPECT_THROW(invertFractional({{{1.0, -0.5, 0.5, 0.2}}}), InvalidArgumentError);
}

TEST(ClosedForm, RealnessAndDomain) {
  const ClosedFormSequence complexOnly(0.0, {GeometricTerm{1.0, cplx(0.0, 0.5)}});
  EXPECT_THROW(evalClosedForm(complexOnly, 1.0), RealnessError);
  EXPECT_THROW(evalClosedForm(complexOnly, 0.0), InvalidArgumentError);
  EXPECT_THROW(evalClosedForm(complexOnly, 1.5), InvalidArgumentError);
  EXPECT_THROW(ClosedFormSequence(0.0, {GeometricTerm{1.0, 1.0}}), InvalidArgumentError);
}

TEST(RocForInversion, RequiresDisk) {
  EXPECT_THROW(requireInvertibleRoc(Roc({OriginExclusion{0.5}}), 1.0), DomainError);
  EXPECT_THROW(requireInvertibleRoc(Roc::disk(2.0), 1.0), DomainError);
  EXPECT_NO_THROW(requireInvertibleRoc(Roc({DiskAroundOne{1.0}, OriginExclusion{0.179}}), 1.0));
}

// Property: the three rational routes agree and reproduce the initial value,
// linearity and realness on random inputs.
TEST(Strategies, EquivalenceProperty) {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 150; ++trial) {
    const auto r = oracle::randomRational(rng, trial);
    const RationalFunction f(Polynomial(r.num), Polynomial(r.den));
    const auto inside = invertInside(f, 20);
    const auto outside = invertOutside(f, 0.0);
    const auto pfe = invertPartialFractions(f, 0.0);
    const auto reference = oracle::seriesValues(r.num, r.den, 20);
    for (int n = 1; n <= 20; ++n) {
      const double scale = std::max(1.0, outside.magnitudeAtOffset(n));
      const double o = evalClosedForm(outside, n);
      const double p = evalClosedForm(pfe, n);
      EXPECT_LT(std::abs(o - inside[static_cast<std::size_t>(n - 1)].real()), 1e-9 * scale) << "trial " << trial;
      EXPECT_LT(std::abs(o - p), 1e-9 * scale) << "trial " << trial;
      EXPECT_LT(std::abs(o - reference[static_cast<std::size_t>(n - 1)].real()), 1e-9 * scale) << "trial " << trial;
    }
    EXPECT_LT(std::abs(evalClosedForm(pfe, 1.0) - f(1.0).real()), 1e-9 * std::max(1.0, pfe.magnitudeAtOffset(1)));
  }
}

TEST(Strategies, LinearityProperty) {
  const RationalFunction f = over(Polynomial({1.0, -2.0}), {-0.5, cplx(0.2, 0.7), cplx(0.2, -0.7)});
  const RationalFunction g = over(Polynomial::constant(3.0), {2.0, 2.0});
  const cplx c1 = 1.5, c2 = -0.25;
  const auto combined = invertPartialFractions(c1 * f + c2 * g);
  const auto ff = invertPartialFractions(f), gg = invertPartialFractions(g);
  for (int n = 1; n <= 20; ++n)
    EXPECT_NEAR(evalClosedForm(combined, n), c1.real() * evalClosedForm(ff, n) + c2.real() * evalClosedForm(gg, n),
                1e-9 * std::max(1.0, combined.magnitudeAtOffset(n)));
}
