#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/pfe.hpp"
#include "nabla/rational.hpp"
#include "nabla/roc.hpp"
#include "nabla/sequence.hpp"
#include "nabla/specfun.hpp"

namespace nabla {

// ---------------------------------------------------------------------------
// Residue at s = 1 (the only pole inside the contour)
// ---------------------------------------------------------------------------

/// f(a+1), ..., f(a+kMax) from the residue of F(s)(1-s)^{-(k-a)} at s = 1.
/// That residue equals the w^{k-a-1} coefficient of F(1 - w), so the values
/// come straight out of the series expansion at s = 1.
inline std::vector<cplx> invertInside(const RationalFunction& rf, int kMax) {
  if (kMax < 0) throw InvalidArgumentError("invertInside: kMax must be >= 0");
  if (kMax == 0) {
    requireNoPoleAtOne(rf);
    return {};
  }
  return seriesAtOne(rf, kMax - 1);
}

// ---------------------------------------------------------------------------
// Residues at the poles outside the contour
// ---------------------------------------------------------------------------

namespace detail {

/// g^{(m)}(lambda)/m!, m = 0..count-1, for g = A / B, by differentiating
/// A = g B with the Leibniz rule.
inline std::vector<cplx> quotientDerivatives(const Polynomial& numer, const Polynomial& denom, cplx lambda,
                                             int count) {
  std::vector<cplx> aDer, bDer;
  Polynomial a = numer, b = denom;
  for (int m = 0; m < count; ++m) {
    aDer.push_back(a(lambda));
    bDer.push_back(b(lambda));
    a = a.derivative();
    b = b.derivative();
  }
  std::vector<cplx> g(static_cast<std::size_t>(count));
  std::vector<double> fact(static_cast<std::size_t>(count), 1.0);
  for (int m = 1; m < count; ++m) fact[static_cast<std::size_t>(m)] = fact[static_cast<std::size_t>(m - 1)] * m;
  for (int m = 0; m < count; ++m) {
    cplx acc = aDer[static_cast<std::size_t>(m)];
    double binom = 1.0;
    for (int j = 0; j < m; ++j) {
      acc -= binom * g[static_cast<std::size_t>(j)] * bDer[static_cast<std::size_t>(m - j)];
      binom = binom * (m - j) / (j + 1);
    }
    g[static_cast<std::size_t>(m)] = acc / bDer[0];
  }
  for (int m = 0; m < count; ++m) g[static_cast<std::size_t>(m)] /= fact[static_cast<std::size_t>(m)];
  return g;
}

inline std::vector<Term> impulseTerms(const Polynomial& quotient) {
  std::vector<Term> out;
  for (const auto& c : impulseExpansion(quotient)) out.emplace_back(ImpulseTerm{c.coefficient, c.shift});
  return out;
}

}  // namespace detail

/// Closed form from the residues of F(s)(1-s)^{-(k-a)} at the finite poles of F.
///
/// For an N-fold pole lambda with g(s) = (s - lambda)^N F(s),
///   Res = sum_{j<N} [g^{(N-1-j)}(lambda)/(N-1-j)!] (k-a)^{(j)}/j! (1-lambda)^{-(k-a)-j},
/// which is one poly-geometric term per j. The polynomial part of an improper
/// F contributes the impulse terms that the finite residues miss.
inline ClosedFormSequence invertOutside(const RationalFunction& rf, double a = 0.0) {
  requireNoPoleAtOne(rf);
  if (rf.isZero()) return {a, {}};
  auto [quotient, remainder] = divmod(rf.numerator(), rf.denominator());
  std::vector<Term> terms = detail::impulseTerms(quotient);
  if (!remainder.isZero()) {
    const Polynomial linearFactorBase = Polynomial::identity();
    for (const auto& pole : rf.poles()) {
      Polynomial deflated = rf.denominator();
      const Polynomial factor = linearFactorBase - Polynomial::constant(pole.value);
      for (int i = 0; i < pole.multiplicity; ++i) deflated = divmod(deflated, factor).first;
      const auto g = detail::quotientDerivatives(remainder, deflated, pole.value, pole.multiplicity);
      const int order = pole.multiplicity;
      for (int j = 0; j < order; ++j) {
        const cplx c = g[static_cast<std::size_t>(order - 1 - j)];
        if (j == 0) terms.emplace_back(GeometricTerm{c, pole.value});
        else terms.emplace_back(PolyGeometricTerm{c, pole.value, j + 1});
      }
    }
  }
  return {a, std::move(terms)};
}

// ---------------------------------------------------------------------------
// Partial fractions and the pair table
// ---------------------------------------------------------------------------

inline ClosedFormSequence fromPartialFractions(const PartialFractionForm& form, double a = 0.0) {
  std::vector<Term> terms;
  for (const auto& t : form.impulsePart) terms.emplace_back(ImpulseTerm{t.coefficient, t.shift});
  for (const auto& t : form.simpleTerms) terms.emplace_back(GeometricTerm{t.coefficient, t.pole});
  for (const auto& t : form.multipleTerms) {
    if (t.order == 1) terms.emplace_back(GeometricTerm{t.coefficient, t.pole});
    else terms.emplace_back(PolyGeometricTerm{t.coefficient, t.pole, t.order});
  }
  return {a, std::move(terms)};
}

/// Expand into partial fractions, then map each atom through its pair:
/// (1-s)^n -> delta(k-a-1-n), 1/(s-l) -> (1-l)^{-(k-a)}, 1/(s-l)^N -> poly-geometric.
inline ClosedFormSequence invertPartialFractions(const RationalFunction& rf, double a = 0.0) {
  return fromPartialFractions(expand(rf), a);
}

// ---------------------------------------------------------------------------
// Fractional sum form
// ---------------------------------------------------------------------------

/// coefficient * s^{alpha-beta} / (s^alpha - lambda)
struct FractionalAtom {
  cplx coefficient{1.0};
  double alpha = 1.0;
  double beta = 1.0;
  cplx lambda{0.0};
};

struct FractionalSumForm {
  std::vector<FractionalAtom> atoms;

  /// Principal-branch evaluation.
  cplx operator()(cplx s) const {
    cplx acc{0.0};
    for (const auto& t : atoms) acc += t.coefficient * std::pow(s, t.alpha - t.beta) / (std::pow(s, t.alpha) - t.lambda);
    return acc;
  }
};

/// One Mittag-Leffler term per atom: r s^{alpha-beta}/(s^alpha - lambda) -> r F_{alpha,beta}(lambda, k, a).
inline ClosedFormSequence invertFractional(const FractionalSumForm& form, double a = 0.0) {
  std::vector<Term> terms;
  for (const auto& atom : form.atoms) {
    if (!(atom.alpha > 0.0) || !(atom.beta > 0.0))
      throw InvalidArgumentError("fractional atom needs alpha > 0 and beta > 0 (got alpha = " +
                                 formatReal(atom.alpha) + ", beta = " + formatReal(atom.beta) + ")");
    if (!(std::abs(atom.lambda) < 1.0))
      throw DomainError("fractional atom needs |lambda| < 1 for the Mittag-Leffler series (got |lambda| = " +
                        formatReal(std::abs(atom.lambda)) + ")");
    terms.emplace_back(MittagLefflerTerm{atom.coefficient, MLParams{atom.alpha, atom.beta, atom.lambda, a}});
  }
  return {a, std::move(terms)};
}

/// |1-s| < 1 and |lambda_i| < |s|^{alpha_i} for each atom.
inline Roc inferRoc(const FractionalSumForm& form) {
  std::vector<RocConstraint> c{DiskAroundOne{1.0}};
  for (const auto& atom : form.atoms) c.emplace_back(FractionalDominance{atom.alpha, atom.lambda});
  return Roc(std::move(c));
}

/// Inversion is defined through a contour around s = 1 inside the ROC: the ROC
/// must contain a disk around 1, and that disk must not reach a singularity.
inline void requireInvertibleRoc(const Roc& roc, double singularityDistance) {
  const auto r = roc.diskRadius();
  if (!r)
    throw DomainError("ROC " + roc.toString() +
                      " has no disk |1-s| < rho around s = 1; inversion is only defined for such regions");
  if (*r > singularityDistance * (1.0 + 1e-9))
    throw DomainError("ROC disk |1-s| < " + formatReal(*r) + " contains a singularity of F(s) at distance " +
                      formatReal(singularityDistance) + " from s = 1");
  for (double fraction : {0.5, 0.25, 0.1, 0.02}) {
    const double rho = fraction * std::min(*r, 1.0);
    bool inside = true;
    for (int j = 0; j < 16 && inside; ++j) {
      const double t = 2.0 * std::numbers::pi * j / 16.0;
      inside = roc.contains(1.0 - rho * cplx(std::cos(t), std::sin(t)));
    }
    if (inside) return;
  }
  throw DomainError("ROC " + roc.toString() + " does not contain a circle around s = 1 for the contour");
}

}  // namespace nabla
