#pragma once

#include <vector>

#include "nabla/polynomial.hpp"
#include "nabla/rational.hpp"

namespace nabla {

/// coefficient * (1 - s)^shift
struct ImpulseComponent {
  int shift;
  cplx coefficient;
};

/// coefficient / (s - pole)
struct SimpleComponent {
  cplx pole;
  cplx coefficient;
};

/// coefficient / (s - pole)^order
struct MultipleComponent {
  cplx pole;
  int order;
  cplx coefficient;
};

struct PartialFractionForm {
  std::vector<ImpulseComponent> impulsePart;
  std::vector<SimpleComponent> simpleTerms;
  std::vector<MultipleComponent> multipleTerms;

  cplx operator()(cplx s) const {
    cplx acc{0.0};
    for (const auto& t : impulsePart) acc += t.coefficient * std::pow(1.0 - s, t.shift);
    for (const auto& t : simpleTerms) acc += t.coefficient / (s - t.pole);
    for (const auto& t : multipleTerms) acc += t.coefficient / std::pow(s - t.pole, t.order);
    return acc;
  }
};

namespace detail {

/// Polynomial part Q of F rewritten as sum b_n (1 - s)^n; zero terms dropped.
inline std::vector<ImpulseComponent> impulseExpansion(const Polynomial& quotient) {
  std::vector<ImpulseComponent> out;
  if (quotient.isZero()) return out;
  const Polynomial inW = quotient.composeOneMinus();
  for (int n = 0; n <= inW.degree(); ++n)
    if (inW[n] != cplx{0.0}) out.push_back({n, inW[n]});
  return out;
}

}  // namespace detail

/// Partial fraction expansion of F over its complex poles.
///
/// For an N-fold pole lambda, q_i = T_{N-i} where T_j are the Taylor
/// coefficients at lambda of (s - lambda)^N F(s) = R(s) / D_lambda(s), with
/// D_lambda the denominator rebuilt from the other poles. Simple poles are the
/// N = 1 case. An improper F first has its polynomial quotient split off and
/// re-expanded in powers of (1 - s).
inline PartialFractionForm expand(const RationalFunction& rf) {
  requireNoPoleAtOne(rf);
  PartialFractionForm form;
  if (rf.isZero()) return form;

  auto [quotient, remainder] = divmod(rf.numerator(), rf.denominator());
  form.impulsePart = detail::impulseExpansion(quotient);
  if (remainder.isZero()) return form;

  const PoleSet& poleSet = rf.poles();
  for (std::size_t idx = 0; idx < poleSet.size(); ++idx) {
    const cplx lambda = poleSet[idx].value;
    const int order = poleSet[idx].multiplicity;
    std::vector<cplx> others;
    for (std::size_t j = 0; j < poleSet.size(); ++j)
      if (j != idx)
        for (int m = 0; m < poleSet[j].multiplicity; ++m) others.push_back(poleSet[j].value);
    const Polynomial reducedDen = Polynomial::fromRoots(others);
    const auto taylor = seriesDivide(remainder.taylorAt(lambda), reducedDen.taylorAt(lambda), order);
    if (order == 1) {
      form.simpleTerms.push_back({lambda, taylor[0]});
    } else {
      for (int i = 1; i <= order; ++i)
        form.multipleTerms.push_back({lambda, i, taylor[static_cast<std::size_t>(order - i)]});
    }
  }
  return form;
}

}  // namespace nabla
