#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/format.hpp"
#include "nabla/rational.hpp"
#include "nabla/roc.hpp"
#include "nabla/sequence.hpp"

namespace nabla {

/// f(k) for k = a + n, n >= 1.
struct SequenceEvaluator {
  double a = 0.0;
  std::function<cplx(int)> atOffset;

  cplx operator()(int n) const { return atOffset(n); }

  static SequenceEvaluator of(const ClosedFormSequence& cf) {
    return {cf.basePoint(), [cf](int n) { return cf.atOffset(n); }};
  }
};

using TransformFn = std::function<cplx(cplx)>;

struct ForwardResult {
  cplx value;
  long terms = 0;
  bool truncated = false;  ///< stopped at nMax before the tolerance test passed
};

/// Truncated nabla Laplace transform sum_{n>=1} (1-s)^{n-1} f(a+n).
///
/// Stops once 5 consecutive increments fall below tol * (1 + |sum|); 50
/// consecutive growing increments is reported as divergence.
inline ForwardResult forwardTransform(const SequenceEvaluator& seq, cplx s, double tol = 1e-12, long nMax = 100000) {
  if (!(tol > 0.0)) throw InvalidArgumentError("forwardTransform: tol must be positive");
  const cplx w = 1.0 - s;
  cplx power{1.0}, sum{0.0};
  int quiet = 0, growing = 0;
  double previous = -1.0;
  for (long n = 1; n <= nMax; ++n) {
    const cplx inc = power * seq(static_cast<int>(n));
    sum += inc;
    const double mag = std::abs(inc);
    if (!std::isfinite(mag)) throw DivergenceError("forward transform: non-finite term at k - a = " + std::to_string(n));
    quiet = mag < tol * (1.0 + std::abs(sum)) ? quiet + 1 : 0;
    if (quiet >= 5) return {sum, n, false};
    growing = (previous >= 0.0 && mag > previous && mag > 0.0) ? growing + 1 : 0;
    if (growing >= 50)
      throw DivergenceError("forward transform diverges at s = " + formatComplex(s) + " (|1-s| = " +
                            formatReal(std::abs(w)) + "); s is probably outside the ROC");
    previous = mag;
    power *= w;
  }
  return {sum, nMax, true};
}

/// Default contour radius around s = 1 given the distance to the nearest singularity.
inline double defaultContourRadius(double singularityDistance) {
  return std::min(0.5, 0.9 * singularityDistance);
}

/// f(a + n) by trapezoidal quadrature of the inverse contour integral.
///
/// With w = 1 - s = rho e^{i theta} the clockwise contour around s = 1 becomes
/// the positive circle in w and the integral reduces to
///   f(a+n) = (1/2pi) int F(1 - rho e^{i theta}) rho^{-(n-1)} e^{-i(n-1)theta} dtheta.
/// Nodes are summed in index order, so results are reproducible.
inline cplx numericInverse(const TransformFn& F, int n, double rho, int nodes,
                           std::optional<double> rocRadius = std::nullopt) {
  if (n < 1) throw InvalidArgumentError("numericInverse: k - a must be >= 1");
  if (!(rho > 0.0) || (rocRadius && !(rho < *rocRadius)))
    throw InvalidArgumentError("numericInverse: contour radius " + formatReal(rho) + " must lie in (0, " +
                               (rocRadius ? formatReal(*rocRadius) : std::string("inf")) + ")");
  if (nodes < 4 * n)
    throw InvalidArgumentError("numericInverse: need at least 4*(k-a) = " + std::to_string(4 * n) + " nodes");
  const int m = n - 1;
  cplx acc{0.0};
  for (int j = 0; j < nodes; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / nodes;
    const cplx unit(std::cos(theta), std::sin(theta));
    // e^{-i m theta} with the exponent reduced modulo nodes to keep the angle small.
    const double back = -2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(m) * j) % nodes) / nodes;
    acc += F(1.0 - rho * unit) * cplx(std::cos(back), std::sin(back));
  }
  return acc / static_cast<double>(nodes) * std::pow(rho, -static_cast<double>(m));
}

/// f(a+1) = lim_{s->1} F(s).
inline cplx initialValue(const TransformFn& F) {
  cplx v;
  try {
    v = F(1.0);
  } catch (const PoleEvaluationError&) {
    throw NotInvertibleError("initial value: F(s) has a pole at s = 1, so lim_{s->1} F(s) is not finite");
  }
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw NotInvertibleError("initial value: F(1) is not finite");
  return v;
}

/// |Z_a{g}(z) - N_a{f}(s)| with g(k) = f(k+1) and z^{-1} = 1 - s. Both series
/// are summed term by term to the same length; the residual is rounding only.
inline double zCorrespondence(const SequenceEvaluator& seq, cplx s, double tol = 1e-12, long nMax = 100000) {
  const ForwardResult nabla = forwardTransform(seq, s, tol, nMax);
  const cplx zInv = 1.0 - s;
  cplx zSum{0.0};
  for (long k = 0; k < nabla.terms; ++k) zSum += std::pow(zInv, static_cast<double>(k)) * seq(static_cast<int>(k + 1));
  return std::abs(zSum - nabla.value);
}

}  // namespace nabla
