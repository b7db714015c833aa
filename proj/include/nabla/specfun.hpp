#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "nabla/error.hpp"
#include "nabla/format.hpp"
#include "nabla/gamma.hpp"

namespace nabla {

/// Rising function n^{(alpha)} = Gamma(n + alpha) / Gamma(n).
inline cplx risingFactorial(double n, cplx alpha) {
  if (!(n > 0.0)) throw InvalidArgumentError("risingFactorial: base must be positive");
  if (alpha.imag() == 0.0 && alpha.real() >= 0.0 && alpha.real() == std::floor(alpha.real()) &&
      alpha.real() <= 4096.0) {
    double prod = 1.0;
    const int m = static_cast<int>(alpha.real());
    for (int i = 0; i < m; ++i) prod *= n + i;
    return prod;
  }
  return std::exp(logGamma(n + alpha) - logGamma(cplx(n, 0.0)));
}

/// Parameters of the discrete Mittag-Leffler function F_{alpha,beta}(lambda, k, a).
struct MLParams {
  double alpha = 1.0;
  double beta = 1.0;
  cplx lambda{0.0};
  double a = 0.0;
};

struct MLOptions {
  int maxIterations = 10000;
  double relTol = 1e-15;
  int consecutive = 3;
};

inline void validate(const MLParams& p) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0))
    throw InvalidArgumentError("Mittag-Leffler parameters alpha and beta must be positive");
  if (!(std::abs(p.lambda) < 1.0))
    throw DomainError("Mittag-Leffler series requires |lambda| < 1 (got |lambda| = " +
                      formatReal(std::abs(p.lambda)) + ")");
}

/// F_{alpha,beta}(lambda, a + n, a) for the offset n = k - a >= 1:
///   sum_i lambda^i n^{(i alpha + beta - 1)} / Gamma(i alpha + beta).
/// n^{(x-1)} / Gamma(x) = (x)_{n-1} / (n-1)!, a finite product for moderate n, else log-gamma.
/// Terms alternate in sign for negative lambda, so accumulation is compensated and in long double.
inline cplx mittagLefflerAtOffset(const MLParams& p, int n, const MLOptions& opt = {}) {
  using ld = long double;
  validate(p);
  if (n < 1) throw InvalidArgumentError("Mittag-Leffler: k - a must be a positive integer");
  if (p.lambda == cplx{0.0}) return risingFactorial(n, p.beta - 1.0) / std::exp(logGammaPositive(p.beta));

  constexpr int kProductLimit = 256;
  const ld lgN = std::lgamma(static_cast<ld>(n));
  const auto ratio = [&](ld x) -> ld {
    if (n <= kProductLimit) {
      ld prod = 1.0L;
      for (int j = 0; j + 1 < n; ++j) prod *= (x + j) / (j + 1);
      return prod;
    }
    return std::exp(std::lgamma(x + n - 1) - lgN - std::lgamma(x));
  };
  const ld r = std::abs(std::complex<ld>(p.lambda.real(), p.lambda.imag()));
  const bool real = p.lambda.imag() == 0.0;
  const ld theta = std::atan2(static_cast<ld>(p.lambda.imag()), static_cast<ld>(p.lambda.real()));
  const auto power = [&](int i) -> std::complex<ld> {
    const ld mag = std::pow(r, static_cast<ld>(i));
    if (real) return {(p.lambda.real() < 0.0 && i % 2) ? -mag : mag, 0.0L};
    return std::polar(mag, theta * i);
  };

  // Neumaier summation per component.
  ld sre = 0.0L, sim = 0.0L, cre = 0.0L, cim = 0.0L;
  const auto add = [](ld& sum, ld& comp, ld v) {
    const ld t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  };
  int small = 0;
  double last = 0.0;
  for (int i = 0; i < opt.maxIterations; ++i) {
    const std::complex<ld> t = power(i) * ratio(static_cast<ld>(i) * p.alpha + p.beta);
    add(sre, cre, t.real());
    add(sim, cim, t.imag());
    last = static_cast<double>(std::abs(t));
    const double total = static_cast<double>(std::abs(std::complex<ld>(sre + cre, sim + cim)));
    small = i > 0 && last < opt.relTol * (1.0 + total) ? small + 1 : 0;
    if (small >= opt.consecutive)
      return {static_cast<double>(sre + cre), static_cast<double>(sim + cim)};
  }
  throw ConvergenceError("Mittag-Leffler series did not converge within " + std::to_string(opt.maxIterations) +
                             " terms (last term magnitude " + formatReal(last) + ")",
                         last);
}

/// F_{alpha,beta}(lambda, k, a) for k in {a+1, a+2, ...}.
inline cplx discreteMittagLeffler(const MLParams& p, double k, const MLOptions& opt = {}) {
  const double offset = k - p.a;
  const double n = std::round(offset);
  if (std::abs(offset - n) > 1e-9 || n < 1.0)
    throw InvalidArgumentError("Mittag-Leffler: k must lie in {a+1, a+2, ...}");
  return mittagLefflerAtOffset(p, static_cast<int>(n), opt);
}

}  // namespace nabla
