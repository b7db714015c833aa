#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/format.hpp"
#include "nabla/polynomial.hpp"
#include "nabla/roots.hpp"

namespace nabla {

using PoleSet = std::vector<RootCluster>;

/// Rational F(s) = numerator(s) / denominator(s).
///
/// Construction normalizes the denominator to be monic and cancels common
/// numerator/denominator roots (same tolerance as root clustering), so the
/// stored pole set never contains removable singularities.
class RationalFunction {
 public:
  RationalFunction() : num_(Polynomial{}), den_(Polynomial::constant(1.0)) {}

  RationalFunction(Polynomial numerator, Polynomial denominator, RootOptions opt = {})
      : num_(std::move(numerator)), den_(std::move(denominator)), opt_(opt) {
    if (den_.isZero()) throw InvalidArgumentError("rational function: denominator is identically zero");
    const cplx lead = den_.leading();
    num_ = num_ / lead;
    den_ = den_ / lead;
    if (num_.isZero()) {
      den_ = Polynomial::constant(1.0);
      return;
    }
    if (den_.degree() == 0) return;
    poles_ = polyRoots(den_, opt_);
    if (num_.degree() >= 1) cancelCommonRoots();
  }

  static RationalFunction polynomial(Polynomial p) { return {std::move(p), Polynomial::constant(1.0)}; }

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }
  const PoleSet& poles() const noexcept { return poles_; }
  const RootOptions& options() const noexcept { return opt_; }

  bool isZero() const noexcept { return num_.isZero(); }
  bool isStrictlyProper() const noexcept { return num_.isZero() || num_.degree() < den_.degree(); }
  bool hasRealCoefficients() const noexcept { return num_.hasRealCoefficients() && den_.hasRealCoefficients(); }

  /// Distance from s = 1 to the nearest pole (infinity for a polynomial).
  double poleDistanceFromOne() const noexcept {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& p : poles_) d = std::min(d, std::abs(p.value - 1.0));
    return d;
  }

  bool hasPoleAtOne() const noexcept {
    return std::any_of(poles_.begin(), poles_.end(),
                       [&](const RootCluster& p) { return std::abs(p.value - 1.0) <= 2.0 * opt_.clusterRelTol; });
  }

  cplx operator()(cplx s) const {
    for (const auto& p : poles_)
      if (std::abs(s - p.value) <= 1e-12)
        throw PoleEvaluationError("F(s) evaluated at its pole s = " + formatComplex(p.value), p.value);
    return num_(s) / den_(s);
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, a.opt_};
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_, a.opt_};
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_, a.opt_};
  }
  friend RationalFunction operator*(cplx k, const RationalFunction& a) { return {k * a.num_, a.den_, a.opt_}; }

 private:
  void cancelCommonRoots() {
    std::vector<RootCluster> zeros = polyRoots(num_, opt_);
    bool cancelled = false;
    for (auto& p : poles_) {
      for (auto& z : zeros) {
        if (z.multiplicity == 0 || p.multiplicity == 0) continue;
        if (std::abs(z.value - p.value) <= opt_.clusterRelTol * (1.0 + std::abs(p.value))) {
          const int k = std::min(z.multiplicity, p.multiplicity);
          z.multiplicity -= k;
          p.multiplicity -= k;
          cancelled = true;
        }
      }
    }
    if (!cancelled) return;
    const cplx lead = num_.leading();
    std::vector<cplx> zr, pr;
    for (const auto& z : zeros)
      for (int i = 0; i < z.multiplicity; ++i) zr.push_back(z.value);
    std::erase_if(poles_, [](const RootCluster& c) { return c.multiplicity == 0; });
    for (const auto& p : poles_)
      for (int i = 0; i < p.multiplicity; ++i) pr.push_back(p.value);
    num_ = Polynomial::fromRoots(zr, lead);
    den_ = Polynomial::fromRoots(pr);
  }

  Polynomial num_;
  Polynomial den_;
  PoleSet poles_;
  RootOptions opt_{};
};

inline cplx evalRational(const RationalFunction& rf, cplx s) { return rf(s); }
inline PoleSet poles(const RationalFunction& rf) { return rf.poles(); }

inline void requireNoPoleAtOne(const RationalFunction& rf) {
  if (rf.hasPoleAtOne())
    throw NotInvertibleError(
        "s=1 is a pole of F(s): a finite-valued causal sequence needs f(a+1) = lim_{s->1} F(s) to be finite "
        "(initial value theorem), so F(s) is not the transform of any such sequence");
}

/// Coefficients c_0..c_order of F(1 - w) = sum c_j w^j. These are the sequence
/// values f(a+1+j).
inline std::vector<cplx> seriesAtOne(const RationalFunction& rf, int order) {
  if (order < 0) throw InvalidArgumentError("seriesAtOne: order must be >= 0");
  requireNoPoleAtOne(rf);
  return seriesDivide(rf.numerator().composeOneMinus(), rf.denominator().composeOneMinus(), order + 1);
}

}  // namespace nabla
