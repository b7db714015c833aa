#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/format.hpp"
#include "nabla/specfun.hpp"

namespace nabla {

/// c * delta(k - a - 1 - shift)
struct ImpulseTerm {
  cplx coefficient;
  int shift = 0;
};

/// c * (1 - pole)^{-(k-a)}
struct GeometricTerm {
  cplx coefficient;
  cplx pole;
};

/// c * (k-a)^{(order-1)} / ((order-1)! (1 - pole)^{k-a+order-1})
struct PolyGeometricTerm {
  cplx coefficient;
  cplx pole;
  int order = 1;
};

/// c * F_{alpha,beta}(lambda, k, a)
struct MittagLefflerTerm {
  cplx coefficient;
  MLParams params;
};

using Term = std::variant<ImpulseTerm, GeometricTerm, PolyGeometricTerm, MittagLefflerTerm>;

namespace detail {

inline cplx ipow(cplx base, long e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  cplx result{1.0};
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

}  // namespace detail

/// Value of a single term at offset n = k - a >= 1.
inline cplx evalTerm(const Term& term, int n) {
  return std::visit(
      [n](const auto& t) -> cplx {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ImpulseTerm>) {
          return n - 1 == t.shift ? t.coefficient : cplx{0.0};
        } else if constexpr (std::is_same_v<T, GeometricTerm>) {
          return t.coefficient * detail::ipow(1.0 - t.pole, -n);
        } else if constexpr (std::is_same_v<T, PolyGeometricTerm>) {
          double rising = 1.0, fact = 1.0;
          for (int i = 0; i < t.order - 1; ++i) {
            rising *= n + i;
            fact *= i + 1;
          }
          return t.coefficient * (rising / fact) * detail::ipow(1.0 - t.pole, -(n + t.order - 1));
        } else {
          return t.coefficient * mittagLefflerAtOffset(t.params, n);
        }
      },
      term);
}

inline std::string describeTerm(const Term& term) {
  auto one = [](cplx pole) {
    const std::string p = formatComplex(pole);
    return pole.imag() == 0.0 && pole.real() < 0.0 ? "(1+" + p.substr(1) + ")" : "(1-" + p + ")";
  };
  return std::visit(
      [&one](const auto& t) -> std::string {
        using T = std::decay_t<decltype(t)>;
        const std::string c = formatComplex(t.coefficient);
        if constexpr (std::is_same_v<T, ImpulseTerm>) {
          return c + "*delta(k-a-1" + (t.shift ? "-" + std::to_string(t.shift) : "") + ")";
        } else if constexpr (std::is_same_v<T, GeometricTerm>) {
          return c + "/" + one(t.pole) + "^(k-a)";
        } else if constexpr (std::is_same_v<T, PolyGeometricTerm>) {
          const int m = t.order - 1;
          return c + "*(k-a)^rising(" + std::to_string(m) + ")/(" + std::to_string(m) + "!*" + one(t.pole) +
                 "^(k-a+" + std::to_string(m) + "))";
        } else {
          return c + "*F_{" + formatReal(t.params.alpha) + "," + formatReal(t.params.beta) + "}(" +
                 formatComplex(t.params.lambda) + ",k,a)";
        }
      },
      term);
}

/// Closed-form causal sequence f(k), k in {a+1, a+2, ...}, as a sum of table terms.
class ClosedFormSequence {
 public:
  ClosedFormSequence() = default;
  ClosedFormSequence(double basePoint, std::vector<Term> terms) : a_(basePoint), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
      if (const auto* g = std::get_if<GeometricTerm>(&t); g && g->pole == cplx{1.0})
        throw InvalidArgumentError("geometric term with pole at 1");
      if (const auto* g = std::get_if<PolyGeometricTerm>(&t); g && (g->pole == cplx{1.0} || g->order < 1))
        throw InvalidArgumentError("poly-geometric term needs pole != 1 and order >= 1");
      if (const auto* m = std::get_if<MittagLefflerTerm>(&t)) validate(m->params);
    }
  }

  double basePoint() const noexcept { return a_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  cplx atOffset(int n) const {
    if (n < 1) throw InvalidArgumentError("sequence is defined only for k - a >= 1");
    cplx acc{0.0};
    for (const auto& t : terms_) acc += evalTerm(t, n);
    return acc;
  }

  /// Sum of |term| at offset n; the natural rounding scale of atOffset(n).
  double magnitudeAtOffset(int n) const {
    double acc = 0.0;
    for (const auto& t : terms_) acc += std::abs(evalTerm(t, n));
    return acc;
  }

  std::string toString() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) out += " + ";
      out += describeTerm(t);
    }
    return out;
  }

 private:
  double a_ = 0.0;
  std::vector<Term> terms_;
};

/// k - a as a positive integer.
inline int offsetOf(double k, double a) {
  const double offset = k - a;
  const double n = std::round(offset);
  if (std::abs(offset - n) > 1e-9 || n < 1.0)
    throw InvalidArgumentError("k = " + formatReal(k) + " is not in {a+1, a+2, ...} for a = " + formatReal(a));
  return static_cast<int>(n);
}

inline cplx evalClosedFormComplex(const ClosedFormSequence& cf, double k) {
  return cf.atOffset(offsetOf(k, cf.basePoint()));
}

/// Real value of f(k). The imaginary residue left by conjugate terms must be
/// below 1e-9 relative to the term magnitudes.
inline double evalClosedForm(const ClosedFormSequence& cf, double k) {
  const int n = offsetOf(k, cf.basePoint());
  const cplx v = cf.atOffset(n);
  const double scale = std::max(1.0, cf.magnitudeAtOffset(n));
  if (std::abs(v.imag()) > 1e-9 * scale)
    throw RealnessError("sequence value at k = " + formatReal(k) + " has imaginary part " + formatReal(v.imag()),
                        v.imag());
  return v.real();
}

}  // namespace nabla
