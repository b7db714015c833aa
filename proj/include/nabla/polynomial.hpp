#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "nabla/error.hpp"

namespace nabla {

/// Polynomial in one complex variable, coefficients stored in ascending degree.
///
/// Trailing zero coefficients are trimmed on construction, so the leading
/// coefficient is nonzero unless the polynomial is identically zero (which is
/// stored as the single coefficient 0 with degree 0).
class Polynomial {
 public:
  Polynomial() : coeffs_{cplx{0.0}} {}
  explicit Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(cplx c) { return Polynomial({c}); }
  static Polynomial identity() { return Polynomial({cplx{0.0}, cplx{1.0}}); }

  /// lead * prod (s - r_i)
  static Polynomial fromRoots(std::span<const cplx> roots, cplx lead = 1.0) {
    std::vector<cplx> c{lead};
    for (cplx r : roots) {
      c.push_back(0.0);
      for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
      c[0] = -r * c[0];
    }
    return Polynomial(std::move(c));
  }

  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool isZero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == cplx{0.0}; }
  cplx leading() const noexcept { return coeffs_.back(); }
  cplx operator[](int i) const { return i >= 0 && i <= degree() ? coeffs_[static_cast<std::size_t>(i)] : cplx{0.0}; }

  bool hasRealCoefficients() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c.imag() == 0.0; });
  }

  double maxAbsCoeff() const noexcept {
    double m = 0.0;
    for (cplx c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  // Horner.
  cplx operator()(cplx s) const noexcept {
    cplx acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * s + coeffs_[i];
    return acc;
  }

  Polynomial derivative() const {
    if (degree() == 0) return Polynomial{};
    std::vector<cplx> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
    return Polynomial(std::move(d));
  }

  /// Coefficients of p(c + t) in powers of t (repeated synthetic division).
  Polynomial taylorAt(cplx c) const {
    std::vector<cplx> b = coeffs_;
    const std::size_t n = b.size();
    for (std::size_t j = 0; j + 1 < n; ++j)
      for (std::size_t i = n - 1; i > j; --i) b[i - 1] += c * b[i];
    return Polynomial(std::move(b));
  }

  /// Coefficients of p(1 - w) in powers of w.
  Polynomial composeOneMinus() const {
    std::vector<cplx> b = taylorAt(1.0).coeffs_;
    for (std::size_t j = 1; j < b.size(); j += 2) b[j] = -b[j];
    return Polynomial(std::move(b));
  }

  /// Drops leading coefficients below relTol * max|coeff|; used to scrub
  /// cancellation noise after arithmetic on parsed input.
  Polynomial trimmed(double relTol) const {
    const double cut = relTol * maxAbsCoeff();
    std::vector<cplx> c = coeffs_;
    while (c.size() > 1 && std::abs(c.back()) <= cut) c.pop_back();
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<cplx> c = a.coeffs_;
    for (auto& x : c) x = -x;
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.isZero() || b.isZero()) return Polynomial{};
    std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1, cplx{0.0});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(cplx k, const Polynomial& p) {
    std::vector<cplx> c = p.coeffs_;
    for (auto& x : c) x *= k;
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& p, cplx k) { return k * p; }
  friend Polynomial operator/(const Polynomial& p, cplx k) { return (1.0 / k) * p; }

  Polynomial pow(unsigned n) const {
    Polynomial result = constant(1.0);
    Polynomial base = *this;
    while (n) {
      if (n & 1u) result = result * base;
      n >>= 1u;
      if (n) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    while (coeffs_.size() > 1 && coeffs_.back() == cplx{0.0}) coeffs_.pop_back();
  }

  std::vector<cplx> coeffs_;
};

inline cplx polyEval(const Polynomial& p, cplx s) noexcept { return p(s); }
inline Polynomial polyDerivative(const Polynomial& p) { return p.derivative(); }

/// Euclidean division: num = quotient * den + remainder, deg remainder < deg den.
inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
  if (den.isZero()) throw InvalidArgumentError("polynomial division by zero");
  const int n = num.degree();
  const int d = den.degree();
  if (n < d) return {Polynomial{}, num};
  std::vector<cplx> r = num.coeffs();
  std::vector<cplx> q(static_cast<std::size_t>(n - d + 1), cplx{0.0});
  const cplx lead = den.leading();
  for (int i = n - d; i >= 0; --i) {
    const cplx t = r[static_cast<std::size_t>(i + d)] / lead;
    q[static_cast<std::size_t>(i)] = t;
    for (int j = 0; j <= d; ++j) r[static_cast<std::size_t>(i + j)] -= t * den[j];
  }
  r.resize(static_cast<std::size_t>(std::max(d, 1)));
  if (d == 0) r.assign(1, cplx{0.0});
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

/// First `count` coefficients of the power series num(t)/den(t) around t = 0.
inline std::vector<cplx> seriesDivide(const Polynomial& num, const Polynomial& den, int count) {
  const cplx d0 = den[0];
  if (d0 == cplx{0.0}) throw InvalidArgumentError("series division: denominator vanishes at the expansion point");
  std::vector<cplx> c(static_cast<std::size_t>(std::max(count, 0)));
  for (int j = 0; j < count; ++j) {
    cplx acc = num[j];
    const int top = std::min(j, den.degree());
    for (int i = 1; i <= top; ++i) acc -= den[i] * c[static_cast<std::size_t>(j - i)];
    c[static_cast<std::size_t>(j)] = acc / d0;
  }
  return c;
}

}  // namespace nabla
