#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/expr.hpp"
#include "nabla/format.hpp"
#include "nabla/roc.hpp"
#include "nabla/sequence.hpp"
#include "nabla/specfun.hpp"
#include "nabla/verify.hpp"

namespace nabla {

inline constexpr int kTableRows = 16;

/// Slots of the pair table. Rows read only the slots they use.
struct TableParams {
  double gamma = 0.5;
  cplx lambda{0.3};
  double alpha = 0.5;
  double beta = 0.5;
  double omega = std::numbers::pi / 6.0;
  int order = 2;
};

/// One table row instantiated with concrete parameters.
struct TableEntry {
  int row = 0;
  TableParams params;
  std::string sequence;   ///< f(k) with parameters substituted
  std::string transform;  ///< F(s) in expression syntax (parseable)
  std::string rocText;
  Roc roc;
  std::function<cplx(int)> sequenceAt;    ///< f(a+n), n >= 1
  std::function<cplx(cplx)> transformAt;  ///< F(s)
};

namespace detail {

// Literal for embedding in expression text.
inline std::string lit(double x) { return x < 0 ? "(" + formatReal(x) + ")" : formatReal(x); }
inline std::string lit(cplx z) {
  if (z.imag() == 0.0) return lit(z.real());
  return "(" + formatComplex(z) + ")";
}

inline std::string realText(cplx z) { return z.imag() == 0.0 ? formatReal(z.real()) : formatComplex(z); }

}  // namespace detail

/// Instantiates row 1..16 of the nabla pair table.
inline TableEntry tableEntry(int row, const TableParams& p) {
  using detail::lit;
  using detail::realText;
  TableEntry e;
  e.row = row;
  e.params = p;
  const double g = p.gamma;
  const cplx lam = p.lambda;
  const double al = p.alpha, be = p.beta, om = p.omega;
  const int N = p.order;
  auto needGamma = [&] {
    if (g == 0.0) throw InvalidArgumentError("table row " + std::to_string(row) + " needs gamma != 0");
  };
  switch (row) {
    case 1:
      e.sequence = "delta(k-a-1)";
      e.transform = "1";
      e.rocText = "all s";
      e.roc = Roc::wholePlane();
      e.sequenceAt = [](int n) { return n == 1 ? cplx{1.0} : cplx{0.0}; };
      e.transformAt = [](cplx) { return cplx{1.0}; };
      break;
    case 2:
      e.sequence = "u(k-a-1)";
      e.transform = "1/s";
      e.rocText = "|1-s| < 1";
      e.roc = Roc::disk(1.0);
      e.sequenceAt = [](int) { return cplx{1.0}; };
      e.transformAt = [](cplx s) { return 1.0 / s; };
      break;
    case 3:
      e.sequence = "k-a";
      e.transform = "1/s^2";
      e.rocText = "|1-s| < 1";
      e.roc = Roc::disk(1.0);
      e.sequenceAt = [](int n) { return cplx(n); };
      e.transformAt = [](cplx s) { return 1.0 / (s * s); };
      break;
    case 4:
      needGamma();
      e.sequence = formatReal(g) + "^{k-a-1}";
      e.transform = "1/(1 - " + lit(g) + " + " + lit(g) + "*s)";
      e.rocText = "|1-s|*" + formatReal(std::abs(g)) + " < 1";
      e.roc = Roc::disk(1.0 / std::abs(g));
      e.sequenceAt = [g](int n) { return detail::ipow(cplx(g), n - 1); };
      e.transformAt = [g](cplx s) { return 1.0 / (1.0 - g + g * s); };
      break;
    case 5:
    case 6: {
      if (!(al + 1.0 > 0.0)) throw InvalidArgumentError("table rows 5-6 need alpha > -1");
      const double gg = row == 5 ? 1.0 : g;
      if (row == 6) needGamma();
      const double lg1 = std::lgamma(al + 1.0);
      const std::string rising = "(k-a)^{(" + formatReal(al) + ")}/Gamma(" + formatReal(al + 1.0) + ")";
      if (row == 5) {
        e.sequence = rising;
        e.transform = "1/s^" + lit(al + 1.0);
        e.rocText = "|1-s| < 1";
        e.roc = Roc::disk(1.0);
      } else {
        e.sequence = formatReal(g) + "^{k-a-1}*" + rising;
        e.transform = "1/(1 - " + lit(g) + " + " + lit(g) + "*s)^" + lit(al + 1.0);
        e.rocText = "|1-s|*" + formatReal(std::abs(g)) + " < 1";
        e.roc = Roc::disk(1.0 / std::abs(g));
      }
      e.sequenceAt = [gg, al, lg1](int n) {
        return detail::ipow(cplx(gg), n - 1) * risingFactorial(n, al) / std::exp(lg1);
      };
      e.transformAt = [gg, al](cplx s) { return std::pow(1.0 - gg + gg * s, -(al + 1.0)); };
      break;
    }
    case 7:
      if (lam == cplx{1.0}) throw InvalidArgumentError("table row 7 needs lambda != 1");
      e.sequence = "(1-" + detail::lit(lam) + ")^{-(k-a)}";
      e.transform = "1/(s - " + lit(lam) + ")";
      e.rocText = "|1-s| < " + formatReal(std::abs(1.0 - lam));
      e.roc = Roc::disk(std::abs(1.0 - lam));
      e.sequenceAt = [lam](int n) { return detail::ipow(1.0 - lam, -n); };
      e.transformAt = [lam](cplx s) { return 1.0 / (s - lam); };
      break;
    case 8: {
      if (lam == cplx{1.0} || N < 1) throw InvalidArgumentError("table row 8 needs lambda != 1 and N >= 1");
      const std::string m = std::to_string(N - 1);
      e.sequence = "(k-a)^{(" + m + ")}/(" + m + "!*(1-" + lit(lam) + ")^{k-a+" + m + "})";
      e.transform = "1/(s - " + lit(lam) + ")^" + std::to_string(N);
      const double r = std::min(std::abs(1.0 - lam), 1.0);
      e.rocText = "|1-s| < " + formatReal(r);
      e.roc = Roc::disk(r);
      const PolyGeometricTerm term{1.0, lam, N};
      e.sequenceAt = [term](int n) { return evalTerm(term, n); };
      e.transformAt = [lam, N](cplx s) { return detail::ipow(s - lam, -N); };
      break;
    }
    case 9:
    case 10: {
      const double b = row == 9 ? be : al;
      const MLParams ml{al, b, lam, 0.0};
      validate(ml);
      e.roc = Roc({DiskAroundOne{1.0}, FractionalDominance{al, lam}});
      e.rocText = "|1-s| < 1 and " + realText(std::abs(lam)) + " < |s|^" + formatReal(al);
      const std::string F = "F_{" + formatReal(al) + "," + formatReal(b) + "}(" + realText(lam) + ",k,a)";
      if (row == 9) {
        e.sequence = F;
        const std::string num = al == be ? "1" : "s^" + lit(al - be);
        e.transform = num + "/(s^" + lit(al) + " - " + lit(lam) + ")";
        e.sequenceAt = [ml](int n) { return mittagLefflerAtOffset(ml, n); };
        e.transformAt = [al, be, lam](cplx s) { return std::pow(s, al - be) / (std::pow(s, al) - lam); };
      } else {
        e.sequence = "(k-a-1)*" + F;
        e.transform = lit(al) + "*s^" + lit(al - 1.0) + "*(1 - s)/(s^" + lit(al) + " - " + lit(lam) + ")^2";
        e.sequenceAt = [ml](int n) { return static_cast<double>(n - 1) * mittagLefflerAtOffset(ml, n); };
        e.transformAt = [al, lam](cplx s) {
          const cplx d = std::pow(s, al) - lam;
          return al * std::pow(s, al - 1.0) * (1.0 - s) / (d * d);
        };
      }
      break;
    }
    case 11:
    case 12: {
      const double l = lam.real();
      const double gg = row == 11 ? 1.0 : g;
      if (row == 12) needGamma();
      const std::string damp = "e^{-" + lit(l) + "*(k-a-1)}";
      e.sequence = row == 11 ? damp : formatReal(g) + "^{k-a-1}*" + damp;
      e.transform = row == 11 ? "1/(1 - exp(" + formatReal(-l) + ")*(1 - s))"
                              : "1/(1 - " + lit(g) + "*exp(" + formatReal(-l) + ")*(1 - s))";
      e.rocText = row == 11 ? "|1-s| < e^{" + formatReal(l) + "}"
                            : "|1-s|*" + formatReal(std::abs(g)) + " < e^{" + formatReal(l) + "}";
      e.roc = Roc::disk(std::exp(l) / std::abs(gg));
      e.sequenceAt = [gg, l](int n) { return cplx(std::pow(gg, n - 1) * std::exp(-l * (n - 1))); };
      e.transformAt = [gg, l](cplx s) { return 1.0 / (1.0 - gg * std::exp(-l) * (1.0 - s)); };
      break;
    }
    case 13:
    case 14:
    case 15:
    case 16: {
      const bool hyper = row >= 15;
      const bool odd = row == 13 || row == 15;
      const std::string fs = hyper ? "sinh" : "sin";
      const std::string fc = hyper ? "cosh" : "cos";
      e.sequence = (odd ? fs : fc) + "(" + formatReal(om) + "*(k-a-1))";
      const std::string den = "(1 - 2*" + fc + "(" + lit(om) + ")*(1 - s) + (1 - s)^2)";
      e.transform = odd ? fs + "(" + lit(om) + ")*(1 - s)/" + den : "(1 - " + fc + "(" + lit(om) + ")*(1 - s))/" + den;
      const double r = hyper ? std::min(std::exp(om), std::exp(-om)) : 1.0;
      e.rocText = "|1-s| < " + formatReal(r);
      e.roc = Roc::disk(r);
      const double sv = hyper ? std::sinh(om) : std::sin(om);
      const double cv = hyper ? std::cosh(om) : std::cos(om);
      e.sequenceAt = [hyper, odd, om](int n) {
        const double x = om * (n - 1);
        return cplx(hyper ? (odd ? std::sinh(x) : std::cosh(x)) : (odd ? std::sin(x) : std::cos(x)));
      };
      e.transformAt = [odd, sv, cv](cplx s) {
        const cplx w = 1.0 - s;
        return (odd ? sv * w : 1.0 - cv * w) / (1.0 - 2.0 * cv * w + w * w);
      };
      break;
    }
    default: throw InvalidArgumentError("table row must be in 1..16, got " + std::to_string(row));
  }
  return e;
}

/// Row instances used for listing and round-trip checks.
inline std::vector<TableEntry> defaultTableEntries() {
  std::vector<TableEntry> out;
  for (int r = 1; r <= kTableRows; ++r) out.push_back(tableEntry(r, TableParams{}));
  return out;
}

/// Largest radius fraction of the ROC disk (capped at 1) whose circle lies in the ROC.
inline std::optional<double> interiorCircleRadius(const Roc& roc, double fraction = 0.5, int points = 16) {
  const double r = std::min(roc.diskRadius().value_or(1.0), 1.0);
  for (double f = fraction; f > 1e-3; f *= 0.5) {
    const double rho = f * r;
    bool inside = true;
    for (int j = 0; j < points && inside; ++j) {
      const double t = 2.0 * std::numbers::pi * (j + 0.5) / points;
      inside = roc.contains(1.0 - rho * cplx(std::cos(t), std::sin(t)));
    }
    if (inside) return rho;
  }
  return std::nullopt;
}

namespace detail {

inline double snapParameter(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double y = std::strtod(buf, nullptr);
  return std::abs(y - x) <= 1e-14 * std::max(1.0, std::abs(x)) ? y : x;
}

inline cplx snapParameter(cplx z) {
  const double scale = std::max(1.0, std::abs(z));
  const double re = std::abs(z.real()) <= 1e-12 * scale ? 0.0 : snapParameter(z.real());
  const double im = std::abs(z.imag()) <= 1e-12 * scale ? 0.0 : snapParameter(z.imag());
  return {re, im};
}

inline bool nearlyReal(cplx z) { return std::abs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z)); }

inline bool agrees(const TableEntry& entry, const Expr& f) {
  const auto rho = interiorCircleRadius(entry.roc, 0.25, 8);
  if (!rho) return false;
  for (int j = 0; j < 6; ++j) {
    const double t = 2.0 * std::numbers::pi * j / 6.0 + 0.3;
    const cplx s = 1.0 - *rho * cplx(std::cos(t), std::sin(t));
    const cplx want = evaluate(f, s);
    if (!std::isfinite(want.real()) || !std::isfinite(want.imag())) return false;
    const cplx got = entry.transformAt(s);
    if (!(std::abs(got - want) <= 1e-9 * (1.0 + std::abs(want)))) return false;
  }
  return true;
}

}  // namespace detail

/// Finds the table row and parameters whose F(s) equals the expression.
///
/// Parameters are fitted from values of the expression near s = 1 using the
/// exponents and function atoms present in the tree, then the candidate is
/// accepted only if it reproduces the expression at six points to 1e-9.
inline std::optional<TableEntry> tableLookup(const Expr& f) {
  const ExprFeatures feat = features(f);
  const cplx s0 = 1.0 - 0.1 * cplx(std::cos(0.7), std::sin(0.7));
  const cplx w0 = 1.0 - s0;
  const cplx F0 = evaluate(f, s0);
  const cplx F1 = evaluate(f, cplx{1.0});
  if (!std::isfinite(std::abs(F0))) return std::nullopt;

  auto attempt = [&](int row, TableParams p) -> std::optional<TableEntry> {
    p.gamma = detail::snapParameter(p.gamma);
    p.lambda = detail::snapParameter(p.lambda);
    p.alpha = detail::snapParameter(p.alpha);
    p.beta = detail::snapParameter(p.beta);
    try {
      TableEntry e = tableEntry(row, p);
      if (detail::agrees(e, f)) return e;
    } catch (const Error&) {
    }
    return std::nullopt;
  };

  std::vector<double> callExp, callTrig, callHyp;
  for (const auto& [name, x] : feat.calls) {
    if (name == "exp") callExp.push_back(x);
    else if (name == "sin" || name == "cos") callTrig.push_back(x);
    else callHyp.push_back(x);
  }
  std::vector<double> alphaCandidates;
  for (double x : feat.exponents) {
    alphaCandidates.push_back(x - 1.0);
    alphaCandidates.push_back(-x - 1.0);
  }

  for (double x : callExp) {
    TableParams p;
    p.lambda = -x;
    if (auto e = attempt(11, p)) return e;
    const cplx gfit = (1.0 - 1.0 / F0) / w0 / std::exp(x);
    if (detail::nearlyReal(gfit)) {
      p.gamma = gfit.real();
      if (auto e = attempt(12, p)) return e;
    }
  }
  for (double x : callTrig) {
    TableParams p;
    p.omega = x;
    for (int row : {13, 14})
      if (auto e = attempt(row, p)) return e;
  }
  for (double x : callHyp) {
    TableParams p;
    p.omega = x;
    for (int row : {15, 16})
      if (auto e = attempt(row, p)) return e;
  }

  for (int row : {1, 2, 3})
    if (auto e = attempt(row, {})) return e;
  for (double al : alphaCandidates) {
    TableParams p;
    p.alpha = al;
    if (auto e = attempt(5, p)) return e;
  }
  {
    const cplx gfit = (1.0 / F0 - 1.0) / (s0 - 1.0);
    if (detail::nearlyReal(gfit)) {
      TableParams p;
      p.gamma = gfit.real();
      if (auto e = attempt(4, p)) return e;
    }
  }
  for (double al : alphaCandidates) {
    if (!(al + 1.0 > 0.0)) continue;
    const cplx base = std::pow(F0, -1.0 / (al + 1.0));
    const cplx gfit = (base - 1.0) / (s0 - 1.0);
    if (!detail::nearlyReal(gfit)) continue;
    TableParams p;
    p.alpha = al;
    p.gamma = gfit.real();
    if (auto e = attempt(6, p)) return e;
  }
  {
    TableParams p;
    p.lambda = s0 - 1.0 / F0;
    if (auto e = attempt(7, p)) return e;
  }
  if (!feat.hasFractionalPower && feat.calls.empty()) {
    try {
      const RationalFunction rf = toRational(f);
      const auto& num = rf.numerator();
      if (num.degree() == 0 && std::abs(num[0] - 1.0) <= 1e-12 && rf.poles().size() == 1) {
        TableParams p;
        p.lambda = rf.poles()[0].value;
        p.order = rf.poles()[0].multiplicity;
        if (auto e = attempt(8, p)) return e;
      }
    } catch (const Error&) {
    }
  }
  for (double al : feat.exponents) {
    if (!(al > 0.0) || !std::isfinite(std::abs(F1))) continue;
    TableParams p;
    p.alpha = al;
    p.lambda = 1.0 - 1.0 / F1;
    const cplx d = std::log(F0 * (std::pow(s0, al) - p.lambda)) / std::log(s0);
    p.beta = al - d.real();
    if (auto e = attempt(9, p)) return e;
  }
  for (double x : feat.exponents) {
    for (double al : {x, x + 1.0}) {
      if (!(al > 0.0)) continue;
      const cplx root = std::sqrt(al * std::pow(s0, al - 1.0) * w0 / F0);
      for (double sign : {1.0, -1.0}) {
        TableParams p;
        p.alpha = al;
        p.lambda = std::pow(s0, al) - sign * root;
        if (auto e = attempt(10, p)) return e;
      }
    }
  }
  return std::nullopt;
}

struct RoundTripResult {
  int row = 0;
  double maxRelativeError = 0.0;
  int points = 0;
  bool passed = false;
};

/// Forward transform of the row's sequence against its F(s) at `points` points
/// on the circle of half the ROC disk radius (capped at 1).
inline RoundTripResult tableRoundTrip(const TableEntry& entry, int points = 8, double relTol = 1e-6,
                                      double sumTol = 1e-14) {
  RoundTripResult res{entry.row, 0.0, points, false};
  const auto rho = interiorCircleRadius(entry.roc, 0.5, 32);
  if (!rho) return res;
  const SequenceEvaluator seq{0.0, entry.sequenceAt};
  for (int j = 0; j < points; ++j) {
    const double t = 2.0 * std::numbers::pi * (j + 0.5) / points;
    const cplx s = 1.0 - *rho * cplx(std::cos(t), std::sin(t));
    const cplx want = entry.transformAt(s);
    const cplx got = forwardTransform(seq, s, sumTol).value;
    res.maxRelativeError = std::max(res.maxRelativeError, std::abs(got - want) / std::max(1e-300, std::abs(want)));
  }
  res.passed = res.maxRelativeError <= relTol;
  return res;
}

}  // namespace nabla
