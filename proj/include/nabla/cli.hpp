#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nabla/classify.hpp"
#include "nabla/error.hpp"
#include "nabla/expr.hpp"
#include "nabla/format.hpp"
#include "nabla/invert.hpp"
#include "nabla/roc.hpp"
#include "nabla/table.hpp"
#include "nabla/verify.hpp"

namespace nabla::cli {

using json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitMath = 1;
inline constexpr int kExitUsage = 2;

/// Effective settings after defaults, NABLA_TOL, the config file and flags.
struct Settings {
  std::string expr;
  double a = 0.0;
  std::optional<std::string> k;
  std::string roc;
  std::string format = "text";
  std::optional<double> tol;
  std::optional<double> rho;
  std::optional<int> nodes;
  std::string strategy = "auto";
  std::string s;
  std::string match;
};

// ---------------------------------------------------------------------------
// Flag value parsing
// ---------------------------------------------------------------------------

inline double parseReal(const std::string& text, const std::string& what) {
  cplx v;
  try {
    v = evaluateConstant(text);
  } catch (const ParseError& e) {
    throw InvalidArgumentError(what + ": " + e.what());
  }
  if (v.imag() != 0.0 || !std::isfinite(v.real())) throw InvalidArgumentError(what + " must be a finite real number");
  return v.real();
}

/// `start..end` or a single k; every k must lie in {a+1, a+2, ...}.
inline std::vector<double> parseKRange(const std::optional<std::string>& text, double a) {
  if (!text) {
    std::vector<double> ks;
    for (int n = 1; n <= 10; ++n) ks.push_back(a + n);
    return ks;
  }
  const auto dots = text->find("..");
  const double lo = parseReal(text->substr(0, dots), "--k start");
  const double hi = dots == std::string::npos ? lo : parseReal(text->substr(dots + 2), "--k end");
  const int n0 = offsetOf(lo, a);
  const int n1 = offsetOf(hi, a);
  if (n1 < n0) throw InvalidArgumentError("--k: end must not precede start");
  if (n1 - n0 >= 100000) throw InvalidArgumentError("--k: at most 100000 points");
  std::vector<double> ks;
  for (int n = n0; n <= n1; ++n) ks.push_back(a + n);
  return ks;
}

/// `disk1:R,origin:R,dominance:ALPHA:RE[:IM]`; each field is a constant expression.
inline Roc parseRoc(const std::string& text) {
  std::vector<RocConstraint> cs;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ',')) {
    std::vector<std::string> f;
    std::stringstream one(item);
    std::string part;
    while (std::getline(one, part, ':')) f.push_back(part);
    if (f.empty()) continue;
    auto val = [&](std::size_t i) {
      if (i >= f.size()) throw InvalidArgumentError("--roc: field '" + item + "' is missing a value");
      if (f[i] == "inf") return std::numeric_limits<double>::infinity();
      return parseReal(f[i], "--roc value '" + f[i] + "'");
    };
    if (f[0] == "disk1" && f.size() == 2) {
      cs.emplace_back(DiskAroundOne{val(1)});
    } else if (f[0] == "origin" && f.size() == 2) {
      cs.emplace_back(OriginExclusion{val(1)});
    } else if (f[0] == "dominance" && (f.size() == 3 || f.size() == 4)) {
      cs.emplace_back(FractionalDominance{val(1), cplx(val(2), f.size() == 4 ? val(3) : 0.0)});
    } else if (f[0] == "all" && f.size() == 1) {
    } else {
      throw InvalidArgumentError("--roc: cannot read '" + item +
                                 "' (expected disk1:R, origin:R, dominance:ALPHA:RE[:IM] or all)");
    }
  }
  return Roc(std::move(cs));
}

/// key=value lines; '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> readConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgumentError("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineNo = 0;
  auto trim = [](std::string x) {
    const auto b = x.find_first_not_of(" \t\r");
    const auto e = x.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineNo;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgumentError(path + ":" + std::to_string(lineNo) + ": expected key=value");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

inline void applySetting(Settings& st, const std::string& key, const std::string& value) {
  if (key == "expr") st.expr = value;
  else if (key == "a") st.a = parseReal(value, "a");
  else if (key == "k") st.k = value;
  else if (key == "roc") st.roc = value;
  else if (key == "format") st.format = value;
  else if (key == "tol") st.tol = parseReal(value, "tol");
  else if (key == "rho") st.rho = parseReal(value, "rho");
  else if (key == "nodes") st.nodes = static_cast<int>(parseReal(value, "nodes"));
  else if (key == "strategy") st.strategy = value;
  else if (key == "s") st.s = value;
  else throw InvalidArgumentError("unknown setting '" + key + "'");
}

inline void checkSettings(const Settings& st) {
  if (st.format != "text" && st.format != "csv" && st.format != "json")
    throw InvalidArgumentError("--format must be text, csv or json");
  const std::vector<std::string> strategies{"auto", "pfe", "inside", "outside", "fractional"};
  if (std::find(strategies.begin(), strategies.end(), st.strategy) == strategies.end())
    throw InvalidArgumentError("--strategy must be one of auto, pfe, inside, outside, fractional");
  if (st.tol && !(*st.tol > 0.0)) throw InvalidArgumentError("--tol must be positive");
  if (st.rho && !(*st.rho > 0.0)) throw InvalidArgumentError("--rho must be positive");
  if (st.nodes && *st.nodes < 4) throw InvalidArgumentError("--nodes must be at least 4");
}

// ---------------------------------------------------------------------------
// Solving
// ---------------------------------------------------------------------------

/// Inverse of a parsed F(s) by the selected strategy.
struct Solution {
  ExprPtr ast;
  Classification cls = Classification::Unsupported;
  std::string strategy;
  Roc roc;
  std::string rocText;
  bool rocInferred = true;
  double singularityDistance = std::numeric_limits<double>::infinity();
  std::optional<ClosedFormSequence> closedForm;
  std::optional<TableEntry> tableHit;
  TransformFn transform;
  std::function<std::vector<cplx>(int)> values;  ///< f(a+1), ..., f(a+count)
  std::function<double(int, cplx)> scale;        ///< rounding scale of f(a+n)
  std::string description;
};

inline Solution solveRational(Solution sol, const RationalFunction& rf, const std::string& strategy, double a,
                              const std::optional<Roc>& userRoc) {
  requireNoPoleAtOne(rf);
  sol.singularityDistance = rf.poleDistanceFromOne();
  sol.roc = userRoc ? *userRoc : inferRoc(rf);
  sol.rocText = sol.roc.toString();
  sol.rocInferred = !userRoc;
  requireInvertibleRoc(sol.roc, sol.singularityDistance);
  sol.transform = [rf](cplx s) { return rf(s); };
  if (strategy == "inside") {
    sol.strategy = "inside";
    sol.values = [rf](int count) { return invertInside(rf, count); };
    sol.scale = [](int, cplx v) { return std::max(1.0, std::abs(v)); };
    sol.description = "series coefficients of F(1-w) (residue at s = 1)";
    return sol;
  }
  sol.strategy = strategy == "outside" ? "outside" : "pfe";
  ClosedFormSequence cf = strategy == "outside" ? invertOutside(rf, a) : invertPartialFractions(rf, a);
  sol.closedForm = cf;
  sol.description = cf.toString();
  sol.values = [cf](int count) {
    std::vector<cplx> v;
    for (int n = 1; n <= count; ++n) v.push_back(cf.atOffset(n));
    return v;
  };
  sol.scale = [cf](int n, cplx) { return std::max(1.0, cf.magnitudeAtOffset(n)); };
  return sol;
}

inline Solution solve(const std::string& text, const std::string& strategy, double a, const std::string& rocFlag) {
  Solution sol;
  sol.ast = parseExpression(text);
  sol.cls = classify(sol.ast);
  std::optional<Roc> userRoc;
  if (!rocFlag.empty()) userRoc = parseRoc(rocFlag);

  const bool wantsRational = strategy == "pfe" || strategy == "inside" || strategy == "outside";
  if (sol.cls == Classification::Rational || (wantsRational && toPolyPair(*sol.ast))) {
    if (strategy == "fractional") throw UnsupportedError("strategy 'fractional' needs a sum of s^(alpha-beta)/(s^alpha-lambda) terms");
    return solveRational(sol, toRational(*sol.ast), strategy, a, userRoc);
  }
  if (sol.cls == Classification::FractionalSum) {
    if (wantsRational) throw UnsupportedError("strategy '" + strategy + "' needs a rational F(s); this F(s) has fractional powers of s");
    const FractionalSumForm form = *toFractionalSum(sol.ast);
    ClosedFormSequence cf = invertFractional(form, a);
    sol.strategy = "fractional";
    sol.roc = userRoc ? *userRoc : inferRoc(form);
    sol.rocText = sol.roc.toString();
    sol.rocInferred = !userRoc;
    sol.singularityDistance = 1.0;  // branch point of s^alpha at s = 0
    requireInvertibleRoc(sol.roc, sol.singularityDistance);
    sol.transform = [ast = sol.ast](cplx s) { return evaluate(*ast, s); };
    sol.closedForm = cf;
    sol.description = cf.toString();
    sol.values = [cf](int count) {
      std::vector<cplx> v;
      for (int n = 1; n <= count; ++n) v.push_back(cf.atOffset(n));
      return v;
    };
    sol.scale = [cf](int n, cplx) { return std::max(1.0, cf.magnitudeAtOffset(n)); };
    return sol;
  }
  if (sol.cls == Classification::TableCandidate) {
    if (auto hit = tableLookup(*sol.ast); hit && (strategy == "auto")) {
      sol.strategy = "table";
      sol.tableHit = hit;
      sol.roc = userRoc ? *userRoc : hit->roc;
      sol.rocText = userRoc ? userRoc->toString() : hit->rocText;
      sol.rocInferred = !userRoc;
      sol.singularityDistance = hit->roc.diskRadius().value_or(std::numeric_limits<double>::infinity());
      requireInvertibleRoc(sol.roc, sol.singularityDistance);
      sol.transform = hit->transformAt;
      sol.description = hit->sequence + "  (table row " + std::to_string(hit->row) + ")";
      sol.values = [f = hit->sequenceAt](int count) {
        std::vector<cplx> v;
        for (int n = 1; n <= count; ++n) v.push_back(f(n));
        return v;
      };
      sol.scale = [](int, cplx v) { return std::max(1.0, std::abs(v)); };
      return sol;
    }
    if (toPolyPair(*sol.ast) && strategy != "fractional") {
      Solution r = solveRational(sol, toRational(*sol.ast), strategy == "auto" ? "pfe" : strategy, a, userRoc);
      return r;
    }
  }
  throw UnsupportedError("F(s) = " + toString(*sol.ast) +
                         " is neither rational, a sum of s^(alpha-beta)/(s^alpha-lambda) terms, nor a table pair");
}

// ---------------------------------------------------------------------------
// Output helpers
// ---------------------------------------------------------------------------

inline json complexJson(cplx z) {
  if (z.imag() == 0.0) return z.real();
  return json{{"re", z.real()}, {"im", z.imag()}};
}

inline bool allReal(const std::vector<cplx>& vals, const std::vector<double>& scales) {
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (std::abs(vals[i].imag()) > 1e-9 * scales[i]) return false;
  return true;
}

inline json solutionJson(const Solution& sol) {
  json j;
  j["expr"] = toString(*sol.ast);
  j["class"] = toString(sol.cls);
  j["strategy"] = sol.strategy;
  j["roc"] = sol.rocText;
  j["rocInferred"] = sol.rocInferred;
  if (sol.closedForm) {
    json terms = json::array();
    for (const auto& t : sol.closedForm->terms()) terms.push_back(describeTerm(t));
    j["closedForm"] = {{"a", sol.closedForm->basePoint()}, {"terms", terms}};
  } else if (sol.tableHit) {
    j["closedForm"] = {{"row", sol.tableHit->row}, {"sequence", sol.tableHit->sequence}};
  }
  return j;
}

/// Contour radius inside both the ROC and the singularity-free disk.
inline double contourRadius(const Solution& sol, const std::optional<double>& requested) {
  const double limit = std::min(sol.roc.diskRadius().value_or(std::numeric_limits<double>::infinity()),
                                sol.singularityDistance);
  if (requested) {
    if (!(*requested < limit))
      throw InvalidArgumentError("--rho " + formatReal(*requested) + " must be below " + formatReal(limit) +
                                 " (ROC disk and nearest singularity)");
    return *requested;
  }
  const double rho = defaultContourRadius(limit);
  for (int j = 0; j < 32; ++j) {
    const double t = 2.0 * std::numbers::pi * (j + 0.5) / 32.0;
    if (!sol.roc.contains(1.0 - rho * cplx(std::cos(t), std::sin(t)))) {
      if (auto r = interiorCircleRadius(sol.roc, 0.5, 32)) return *r;
      throw DomainError("ROC " + sol.rocText + " contains no contour around s = 1");
    }
  }
  return rho;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

inline void requireExpr(const Settings& st) {
  if (st.expr.empty()) throw InvalidArgumentError("--expr is required");
}

inline void cmdInvert(const Settings& st, std::ostream& out) {
  requireExpr(st);
  const std::vector<double> ks = parseKRange(st.k, st.a);
  const Solution sol = solve(st.expr, st.strategy, st.a, st.roc);
  const int first = offsetOf(ks.front(), st.a), last = offsetOf(ks.back(), st.a);
  const std::vector<cplx> all = sol.values(last);
  std::vector<cplx> vals(all.begin() + (first - 1), all.end());
  std::vector<double> scales;
  for (std::size_t i = 0; i < vals.size(); ++i) scales.push_back(sol.scale(first + static_cast<int>(i), vals[i]));
  const bool real = allReal(vals, scales);

  if (st.format == "csv") {
    out << (real ? "k,f(k)\n" : "k,re,im\n");
    for (std::size_t i = 0; i < ks.size(); ++i) {
      out << formatReal(ks[i]) << "," << formatReal17(vals[i].real());
      if (!real) out << "," << formatReal17(vals[i].imag());
      out << "\n";
    }
    return;
  }
  if (st.format == "json") {
    json j = solutionJson(sol);
    json samples = json::array();
    for (std::size_t i = 0; i < ks.size(); ++i)
      samples.push_back({{"k", ks[i]}, {"value", real ? json(vals[i].real()) : complexJson(vals[i])}});
    j["samples"] = samples;
    const double rho = contourRadius(sol, st.rho);
    const int nodes = st.nodes.value_or(std::max(256, 8 * last));
    double worst = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const int n = first + static_cast<int>(i);
      worst = std::max(worst, std::abs(vals[i] - numericInverse(sol.transform, n, rho, nodes)) / scales[i]);
    }
    j["verification"] = {{"contourRadius", rho}, {"nodes", nodes}, {"maxScaledResidual", worst},
                         {"initialValueResidual", std::abs(all.front() - initialValue(sol.transform))}};
    out << j.dump(2) << "\n";
    return;
  }
  out << "F(s) = " << toString(*sol.ast) << "\n";
  out << "class: " << toString(sol.cls) << "\n";
  out << "strategy: " << sol.strategy << "\n";
  out << "ROC: " << sol.rocText << (sol.rocInferred ? " (inferred)" : "") << "\n";
  out << "f(k) = " << sol.description << "\n";
  for (std::size_t i = 0; i < ks.size(); ++i)
    out << "f(" << formatReal(ks[i]) << ") = " << (real ? formatReal(vals[i].real()) : formatComplex(vals[i])) << "\n";
}

inline int cmdVerify(const Settings& st, std::ostream& out) {
  requireExpr(st);
  const std::vector<double> ks = parseKRange(st.k, st.a);
  const Solution sol = solve(st.expr, st.strategy, st.a, st.roc);
  const double tol = st.tol.value_or(1e-9);
  const int first = offsetOf(ks.front(), st.a), last = offsetOf(ks.back(), st.a);
  const std::vector<cplx> all = sol.values(last);
  const double rho = contourRadius(sol, st.rho);
  const int nodes = st.nodes.value_or(std::max(256, 8 * last));
  double worstAbs = 0.0, worstScaled = 0.0;
  for (int n = first; n <= last; ++n) {
    const cplx v = all[static_cast<std::size_t>(n - 1)];
    const double d = std::abs(v - numericInverse(sol.transform, n, rho, nodes));
    worstAbs = std::max(worstAbs, d);
    worstScaled = std::max(worstScaled, d / sol.scale(n, v));
  }
  const cplx iv = initialValue(sol.transform);
  const double ivResidual = std::abs(all.front() - iv) / std::max(1.0, std::abs(iv));
  const bool contourOk = worstScaled <= tol;
  const bool ivOk = ivResidual <= tol;
  const bool ok = contourOk && ivOk;

  if (st.format == "json") {
    json j = solutionJson(sol);
    j["verification"] = {{"kStart", ks.front()},
                         {"kEnd", ks.back()},
                         {"contourRadius", rho},
                         {"nodes", nodes},
                         {"tolerance", tol},
                         {"maxAbsResidual", worstAbs},
                         {"maxScaledResidual", worstScaled},
                         {"initialValue", complexJson(iv)},
                         {"initialValueResidual", ivResidual},
                         {"passed", ok}};
    out << j.dump(2) << "\n";
  } else if (st.format == "csv") {
    out << "check,residual,tolerance,passed\n";
    out << "contour," << formatReal17(worstScaled) << "," << formatReal17(tol) << "," << (contourOk ? 1 : 0) << "\n";
    out << "initial_value," << formatReal17(ivResidual) << "," << formatReal17(tol) << "," << (ivOk ? 1 : 0) << "\n";
  } else {
    out << "F(s) = " << toString(*sol.ast) << "\n";
    out << "strategy: " << sol.strategy << "\n";
    out << "ROC: " << sol.rocText << (sol.rocInferred ? " (inferred)" : "") << "\n";
    out << "contour: rho = " << formatReal(rho) << ", nodes = " << nodes << "\n";
    out << "max |f - contour| over k = " << formatReal(ks.front()) << ".." << formatReal(ks.back()) << ": "
        << formatReal(worstAbs) << " (scaled " << formatReal(worstScaled) << ", tolerance " << formatReal(tol)
        << ") " << (contourOk ? "ok" : "FAILED") << "\n";
    out << "initial value: f(a+1) = " << formatComplex(all.front()) << ", F(1) = " << formatComplex(iv)
        << ", residual " << formatReal(ivResidual) << " " << (ivOk ? "ok" : "FAILED") << "\n";
    out << "result: " << (ok ? "pass" : "fail") << "\n";
  }
  return ok ? kExitOk : kExitMath;
}

inline void cmdForward(const Settings& st, std::ostream& out) {
  requireExpr(st);
  const Solution sol = solve(st.expr, st.strategy, st.a, st.roc);
  cplx s;
  if (!st.s.empty()) {
    s = evaluateConstant(st.s);
  } else {
    const double r = std::min({sol.roc.diskRadius().value_or(2.0), sol.singularityDistance, 2.0});
    s = 1.0 - 0.5 * r;
  }
  if (!sol.roc.contains(s)) throw DomainError("s = " + formatComplex(s) + " is outside the ROC " + sol.rocText);
  const double tol = st.tol.value_or(1e-12);
  std::function<cplx(int)> at;
  if (sol.closedForm) {
    at = [cf = *sol.closedForm](int n) { return cf.atOffset(n); };
  } else if (sol.tableHit) {
    at = sol.tableHit->sequenceAt;
  } else {
    // Inside strategy: values come in batches from the series expansion.
    auto cache = std::make_shared<std::vector<cplx>>();
    at = [cache, values = sol.values](int n) {
      if (static_cast<std::size_t>(n) > cache->size()) *cache = values(std::max(2 * n, 64));
      return (*cache)[static_cast<std::size_t>(n - 1)];
    };
  }
  const ForwardResult fr = forwardTransform({st.a, at}, s, tol);
  const cplx direct = sol.transform(s);
  const double diff = std::abs(fr.value - direct);
  if (st.format == "json") {
    json j = solutionJson(sol);
    j["s"] = complexJson(s);
    j["forward"] = complexJson(fr.value);
    j["direct"] = complexJson(direct);
    j["difference"] = diff;
    j["terms"] = fr.terms;
    j["truncated"] = fr.truncated;
    out << j.dump(2) << "\n";
  } else if (st.format == "csv") {
    out << "s,forward,direct,difference,terms\n";
    out << formatComplex(s) << "," << formatComplex(fr.value) << "," << formatComplex(direct) << ","
        << formatReal17(diff) << "," << fr.terms << "\n";
  } else {
    out << "F(s) = " << toString(*sol.ast) << "\n";
    out << "s = " << formatComplex(s) << "\n";
    out << "sum_{k} (1-s)^(k-a-1) f(k) = " << formatComplex(fr.value) << " (" << fr.terms << " terms"
        << (fr.truncated ? ", truncated" : "") << ")\n";
    out << "F(s) = " << formatComplex(direct) << "\n";
    out << "difference = " << formatReal(diff) << "\n";
  }
}

inline int cmdTable(const Settings& st, std::ostream& out) {
  std::vector<TableEntry> rows;
  if (!st.match.empty()) {
    auto hit = tableLookup(*parseExpression(st.match));
    if (!hit) throw DomainError("no table row matches F(s) = " + toString(*parseExpression(st.match)));
    rows.push_back(*hit);
  } else {
    rows = defaultTableEntries();
  }
  if (st.format == "json") {
    json arr = json::array();
    for (const auto& e : rows)
      arr.push_back({{"row", e.row}, {"sequence", e.sequence}, {"transform", e.transform}, {"roc", e.rocText}});
    out << (st.match.empty() ? arr : arr[0]).dump(2) << "\n";
  } else if (st.format == "csv") {
    out << "row,sequence,transform,roc\n";
    for (const auto& e : rows)
      out << e.row << ",\"" << e.sequence << "\",\"" << e.transform << "\",\"" << e.rocText << "\"\n";
  } else {
    for (const auto& e : rows) {
      out << "row " << e.row << "\n";
      out << "  sequence: " << e.sequence << "\n";
      out << "  F(s): " << e.transform << "\n";
      out << "  ROC: " << e.rocText << "\n";
    }
  }
  return kExitOk;
}

inline int cmdRoundTrip(const Settings& st, std::ostream& out) {
  const double tol = st.tol.value_or(1e-6);
  bool ok = true;
  json arr = json::array();
  if (st.format == "csv") out << "row,lambda,max_relative_error,passed\n";
  for (int row = 1; row <= kTableRows; ++row) {
    const bool usesLambda = (row >= 7 && row <= 12);
    for (cplx lam : usesLambda ? std::vector<cplx>{0.3, -0.5} : std::vector<cplx>{0.3}) {
      TableParams p;
      p.lambda = lam;
      const TableEntry e = tableEntry(row, p);
      const RoundTripResult r = tableRoundTrip(e, 8, tol);
      ok = ok && r.passed;
      const std::string lamText = usesLambda ? formatReal(lam.real()) : "-";
      if (st.format == "json") {
        arr.push_back({{"row", row}, {"transform", e.transform}, {"maxRelativeError", r.maxRelativeError},
                       {"passed", r.passed}});
      } else if (st.format == "csv") {
        out << row << "," << lamText << "," << formatReal17(r.maxRelativeError) << "," << (r.passed ? 1 : 0) << "\n";
      } else {
        out << (r.passed ? "ok   " : "FAIL ") << "row " << row << (usesLambda ? " lambda=" + lamText : "")
            << "  F(s) = " << e.transform << "  max rel. error " << formatReal(r.maxRelativeError) << "\n";
      }
    }
  }
  if (st.format == "json") out << json{{"passed", ok}, {"rows", arr}}.dump(2) << "\n";
  else if (st.format == "text") out << (ok ? "all rows pass" : "some rows FAILED") << "\n";
  return ok ? kExitOk : kExitMath;
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Runs one command line (args exclude the program name). Output is written
/// only when the command succeeds; diagnostics go to err.
inline int runCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nabla Laplace transform inversion and verification"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  struct Raw {
    std::string expr, a, k, roc, format, tol, rho, nodes, strategy, s, config, match;
  } raw;
  std::vector<std::pair<std::string, CLI::Option*>> given;

  auto common = [&](CLI::App* sub, bool needsExpr) {
    if (needsExpr) {
      given.emplace_back("expr", sub->add_option("--expr", raw.expr, "F(s), e.g. \"9/((s+1)^2*(s-2))\""));
      given.emplace_back("a", sub->add_option("--a", raw.a, "base point a (default 0)"));
      given.emplace_back("k", sub->add_option("--k", raw.k, "absolute k range start..end (default a+1..a+10)"));
      given.emplace_back("roc", sub->add_option("--roc", raw.roc, "ROC, e.g. disk1:1,origin:0.179,dominance:0.5:0.2"));
      given.emplace_back("rho", sub->add_option("--rho", raw.rho, "contour radius around s = 1"));
      given.emplace_back("nodes", sub->add_option("--nodes", raw.nodes, "quadrature nodes"));
      given.emplace_back("strategy", sub->add_option("--strategy", raw.strategy, "pfe|inside|outside|fractional|auto"));
    }
    given.emplace_back("format", sub->add_option("--format", raw.format, "text|csv|json"));
    given.emplace_back("tol", sub->add_option("--tol", raw.tol, "tolerance"));
    sub->add_option("--config", raw.config, "key=value settings file");
  };

  auto* inv = app.add_subcommand("invert", "f(k) from F(s)");
  common(inv, true);
  auto* fwd = app.add_subcommand("forward", "truncated forward transform of the inverse, compared with F(s)");
  common(fwd, true);
  given.emplace_back("s", fwd->add_option("--s", raw.s, "evaluation point (default inside the ROC)"));
  auto* ver = app.add_subcommand("verify", "compare the inverse with the contour integral and the initial value");
  common(ver, true);
  auto* tab = app.add_subcommand("table", "list the pair table or match F(s) against it");
  common(tab, false);
  tab->add_option("--match", raw.match, "F(s) to look up");
  auto* rt = app.add_subcommand("roundtrip", "forward transform of every table row against its F(s)");
  common(rt, false);

  std::vector<const char*> argv{"nabla"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  std::ostringstream buffer;
  try {
    Settings st;
    if (const char* env = std::getenv("NABLA_TOL"); env && *env) st.tol = parseReal(env, "NABLA_TOL");
    if (!raw.config.empty())
      for (const auto& [key, value] : readConfig(raw.config)) applySetting(st, key, value);
    for (const auto& [key, opt] : given) {
      if (opt->count() == 0) continue;
      const std::string& v = key == "expr" ? raw.expr : key == "a" ? raw.a : key == "k" ? raw.k
                           : key == "roc" ? raw.roc : key == "format" ? raw.format : key == "tol" ? raw.tol
                           : key == "rho" ? raw.rho : key == "nodes" ? raw.nodes : key == "strategy" ? raw.strategy
                           : raw.s;
      applySetting(st, key, v);
    }
    st.match = raw.match;
    checkSettings(st);

    int code = kExitOk;
    if (inv->parsed()) cmdInvert(st, buffer);
    else if (fwd->parsed()) cmdForward(st, buffer);
    else if (ver->parsed()) code = cmdVerify(st, buffer);
    else if (tab->parsed()) code = cmdTable(st, buffer);
    else code = cmdRoundTrip(st, buffer);
    out << buffer.str();
    return code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgumentError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotInvertibleError& e) {
    err << "not invertible: " << e.what() << "\n";
    return kExitMath;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitMath;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitMath;
  }
}

}  // namespace nabla::cli
