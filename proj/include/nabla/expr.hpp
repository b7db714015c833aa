#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/format.hpp"
#include "nabla/invert.hpp"
#include "nabla/polynomial.hpp"
#include "nabla/rational.hpp"

namespace nabla {

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

struct SourcePos {
  int line = 1;
  int column = 1;
};

enum class NodeKind { Number, Constant, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Node of an F(s) expression. Number holds a real or purely imaginary literal;
/// Constant is `pi` or `e`; Call is one of sin, cos, sinh, cosh, exp applied to
/// a constant. Negate and Call keep their operand in `lhs`.
struct Expr {
  NodeKind kind = NodeKind::Number;
  cplx value{0.0};
  std::string name;
  ExprPtr lhs, rhs;
  SourcePos pos;
};

inline bool dependsOnS(const Expr& e) {
  switch (e.kind) {
    case NodeKind::Variable: return true;
    case NodeKind::Number:
    case NodeKind::Constant: return false;
    default: return (e.lhs && dependsOnS(*e.lhs)) || (e.rhs && dependsOnS(*e.rhs));
  }
}

namespace detail {

inline bool isIntegral(double x) { return std::isfinite(x) && x == std::floor(x) && std::abs(x) <= 1e6; }

inline cplx applyCall(const std::string& name, cplx x) {
  if (name == "sin") return std::sin(x);
  if (name == "cos") return std::cos(x);
  if (name == "sinh") return std::sinh(x);
  if (name == "cosh") return std::cosh(x);
  return std::exp(x);
}

inline cplx powValue(cplx base, cplx exponent) {
  if (exponent.imag() == 0.0 && isIntegral(exponent.real())) {
    long e = static_cast<long>(exponent.real());
    return ipow(base, e);
  }
  return std::pow(base, exponent);
}

}  // namespace detail

/// Principal-branch value of the expression at s.
inline cplx evaluate(const Expr& e, cplx s) {
  switch (e.kind) {
    case NodeKind::Number:
    case NodeKind::Constant: return e.value;
    case NodeKind::Variable: return s;
    case NodeKind::Negate: return -evaluate(*e.lhs, s);
    case NodeKind::Add: return evaluate(*e.lhs, s) + evaluate(*e.rhs, s);
    case NodeKind::Sub: return evaluate(*e.lhs, s) - evaluate(*e.rhs, s);
    case NodeKind::Mul: return evaluate(*e.lhs, s) * evaluate(*e.rhs, s);
    case NodeKind::Div: return evaluate(*e.lhs, s) / evaluate(*e.rhs, s);
    case NodeKind::Pow: return detail::powValue(evaluate(*e.lhs, s), evaluate(*e.rhs, s));
    case NodeKind::Call: return detail::applyCall(e.name, evaluate(*e.lhs, s));
  }
  return {};
}

inline cplx evaluateConstantNode(const Expr& e) { return evaluate(e, cplx{0.0}); }

// ---------------------------------------------------------------------------
// Rational view: numerator/denominator polynomial pair, no root finding
// ---------------------------------------------------------------------------

struct PolyPair {
  Polynomial num;
  Polynomial den;
};

/// Numerator/denominator polynomials of e, or nullopt if e has a non-integer
/// power of an s-dependent base.
inline std::optional<PolyPair> toPolyPair(const Expr& e) {
  if (!dependsOnS(e)) return PolyPair{Polynomial::constant(evaluateConstantNode(e)), Polynomial::constant(1.0)};
  switch (e.kind) {
    case NodeKind::Variable: return PolyPair{Polynomial::identity(), Polynomial::constant(1.0)};
    case NodeKind::Negate: {
      auto x = toPolyPair(*e.lhs);
      if (!x) return std::nullopt;
      return PolyPair{-x->num, x->den};
    }
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      auto x = toPolyPair(*e.lhs);
      auto y = toPolyPair(*e.rhs);
      if (!x || !y) return std::nullopt;
      if (e.kind == NodeKind::Add) return PolyPair{x->num * y->den + y->num * x->den, x->den * y->den};
      if (e.kind == NodeKind::Sub) return PolyPair{x->num * y->den - y->num * x->den, x->den * y->den};
      if (e.kind == NodeKind::Mul) return PolyPair{x->num * y->num, x->den * y->den};
      if (y->num.isZero()) throw DomainError("division by an expression that is identically zero");
      return PolyPair{x->num * y->den, x->den * y->num};
    }
    case NodeKind::Pow: {
      const cplx ex = evaluateConstantNode(*e.rhs);
      if (ex.imag() != 0.0 || !detail::isIntegral(ex.real()) || std::abs(ex.real()) > 256) return std::nullopt;
      auto x = toPolyPair(*e.lhs);
      if (!x) return std::nullopt;
      const long n = static_cast<long>(ex.real());
      const auto un = static_cast<unsigned>(std::abs(n));
      if (n >= 0) return PolyPair{x->num.pow(un), x->den.pow(un)};
      if (x->num.isZero()) throw DomainError("negative power of an expression that is identically zero");
      return PolyPair{x->den.pow(un), x->num.pow(un)};
    }
    default: return std::nullopt;
  }
}

/// F(s) as a normalized rational function. Coefficient noise from
/// cancellation (below 1e-13 of the largest coefficient) is trimmed.
inline RationalFunction toRational(const Expr& e, const RootOptions& opt = {}) {
  auto pp = toPolyPair(e);
  if (!pp) throw UnsupportedError("expression is not rational in s (it contains a non-integer power of s)");
  return RationalFunction(pp->num.trimmed(1e-13), pp->den.trimmed(1e-13), opt);
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace detail {

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  TokKind kind;
  std::string text;
  double number = 0.0;
  bool imaginary = false;
  SourcePos pos;
};

inline const char* tokName(TokKind k) {
  switch (k) {
    case TokKind::Number: return "number";
    case TokKind::Ident: return "identifier";
    case TokKind::Plus: return "'+'";
    case TokKind::Minus: return "'-'";
    case TokKind::Star: return "'*'";
    case TokKind::Slash: return "'/'";
    case TokKind::Caret: return "'^'";
    case TokKind::LParen: return "'('";
    case TokKind::RParen: return "')'";
    case TokKind::End: return "end of input";
  }
  return "?";
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const SourcePos pos{line, col};
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      Token t{TokKind::Number, std::string(src.substr(i, j - i)), 0.0, false, pos};
      std::from_chars(src.data() + i, src.data() + j, t.number);
      if (j < src.size() && (src[j] == 'j' || src[j] == 'i') &&
          !(j + 1 < src.size() && (std::isalnum(static_cast<unsigned char>(src[j + 1])) || src[j + 1] == '_'))) {
        t.imaginary = true;
        t.text += src[j];
        ++j;
      }
      out.push_back(std::move(t));
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({TokKind::Ident, std::string(src.substr(i, j - i)), 0.0, false, pos});
      advance(j - i);
      continue;
    }
    TokKind k;
    switch (c) {
      case '+': k = TokKind::Plus; break;
      case '-': k = TokKind::Minus; break;
      case '*': k = TokKind::Star; break;
      case '/': k = TokKind::Slash; break;
      case '^': k = TokKind::Caret; break;
      case '(': k = TokKind::LParen; break;
      case ')': k = TokKind::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", pos.line, pos.column, {});
    }
    out.push_back({k, std::string(1, c), 0.0, false, pos});
    advance(1);
  }
  out.push_back({TokKind::End, "", 0.0, false, {line, col}});
  return out;
}

inline bool isAllowedCall(std::string_view n) {
  return n == "sin" || n == "cos" || n == "sinh" || n == "cosh" || n == "exp";
}

inline const char* kIrrationalNote =
    "irrational transforms such as 1/(e^s-l), 1/log(s^2+l), gamma(s)/gamma(s+l), 1/tan(1/s), 1/tanh(s) and "
    "1/(sinh(sqrt(s))*sqrt(s)) have infinitely many or non-isolated singularities and cannot be inverted by "
    "residues or partial fractions";

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  ExprPtr parse() {
    if (peek().kind == TokKind::End) throw ParseError("empty expression", 1, 1, {"number", "s", "'('", "'-'"});
    ExprPtr e = expression();
    if (peek().kind != TokKind::End) fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    const std::string got = t.kind == TokKind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("unexpected " + got, t.pos.line, t.pos.column, std::move(expected));
  }

  static std::shared_ptr<Expr> node(NodeKind k, SourcePos p, ExprPtr l = nullptr, ExprPtr r = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->pos = p;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }

  ExprPtr expression() {
    ExprPtr lhs = term();
    while (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus) {
      const Token& op = next();
      lhs = node(op.kind == TokKind::Plus ? NodeKind::Add : NodeKind::Sub, op.pos, lhs, term());
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (peek().kind == TokKind::Star || peek().kind == TokKind::Slash) {
      const Token& op = next();
      lhs = node(op.kind == TokKind::Star ? NodeKind::Mul : NodeKind::Div, op.pos, lhs, unary());
    }
    // Adjacent operand without an operator: implicit multiplication is not allowed.
    const TokKind k = peek().kind;
    if (k == TokKind::Number || k == TokKind::Ident || k == TokKind::LParen)
      fail({"'+'", "'-'", "'*'", "'/'", "'^'", "')'", "end of input"});
    return lhs;
  }

  ExprPtr unary() {
    if (peek().kind == TokKind::Minus) {
      const Token& op = next();
      return node(NodeKind::Negate, op.pos, unary());
    }
    if (peek().kind == TokKind::Plus) {
      next();
      return unary();
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (peek().kind != TokKind::Caret) return base;
    const Token& op = next();
    ExprPtr exponent = unary();
    checkPower(*base, *exponent, op.pos);
    return node(NodeKind::Pow, op.pos, base, exponent);
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::Number: {
        next();
        auto e = node(NodeKind::Number, t.pos);
        e->value = t.imaginary ? cplx(0.0, t.number) : cplx(t.number, 0.0);
        return e;
      }
      case TokKind::LParen: {
        next();
        ExprPtr e = expression();
        if (peek().kind != TokKind::RParen) fail({"')'", "'+'", "'-'", "'*'", "'/'", "'^'"});
        next();
        return e;
      }
      case TokKind::Ident: return identifier();
      default: fail({"number", "s", "pi", "e", "j", "'('", "'-'", "function name"});
    }
  }

  ExprPtr identifier() {
    const Token t = next();
    if (peek().kind == TokKind::LParen) {
      if (!isAllowedCall(t.text))
        throw UnsupportedError("unsupported function '" + t.text + "' at " + std::to_string(t.pos.line) + ":" +
                               std::to_string(t.pos.column) + "; " + kIrrationalNote);
      next();
      ExprPtr arg = expression();
      if (peek().kind != TokKind::RParen) fail({"')'"});
      next();
      if (dependsOnS(*arg))
        throw UnsupportedError(t.text + "(...) of an expression in s at " + std::to_string(t.pos.line) + ":" +
                               std::to_string(t.pos.column) +
                               " is not supported (function atoms may only take constant arguments); " +
                               kIrrationalNote);
      auto e = node(NodeKind::Call, t.pos, arg);
      e->name = t.text;
      return e;
    }
    if (t.text == "s") return node(NodeKind::Variable, t.pos);
    if (t.text == "pi" || t.text == "e") {
      auto e = node(NodeKind::Constant, t.pos);
      e->name = t.text;
      e->value = t.text == "pi" ? std::numbers::pi : std::numbers::e;
      return e;
    }
    if (t.text == "j") {
      auto e = node(NodeKind::Number, t.pos);
      e->value = cplx(0.0, 1.0);
      return e;
    }
    throw ParseError("unknown identifier '" + t.text + "'", t.pos.line, t.pos.column, {"s", "pi", "e", "j"});
  }

  static void checkPower(const Expr& base, const Expr& exponent, SourcePos at) {
    const std::string where = " at " + std::to_string(at.line) + ":" + std::to_string(at.column);
    if (dependsOnS(exponent))
      throw UnsupportedError("exponent depending on s" + where + " (e.g. e^s) is not supported; " + kIrrationalNote);
    if (!dependsOnS(base)) return;
    const cplx ex = evaluateConstantNode(exponent);
    if (ex.imag() != 0.0) throw UnsupportedError("complex exponent of s" + where + " is not supported");
    if (isIntegral(ex.real())) return;
    if (base.kind == NodeKind::Variable) return;
    // Linear bases (c0 + c1 s) are the only other fractional-power bases; they
    // cover the (1 - g + g s)^(alpha+1) pair.
    auto pp = toPolyPair(base);
    if (pp && pp->den.degree() == 0 && pp->num.degree() == 1) return;
    throw UnsupportedError("fractional power of a non-s base" + where +
                           " is not supported: fractional powers must apply to s (or a linear c0 + c1*s)");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an F(s) expression. Precedence: ^ (right-assoc) > unary - > * / > + -.
inline ExprPtr parseExpression(std::string_view text) { return detail::Parser(text).parse(); }

/// Parses and evaluates an expression that must not depend on s.
inline cplx evaluateConstant(std::string_view text) {
  ExprPtr e = parseExpression(text);
  if (dependsOnS(*e)) throw InvalidArgumentError("expected a constant, got an expression in s: " + std::string(text));
  return evaluateConstantNode(*e);
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace detail {

inline int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Negate: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
  }
}

}  // namespace detail

/// Canonical text; parsing it back yields the same tree.
inline std::string toString(const Expr& e) {
  using detail::precedence;
  auto wrap = [](const Expr& c, bool paren) { return paren ? "(" + toString(c) + ")" : toString(c); };
  switch (e.kind) {
    case NodeKind::Number:
      return e.value.imag() != 0.0 ? formatReal(e.value.imag()) + "j" : formatReal(e.value.real());
    case NodeKind::Constant: return e.name;
    case NodeKind::Variable: return "s";
    case NodeKind::Call: return e.name + "(" + toString(*e.lhs) + ")";
    case NodeKind::Negate: return "-" + wrap(*e.lhs, precedence(e.lhs->kind) < 3);
    case NodeKind::Pow:
      return wrap(*e.lhs, precedence(e.lhs->kind) <= 4) + "^" + wrap(*e.rhs, precedence(e.rhs->kind) < 3);
    default: {
      const int p = precedence(e.kind);
      const char* op = e.kind == NodeKind::Add ? " + " : e.kind == NodeKind::Sub ? " - " : e.kind == NodeKind::Mul ? "*" : "/";
      return wrap(*e.lhs, precedence(e.lhs->kind) < p) + op + wrap(*e.rhs, precedence(e.rhs->kind) <= p);
    }
  }
}

// ---------------------------------------------------------------------------
// Structural features
// ---------------------------------------------------------------------------

struct ExprFeatures {
  std::vector<double> exponents;  ///< real exponents applied to s-dependent bases
  std::vector<std::pair<std::string, double>> calls;
  bool hasFractionalPower = false;
};

inline void collectFeatures(const Expr& e, ExprFeatures& out) {
  if (e.kind == NodeKind::Pow && dependsOnS(*e.lhs)) {
    const double x = evaluateConstantNode(*e.rhs).real();
    out.exponents.push_back(x);
    if (!detail::isIntegral(x)) out.hasFractionalPower = true;
  }
  if (e.kind == NodeKind::Call) out.calls.emplace_back(e.name, evaluateConstantNode(*e.lhs).real());
  if (e.lhs) collectFeatures(*e.lhs, out);
  if (e.rhs) collectFeatures(*e.rhs, out);
}

inline ExprFeatures features(const Expr& e) {
  ExprFeatures f;
  collectFeatures(e, f);
  return f;
}

// ---------------------------------------------------------------------------
// Fractional sum form recognition
// ---------------------------------------------------------------------------

namespace detail {

inline void signedTerms(const ExprPtr& e, double sign, std::vector<std::pair<double, ExprPtr>>& out) {
  switch (e->kind) {
    case NodeKind::Add:
      signedTerms(e->lhs, sign, out);
      signedTerms(e->rhs, sign, out);
      return;
    case NodeKind::Sub:
      signedTerms(e->lhs, sign, out);
      signedTerms(e->rhs, -sign, out);
      return;
    case NodeKind::Negate: signedTerms(e->lhs, -sign, out); return;
    default: out.emplace_back(sign, e);
  }
}

// Flattens products/quotients: factors with inverted=true sit in a denominator.
inline void factors(const ExprPtr& e, bool inverted, cplx& coef, std::vector<std::pair<bool, ExprPtr>>& out) {
  switch (e->kind) {
    case NodeKind::Mul:
      factors(e->lhs, inverted, coef, out);
      factors(e->rhs, inverted, coef, out);
      return;
    case NodeKind::Div:
      factors(e->lhs, inverted, coef, out);
      factors(e->rhs, !inverted, coef, out);
      return;
    case NodeKind::Negate:
      coef = -coef;
      factors(e->lhs, inverted, coef, out);
      return;
    default:
      if (!dependsOnS(*e)) {
        const cplx v = evaluateConstantNode(*e);
        coef = inverted ? coef / v : coef * v;
      } else {
        out.emplace_back(inverted, e);
      }
  }
}

/// Power p if e is s or s^p.
inline std::optional<double> sPower(const Expr& e) {
  if (e.kind == NodeKind::Variable) return 1.0;
  if (e.kind == NodeKind::Pow && e.lhs->kind == NodeKind::Variable) return evaluateConstantNode(*e.rhs).real();
  return std::nullopt;
}

struct Binomial {
  cplx c1;  // coefficient of s^alpha
  double alpha;
  cplx c0;
};

/// c1 * s^alpha + c0 with alpha > 0.
inline std::optional<Binomial> binomial(const ExprPtr& e) {
  std::vector<std::pair<double, ExprPtr>> terms;
  signedTerms(e, 1.0, terms);
  std::optional<Binomial> b;
  cplx c0{0.0};
  for (const auto& [sign, t] : terms) {
    if (!dependsOnS(*t)) {
      c0 += sign * evaluateConstantNode(*t);
      continue;
    }
    if (b) return std::nullopt;
    cplx coef{sign};
    std::vector<std::pair<bool, ExprPtr>> fs;
    factors(t, false, coef, fs);
    if (fs.size() != 1 || fs[0].first) return std::nullopt;
    auto p = sPower(*fs[0].second);
    if (!p || !(*p > 0.0)) return std::nullopt;
    b = Binomial{coef, *p, 0.0};
  }
  if (!b) return std::nullopt;
  b->c0 = c0;
  return b;
}

}  // namespace detail

/// Recognizes sum_i r_i s^{alpha_i - beta_i} / (s^{alpha_i} - lambda_i). Each
/// term may carry constant factors, powers of s, and exactly one binomial
/// c1 s^alpha + c0 in its denominator.
inline std::optional<FractionalSumForm> toFractionalSum(const ExprPtr& e) {
  std::vector<std::pair<double, ExprPtr>> terms;
  detail::signedTerms(e, 1.0, terms);
  FractionalSumForm form;
  for (const auto& [sign, t] : terms) {
    cplx coef{sign};
    std::vector<std::pair<bool, ExprPtr>> fs;
    detail::factors(t, false, coef, fs);
    double power = 0.0;
    std::optional<detail::Binomial> bin;
    for (const auto& [inverted, f] : fs) {
      if (auto p = detail::sPower(*f)) {
        power += inverted ? -*p : *p;
        continue;
      }
      if (!inverted || bin) return std::nullopt;
      bin = detail::binomial(f);
      if (!bin) return std::nullopt;
    }
    if (!bin) return std::nullopt;
    form.atoms.push_back({coef / bin->c1, bin->alpha, bin->alpha - power, -bin->c0 / bin->c1});
  }
  return form;
}

}  // namespace nabla
