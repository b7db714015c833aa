#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nabla {

using cplx = std::complex<double>;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function (gamma poles, |lambda| >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleEvaluationError : public Error {
 public:
  PoleEvaluationError(const std::string& what, cplx pole) : Error(what), pole_(pole) {}
  cplx pole() const noexcept { return pole_; }

 private:
  cplx pole_;
};

/// F(s) has a pole at s = 1, so no finite-valued causal sequence exists.
class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double lastTerm) : Error(what), lastTerm_(lastTerm) {}
  double lastTermMagnitude() const noexcept { return lastTerm_; }

 private:
  double lastTerm_;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

class RealnessError : public Error {
 public:
  RealnessError(const std::string& what, double imag) : Error(what), imag_(imag) {}
  double imaginaryPart() const noexcept { return imag_; }

 private:
  double imag_;
};

/// Input uses a construct outside the invertible classes (exp(s), log, fractional
/// powers of non-linear bases, undecomposed fractional expressions).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column, std::vector<std::string> expected)
      : Error(format(message, line, column, expected)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(const std::string& message, int line, int column,
                            const std::vector<std::string>& expected) {
    std::string out = "syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    if (!expected.empty()) {
      out += " (expected one of:";
      for (const auto& e : expected) out += " " + e;
      out += ")";
    }
    return out;
  }

  int line_;
  int column_;
  std::vector<std::string> expected_;
};

}  // namespace nabla
