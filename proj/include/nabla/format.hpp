#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

namespace nabla {

/// Shortest decimal string that reads back to the same double.
inline std::string formatReal(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  if (x == 0.0) x = 0.0;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// Fixed 17 significant digits (CSV output).
inline std::string formatReal17(double x) {
  char buf[40];
  if (x == 0.0) x = 0.0;
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string formatComplex(std::complex<double> z) {
  if (z.imag() == 0.0) return formatReal(z.real());
  if (z.real() == 0.0) return formatReal(z.imag()) + "j";
  return "(" + formatReal(z.real()) + (z.imag() < 0 ? "-" : "+") + formatReal(std::abs(z.imag())) + "j)";
}

}  // namespace nabla
