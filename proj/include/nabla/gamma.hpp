#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "nabla/error.hpp"

namespace nabla {

namespace detail {

// Lanczos coefficients, g = 7, n = 9.
inline constexpr std::array<double, 9> kLanczos7 = {
    0.99999999999980993227684700473478,  676.520368121885098567009190444019,
    -1259.13921672240287047156078755283, 771.3234287776530788486528258894,
    -176.61502916214059906584551354,     12.507343278686904814458936853,
    -0.13857109526572011689554707,       9.984369578019570859563e-6,
    1.50563273514931155834e-7};

inline cplx wrapImaginary(cplx z) {
  double im = std::remainder(z.imag(), 2.0 * std::numbers::pi);
  if (im <= -std::numbers::pi) im += 2.0 * std::numbers::pi;
  return {z.real(), im};
}

inline cplx logGammaUnwrapped(cplx z) {
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    return std::log(std::numbers::pi) - std::log(std::sin(std::numbers::pi * z)) - logGammaUnwrapped(1.0 - z);
  }
  z -= 1.0;
  cplx sum = kLanczos7[0];
  for (std::size_t k = 1; k < kLanczos7.size(); ++k) sum += kLanczos7[k] / (z + static_cast<double>(k));
  const cplx t = z + 7.5;
  constexpr double halfLog2Pi = 0.91893853320467274178;
  return halfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace detail

/// Principal-branch log of Gamma(x): exp(logGamma(x)) == Gamma(x) and the
/// imaginary part lies in (-pi, pi].
inline cplx logGamma(cplx x) {
  if (x.imag() == 0.0 && x.real() <= 0.0 && x.real() == std::floor(x.real()))
    throw DomainError("logGamma: Gamma has a pole at the nonpositive integer " + std::to_string(x.real()));
  return detail::wrapImaginary(detail::logGammaUnwrapped(x));
}

/// ln Gamma(x) for real x > 0.
inline double logGammaPositive(double x) {
  if (!(x > 0.0)) throw DomainError("logGammaPositive: argument must be positive");
  return detail::logGammaUnwrapped(cplx(x, 0.0)).real();
}

}  // namespace nabla
