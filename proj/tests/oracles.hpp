#pragma once

// Reference values computed without the library's own machinery.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// (-1)^{k-a} - 2^{a-k} + 3(a-k) 2^{a-k-1}
inline double exampleOneClosedForm(int n) {
  return std::pow(-1.0, n) - std::pow(2.0, -n) + 3.0 * (-n) * std::pow(2.0, -n - 1);
}

/// Mittag-Leffler series in quad precision, fixed 400 terms.
inline cplx mittagLeffler(double alpha, double beta, cplx lambda, int n, int terms = 400) {
  using q = __float128;
  q sre = 0, sim = 0, pre = 1, pim = 0;
  const q lre = lambda.real(), lim = lambda.imag();
  for (int i = 0; i < terms; ++i) {
    // Gamma(n + x - 1) / (Gamma(n) Gamma(x)) = prod_{j < n-1} (x + j) / (j + 1)
    const q x = static_cast<q>(i) * alpha + beta;
    q mag = 1;
    for (int j = 0; j + 1 < n; ++j) mag = mag * (x + j) / (j + 1);
    sre += pre * mag;
    sim += pim * mag;
    const q t = pre * lre - pim * lim;
    pim = pre * lim + pim * lre;
    pre = t;
  }
  return {static_cast<double>(sre), static_cast<double>(sim)};
}

/// Coefficients of p(1 - w) given ascending coefficients of p(s), by binomial expansion.
inline std::vector<cplx> shiftOneMinus(const std::vector<cplx>& p) {
  std::vector<cplx> out(p.size(), 0.0);
  for (std::size_t m = 0; m < p.size(); ++m) {
    double binom = 1.0;
    for (std::size_t j = 0; j <= m; ++j) {
      out[j] += p[m] * binom * ((j % 2) ? -1.0 : 1.0);
      binom = binom * static_cast<double>(m - j) / static_cast<double>(j + 1);
    }
  }
  return out;
}

/// First `count` coefficients of num(1-w)/den(1-w), by the long-division recurrence.
inline std::vector<cplx> seriesValues(const std::vector<cplx>& num, const std::vector<cplx>& den, int count) {
  const auto a = shiftOneMinus(num);
  const auto b = shiftOneMinus(den);
  std::vector<cplx> c(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    cplx acc = static_cast<std::size_t>(j) < a.size() ? a[static_cast<std::size_t>(j)] : 0.0;
    for (int i = 1; i <= j && static_cast<std::size_t>(i) < b.size(); ++i)
      acc -= b[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j - i)];
    c[static_cast<std::size_t>(j)] = acc / b[0];
  }
  return c;
}

/// Ascending coefficients of lead * prod (s - r).
inline std::vector<cplx> fromRoots(const std::vector<cplx>& roots, cplx lead = 1.0) {
  std::vector<cplx> p{lead};
  for (cplx r : roots) {
    std::vector<cplx> q(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i + 1] += p[i];
      q[i] -= r * p[i];
    }
    p = q;
  }
  return p;
}

inline cplx horner(const std::vector<cplx>& p, cplx s) {
  cplx acc{0.0};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * s + *it;
  return acc;
}

struct RandomRational {
  std::vector<cplx> num;
  std::vector<cplx> den;
  std::vector<cplx> roots;  ///< denominator roots with repetition
};

/// Real strictly proper rational with degree <= maxDegree, poles at distance
/// >= minDistance from s = 1, all coefficients within [-bound, bound].
/// Every third draw carries a repeated pole.
inline RandomRational randomRational(std::mt19937_64& rng, int draw, int maxDegree = 6, double minDistance = 0.15,
                                     double bound = 5.0) {
  std::uniform_int_distribution<int> degDist(1, maxDegree);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const int d = degDist(rng);
    std::vector<cplx> roots;
    auto farFromOthers = [&](cplx z) {
      if (std::abs(z - 1.0) < minDistance) return false;
      for (cplx r : roots)
        if (std::abs(r - z) < 0.05) return false;
      return true;
    };
    while (static_cast<int>(roots.size()) < d) {
      const int left = d - static_cast<int>(roots.size());
      if (draw % 3 == 0 && roots.empty() && left >= 2) {
        const cplx z = 1.6 * u(rng);
        if (std::abs(z - 1.0) < minDistance) continue;
        const int mult = std::min(left, 2 + (draw / 3) % 2);
        for (int m = 0; m < mult; ++m) roots.push_back(z);
        continue;
      }
      if (left >= 2 && u(rng) > 0.0) {
        const cplx z(1.6 * u(rng), 1.6 * u(rng));
        if (std::abs(z.imag()) < 0.05 || !farFromOthers(z) || !farFromOthers(std::conj(z))) continue;
        roots.push_back(z);
        roots.push_back(std::conj(z));
      } else {
        const cplx z = 1.6 * u(rng);
        if (!farFromOthers(z)) continue;
        roots.push_back(z);
      }
    }
    auto den = fromRoots(roots);
    for (auto& c : den) c = c.real();
    bool ok = true;
    for (auto c : den) ok = ok && std::abs(c) <= bound;
    if (!ok) continue;
    std::uniform_int_distribution<int> numDeg(0, d - 1);
    std::vector<cplx> num(static_cast<std::size_t>(numDeg(rng) + 1));
    for (auto& c : num) c = bound * u(rng);
    if (std::abs(num.back()) < 0.1) num.back() = 1.0;
    return {num, den, roots};
  }
}

}  // namespace oracle
