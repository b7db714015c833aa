#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/polynomial.hpp"

namespace nabla {

struct RootCluster {
  cplx value;
  int multiplicity = 1;
};

struct RootOptions {
  /// Two roots closer than clusterRelTol * (1 + |root|) are the same root.
  double clusterRelTol = 1e-6;
  int maxIterations = 800;
};

namespace detail {

// Aberth-Ehrlich simultaneous iteration on a polynomial with p(0) != 0.
inline std::vector<cplx> aberthRoots(const Polynomial& p, int maxIterations) {
  const int n = p.degree();
  const Polynomial dp = p.derivative();
  const auto& a = p.coeffs();

  // Initial guesses on a circle around the root centroid with radius from the
  // Fujiwara bound.
  const cplx centroid = -a[static_cast<std::size_t>(n - 1)] / (static_cast<double>(n) * a.back());
  double radius = 0.0;
  for (int k = 0; k < n; ++k) {
    const double ratio = std::abs(a[static_cast<std::size_t>(k)] / a.back());
    radius = std::max(radius, std::pow(ratio, 1.0 / (n - k)));
  }
  radius = std::max(radius, 1e-3);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n + 0.4;
    z[static_cast<std::size_t>(k)] = centroid + radius * cplx(std::cos(theta), std::sin(theta));
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int it = 0; it < maxIterations; ++it) {
    bool allDone = true;
    for (int i = 0; i < n; ++i) {
      auto ui = static_cast<std::size_t>(i);
      if (done[ui]) continue;
      const cplx pz = p(z[ui]);
      const cplx dpz = dp(z[ui]);
      // Backward-error stopping test: |p(z)| is at rounding level.
      double bound = 0.0;
      const double az = std::abs(z[ui]);
      for (int k = n; k >= 0; --k) bound = bound * az + std::abs(a[static_cast<std::size_t>(k)]);
      if (std::abs(pz) <= 8.0 * n * eps * bound) {
        done[ui] = true;
        continue;
      }
      allDone = false;
      const cplx ratio = dpz == cplx{0.0} ? cplx{1e-3} : pz / dpz;
      cplx sum{0.0};
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[ui] - z[static_cast<std::size_t>(j)]);
      const cplx step = ratio / (1.0 - ratio * sum);
      z[ui] -= step;
      if (std::abs(step) <= eps * std::abs(z[ui])) done[ui] = true;
    }
    if (allDone) break;
  }
  return z;
}

// Error radius of a root of multiplicity m under coefficient perturbations of
// relative size eps; distinct Aberth approximations to the same m-fold root
// scatter on roughly this scale.
inline double multipleRootSpread(const Polynomial& p, cplx c, int m) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double bound = 0.0;
  const double ac = std::abs(c);
  for (int k = p.degree(); k >= 0; --k) bound = bound * ac + std::abs(p[k]);
  Polynomial d = p;
  double fact = 1.0;
  for (int j = 1; j <= m; ++j) {
    d = d.derivative();
    fact *= j;
  }
  const double scale = std::abs(d(c)) / fact;
  if (scale == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(64.0 * p.degree() * eps * bound / scale, 1.0 / m);
}

inline cplx refineOnDerivative(const Polynomial& p, cplx z, int multiplicity) {
  Polynomial q = p;
  for (int j = 1; j < multiplicity; ++j) q = q.derivative();
  const Polynomial dq = q.derivative();
  double best = std::abs(q(z));
  for (int it = 0; it < 30 && best > 0.0; ++it) {
    const cplx dqz = dq(z);
    if (dqz == cplx{0.0}) break;
    const cplx next = z - q(z) / dqz;
    const double val = std::abs(q(next));
    if (!(val < best)) break;
    best = val;
    z = next;
  }
  return z;
}

}  // namespace detail

/// All complex roots of p, clustered into distinct roots with multiplicities.
///
/// Roots are found with Aberth-Ehrlich iteration, grouped when they lie within
/// the clustering tolerance (or within the rounding spread expected for a
/// multiple root of that size), and each cluster is polished by Newton
/// iteration on the (m-1)-th derivative. For real-coefficient input the result
/// is made exactly conjugate-symmetric.
inline std::vector<RootCluster> polyRoots(const Polynomial& p, const RootOptions& opt = {}) {
  if (p.degree() < 1) throw InvalidArgumentError("polyRoots: polynomial must have degree >= 1");

  std::vector<RootCluster> clusters;
  // Exact zero roots.
  int zeroMult = 0;
  while (p[zeroMult] == cplx{0.0}) ++zeroMult;
  Polynomial reduced(std::vector<cplx>(p.coeffs().begin() + zeroMult, p.coeffs().end()));
  if (zeroMult > 0) clusters.push_back({cplx{0.0}, zeroMult});

  if (reduced.degree() >= 1) {
    std::vector<cplx> raw;
    if (reduced.degree() == 1) {
      raw.push_back(-reduced[0] / reduced[1]);
    } else {
      raw = detail::aberthRoots(reduced, opt.maxIterations);
    }

    const auto tolAt = [&](cplx z) { return opt.clusterRelTol * (1.0 + std::abs(z)); };

    // Loose grouping, then accept a group as one multiple root only if its
    // members sit within the tolerance or the multiple-root rounding spread.
    const std::size_t n = raw.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (std::abs(raw[i] - raw[j]) <= std::max(1e-3 * (1.0 + std::abs(raw[i])), tolAt(raw[i])))
          parent[find(i)] = find(j);

    std::vector<std::vector<cplx>> groups;
    {
      std::vector<int> index(n, -1);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (index[r] < 0) {
          index[r] = static_cast<int>(groups.size());
          groups.emplace_back();
        }
        groups[static_cast<std::size_t>(index[r])].push_back(raw[i]);
      }
    }

    for (auto& g : groups) {
      const int m = static_cast<int>(g.size());
      cplx centroid{0.0};
      for (cplx z : g) centroid += z;
      centroid /= static_cast<double>(m);
      bool accept = m == 1;
      if (!accept) {
        const double spread = std::max(tolAt(centroid), 4.0 * detail::multipleRootSpread(reduced, centroid, m));
        accept = std::all_of(g.begin(), g.end(), [&](cplx z) { return std::abs(z - centroid) <= spread; });
      }
      if (accept) {
        clusters.push_back({detail::refineOnDerivative(reduced, centroid, m), m});
        continue;
      }
      // Strict greedy clustering at the configured tolerance.
      std::vector<bool> used(g.size(), false);
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (used[i]) continue;
        std::vector<cplx> members{g[i]};
        used[i] = true;
        for (std::size_t j = i + 1; j < g.size(); ++j)
          if (!used[j] && std::abs(g[j] - g[i]) <= tolAt(g[i])) {
            members.push_back(g[j]);
            used[j] = true;
          }
        cplx c{0.0};
        for (cplx z : members) c += z;
        c /= static_cast<double>(members.size());
        const int mm = static_cast<int>(members.size());
        clusters.push_back({detail::refineOnDerivative(reduced, c, mm), mm});
      }
    }
  }

  if (p.hasRealCoefficients()) {
    const auto tolAt = [&](cplx z) { return opt.clusterRelTol * (1.0 + std::abs(z)); };
    for (auto& c : clusters)
      if (std::abs(c.value.imag()) <= tolAt(c.value)) c.value = cplx(c.value.real(), 0.0);
    std::vector<bool> paired(clusters.size(), false);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      if (paired[i] || clusters[i].value.imag() == 0.0) continue;
      std::size_t best = clusters.size();
      double bestDist = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < clusters.size(); ++j) {
        if (j == i || paired[j] || clusters[j].multiplicity != clusters[i].multiplicity) continue;
        const double d = std::abs(clusters[j].value - std::conj(clusters[i].value));
        if (d < bestDist) {
          bestDist = d;
          best = j;
        }
      }
      if (best < clusters.size() && bestDist <= 1e-6 * (1.0 + std::abs(clusters[i].value))) {
        const cplx avg = 0.5 * (clusters[i].value + std::conj(clusters[best].value));
        clusters[i].value = avg;
        clusters[best].value = std::conj(avg);
        paired[i] = paired[best] = true;
      }
    }
  }

  std::sort(clusters.begin(), clusters.end(), [](const RootCluster& x, const RootCluster& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return clusters;
}

}  // namespace nabla
