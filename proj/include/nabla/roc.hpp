#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nabla/error.hpp"
#include "nabla/rational.hpp"

namespace nabla {

/// |1 - s| < radius (radius may be +infinity).
struct DiskAroundOne {
  double radius;
};

/// |s| > radius.
struct OriginExclusion {
  double radius;
};

/// |lambda| < |s|^alpha.
struct FractionalDominance {
  double alpha;
  cplx lambda;
};

using RocConstraint = std::variant<DiskAroundOne, OriginExclusion, FractionalDominance>;

/// Region of convergence as a conjunction of primitive constraints. The empty
/// conjunction is the whole plane.
class Roc {
 public:
  Roc() = default;
  explicit Roc(std::vector<RocConstraint> constraints) : constraints_(std::move(constraints)) {
    for (const auto& c : constraints_) validate(c);
  }

  static Roc wholePlane() { return {}; }
  static Roc disk(double radius) { return Roc({DiskAroundOne{radius}}); }

  const std::vector<RocConstraint>& constraints() const noexcept { return constraints_; }

  Roc operator&&(const Roc& other) const {
    std::vector<RocConstraint> c = constraints_;
    c.insert(c.end(), other.constraints_.begin(), other.constraints_.end());
    return Roc(std::move(c));
  }

  bool contains(cplx s) const {
    for (const auto& c : constraints_) {
      const bool ok = std::visit(
          [&](const auto& k) -> bool {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, DiskAroundOne>) return std::abs(1.0 - s) < k.radius;
            else if constexpr (std::is_same_v<T, OriginExclusion>) return std::abs(s) > k.radius;
            else return std::abs(k.lambda) < std::pow(std::abs(s), k.alpha);
          },
          c);
      if (!ok) return false;
    }
    return true;
  }

  /// Radius of the tightest disk-around-one constraint, if there is one.
  std::optional<double> diskRadius() const {
    std::optional<double> r;
    for (const auto& c : constraints_)
      if (const auto* d = std::get_if<DiskAroundOne>(&c)) r = r ? std::min(*r, d->radius) : d->radius;
    return r;
  }

  std::string toString() const {
    if (constraints_.empty()) return "all s";
    std::string out;
    for (const auto& c : constraints_) {
      if (!out.empty()) out += " and ";
      out += std::visit(
          [](const auto& k) -> std::string {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, DiskAroundOne>)
              return std::isinf(k.radius) ? "|1-s| < inf" : "|1-s| < " + formatComplex(k.radius);
            else if constexpr (std::is_same_v<T, OriginExclusion>)
              return "|s| > " + formatComplex(k.radius);
            else
              return "|" + formatComplex(k.lambda) + "| < |s|^" + formatComplex(k.alpha);
          },
          c);
    }
    return out;
  }

  /// Same constraints in the `disk1:R,origin:R,dominance:ALPHA:RE[:IM]` flag syntax.
  std::string toSpec() const {
    std::string out;
    for (const auto& c : constraints_) {
      if (!out.empty()) out += ",";
      out += std::visit(
          [](const auto& k) -> std::string {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, DiskAroundOne>)
              return "disk1:" + (std::isinf(k.radius) ? std::string("inf") : formatComplex(k.radius));
            else if constexpr (std::is_same_v<T, OriginExclusion>)
              return "origin:" + formatComplex(k.radius);
            else
              return "dominance:" + formatComplex(k.alpha) + ":" + formatComplex(k.lambda.real()) +
                     (k.lambda.imag() != 0.0 ? ":" + formatComplex(k.lambda.imag()) : "");
          },
          c);
    }
    return out;
  }

 private:
  static void validate(const RocConstraint& c) {
    if (const auto* d = std::get_if<DiskAroundOne>(&c); d && !(d->radius > 0.0))
      throw InvalidArgumentError("ROC: disk radius must be positive");
    if (const auto* o = std::get_if<OriginExclusion>(&c); o && !(o->radius >= 0.0 && std::isfinite(o->radius)))
      throw InvalidArgumentError("ROC: origin exclusion radius must be finite and >= 0");
    if (const auto* f = std::get_if<FractionalDominance>(&c); f && !(f->alpha > 0.0))
      throw InvalidArgumentError("ROC: dominance order alpha must be positive");
  }

  std::vector<RocConstraint> constraints_;
};

inline bool rocContains(const Roc& roc, cplx s) { return roc.contains(s); }

/// Largest disk around s = 1 free of poles of F.
inline Roc inferRoc(const RationalFunction& rf) { return Roc::disk(rf.poleDistanceFromOne()); }

}  // namespace nabla
