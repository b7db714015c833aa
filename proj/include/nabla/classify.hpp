#pragma once

#include <string>

#include "nabla/expr.hpp"
#include "nabla/table.hpp"

namespace nabla {

enum class Classification { Rational, FractionalSum, TableCandidate, Unsupported };

inline std::string toString(Classification c) {
  switch (c) {
    case Classification::Rational: return "rational";
    case Classification::FractionalSum: return "fractional-sum";
    case Classification::TableCandidate: return "table-candidate";
    case Classification::Unsupported: return "unsupported";
  }
  return "?";
}

/// Total labeling of a parsed F(s).
///
/// Function atoms (sin, cos, ...) only occur as table parameters, so any
/// expression with one is a table candidate. Fractional powers of s go to the
/// Mittag-Leffler sum form when they fit it, otherwise to the table.
inline Classification classify(const ExprPtr& e) {
  const ExprFeatures feat = features(*e);
  if (!feat.hasFractionalPower) return feat.calls.empty() ? Classification::Rational : Classification::TableCandidate;
  if (toFractionalSum(e)) return Classification::FractionalSum;
  if (tableLookup(*e)) return Classification::TableCandidate;
  return Classification::Unsupported;
}

}  // namespace nabla
