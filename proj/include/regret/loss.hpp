#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "regret/vec.hpp"

namespace regret {

// Affine loss x -> <gradient, x> + offset. The offset never affects regret
// (it cancels between the incurred and best-in-hindsight terms) but is
// carried so that pullbacks through affine maps stay exact.
struct LinearLoss {
  Vec gradient;
  double offset = 0.0;

  LinearLoss() = default;
  explicit LinearLoss(Vec g, double c = 0.0) : gradient(std::move(g)), offset(c) {}

  int dim() const { return static_cast<int>(gradient.size()); }
  double value(const Vec& x) const { return dot(gradient, x) + offset; }
  // Applied to a displacement; the offset does not participate.
  double slope(const Vec& direction) const { return dot(gradient, direction); }
};

// Convex loss given by a value callable and a subgradient callable.
struct ConvexLoss {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> subgradient;
};

// Largest violation of the subgradient inequality
//   value(b) >= value(a) + <subgradient(a), b - a>
// over the given pairs. Nonpositive (up to tolerance) for a convex loss.
inline double max_subgradient_violation(const ConvexLoss& f,
                                        const std::vector<std::pair<Vec, Vec>>& pairs) {
  double worst = 0.0;
  for (const auto& [a, b] : pairs) {
    double lhs = f.value(a) + dot(f.subgradient(a), diff(b, a));
    worst = std::max(worst, lhs - f.value(b));
  }
  return worst;
}

}  // namespace regret
