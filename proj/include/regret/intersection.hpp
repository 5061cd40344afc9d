// Constraint handling by generalized projection: decisions are projected
// onto the intersection, so every emitted decision is feasible, and the
// forwarded loss gains a penalty term that keeps the inner regret honest.
#pragma once

#include <memory>

#include "regret/minimizer.hpp"
#include "regret/projection.hpp"

namespace regret {

class ProjectionIntersection final : public Minimizer {
 public:
  ProjectionIntersection(std::unique_ptr<Minimizer> inner, std::shared_ptr<const Region> region,
                         BregmanGeometry geometry = BregmanGeometry::euclidean(),
                         ProjectOptions options = {});

  const Region& region() const { return *region_; }
  double last_alpha() const { return last_alpha_; }
  // Cumulative sides of the penalty-weight condition
  //   (1/mu) sum_t l_t([x_t] - x_t) <= sum_t alpha_t ||[x_t] - x_t||^2,
  // maintained per round so it can be checked as the run progresses.
  double alpha_condition_lhs() const { return alpha_lhs_; }
  double alpha_condition_rhs() const { return alpha_rhs_; }
  // Largest observed ||forwarded|| / ||incoming|| gradient-norm ratio.
  double max_dilation() const { return max_dilation_; }

  BestResponse best_response(const Vec& g) const override;
  bool contains(const Vec& x, double tol) const override;
  std::string kind() const override;
  void describe(std::ostream& os, int indent) const override;

 protected:
  Vec compute_next() override;
  void absorb(const LinearLoss& loss) override;

 private:
  std::unique_ptr<Minimizer> inner_;
  std::shared_ptr<const Region> region_;
  BregmanGeometry geometry_;
  ProjectOptions options_;
  Vec raw_decision_;
  Vec projected_decision_;
  bool raw_feasible_ = true;
  double last_alpha_ = 0.0;
  double alpha_lhs_ = 0.0;
  double alpha_rhs_ = 0.0;
  double max_dilation_ = 0.0;
};

}  // namespace regret
