// Constraint handling by Lagrangian relaxation: violated rounds add a
// penalty subgradient to the forwarded loss, and feasibility is guaranteed
// for the average decision only.
#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "regret/circuits.hpp"
#include "regret/minimizer.hpp"

namespace regret {

struct PenaltySchedule {
  enum class Mode { kFixed, kAdaptive };

  Mode mode = Mode::kFixed;
  double kappa = 100.0;
  // Upper bound on the loss gradient norms; 0 means estimate it online as
  // the largest norm seen so far (the feasibility guarantee assumes an
  // a-priori bound, so prefer setting it).
  double loss_norm_bound = 0.0;
  double diameter = 0.0;  // upper bound on the diameter of the base set
  // Adaptive mode: the multiplier lives in [0, beta_max]; 0 defaults to
  // 10 * kappa * loss_norm_bound * diameter.
  double beta_max = 0.0;
  // Optional explicit per-round multiplier (1-based round index); overrides
  // the fixed value. Must be nonnegative.
  std::function<double(long)> custom_beta;

  static PenaltySchedule fixed(double kappa, double loss_norm_bound, double diameter);
  static PenaltySchedule adaptive(double kappa, double loss_norm_bound, double diameter,
                                  double beta_max = 0.0);
  void validate() const;
};

// Wraps a minimizer over X into an approximate minimizer over
// X n {g <= 0}. Emitted decisions may be infeasible; the averages converge
// to the constrained set when the multipliers are large enough.
class LagrangianConstraint final : public Minimizer {
 public:
  LagrangianConstraint(std::unique_ptr<Minimizer> inner, ConvexLoss constraint,
                       PenaltySchedule schedule);

  Vec uniform_average() const;
  // Multiplier-weighted average (1/B) sum beta_t x_t; coincides with the
  // uniform average under a fixed schedule.
  Vec weighted_average() const;
  double current_beta() const { return beta_current_; }
  double last_violation() const { return last_violation_; }
  bool loss_bound_estimated() const { return estimate_loss_bound_; }

  // The exact oracle over the constrained set is problem specific.
  BestResponse best_response(const Vec& g) const override;
  std::string kind() const override;
  void describe(std::ostream& os, int indent) const override;

 protected:
  Vec compute_next() override;
  void absorb(const LinearLoss& loss) override;

 private:
  double scheduled_beta() const;

  std::unique_ptr<Minimizer> inner_;
  ConvexLoss constraint_;
  PenaltySchedule schedule_;
  // Adaptive multiplier: a one-dimensional minimizer over [0, beta_max]
  // whose per-round loss is -beta * violation, so violation pushes the
  // multiplier up.
  std::unique_ptr<VPolytope> beta_minimizer_;
  double beta_current_ = 0.0;
  double observed_loss_norm_ = 0.0;
  bool estimate_loss_bound_ = false;
  double last_violation_ = 0.0;
  Vec decision_sum_;
  Vec weighted_decision_sum_;
  double beta_total_ = 0.0;
};

}  // namespace regret
