#include "regret/constrain.hpp"

#include <cmath>
#include <ostream>

#include "regret/atoms.hpp"

namespace regret {

PenaltySchedule PenaltySchedule::fixed(double kappa, double loss_norm_bound, double diameter) {
  PenaltySchedule s;
  s.mode = Mode::kFixed;
  s.kappa = kappa;
  s.loss_norm_bound = loss_norm_bound;
  s.diameter = diameter;
  s.validate();
  return s;
}

PenaltySchedule PenaltySchedule::adaptive(double kappa, double loss_norm_bound, double diameter,
                                          double beta_max) {
  PenaltySchedule s;
  s.mode = Mode::kAdaptive;
  s.kappa = kappa;
  s.loss_norm_bound = loss_norm_bound;
  s.diameter = diameter;
  s.beta_max = beta_max;
  s.validate();
  return s;
}

void PenaltySchedule::validate() const {
  if (kappa <= 0.0) throw ConfigError("penalty schedule: kappa must be positive");
  if (loss_norm_bound < 0.0 || diameter < 0.0)
    throw ConfigError("penalty schedule: bounds must be nonnegative");
  if (mode == Mode::kAdaptive) {
    if (beta_max == 0.0 && loss_norm_bound == 0.0)
      throw ConfigError(
          "penalty schedule: adaptive mode needs beta_max or a loss norm bound to derive it");
    if (beta_max < 0.0) throw ConfigError("penalty schedule: beta_max must be nonnegative");
  }
}

LagrangianConstraint::LagrangianConstraint(std::unique_ptr<Minimizer> inner,
                                           ConvexLoss constraint, PenaltySchedule schedule)
    : Minimizer(inner->dim()),
      inner_(std::move(inner)),
      constraint_(std::move(constraint)),
      schedule_(std::move(schedule)) {
  schedule_.validate();
  if (!constraint_.value || !constraint_.subgradient)
    throw ConfigError("lagrangian: constraint needs value and subgradient callables");
  estimate_loss_bound_ =
      schedule_.loss_norm_bound == 0.0 && schedule_.mode == PenaltySchedule::Mode::kFixed &&
      !schedule_.custom_beta;
  if (schedule_.mode == PenaltySchedule::Mode::kAdaptive) {
    double beta_max = schedule_.beta_max;
    if (beta_max == 0.0)
      beta_max = 10.0 * schedule_.kappa * schedule_.loss_norm_bound * schedule_.diameter;
    std::vector<Vec> endpoints = {Vec{0.0}, Vec{beta_max}};
    beta_minimizer_ = std::make_unique<VPolytope>(
        std::move(endpoints), std::make_unique<RegretMatching>(2));
    beta_current_ = beta_minimizer_->next()[0];
  } else {
    beta_current_ = scheduled_beta();
  }
  decision_sum_ = zeros(dim());
  weighted_decision_sum_ = zeros(dim());
}

double LagrangianConstraint::scheduled_beta() const {
  if (schedule_.custom_beta) {
    double b = schedule_.custom_beta(round() + 1);
    if (b < 0.0) throw ConfigError("penalty schedule: negative multiplier");
    return b;
  }
  double bound = estimate_loss_bound_ ? observed_loss_norm_ : schedule_.loss_norm_bound;
  return schedule_.kappa * bound * schedule_.diameter;
}

Vec LagrangianConstraint::compute_next() { return inner_->next(); }

void LagrangianConstraint::absorb(const LinearLoss& loss) {
  const Vec& x = last_decision();
  observed_loss_norm_ = std::max(observed_loss_norm_, norm2(loss.gradient));
  if (schedule_.mode == PenaltySchedule::Mode::kFixed) beta_current_ = scheduled_beta();
  double violation_value = constraint_.value(x);
  last_violation_ = std::max(0.0, violation_value);
  // beta is gated to zero on feasible rounds, so a feasible decision sees
  // the loss unchanged.
  double gated_beta = violation_value > 0.0 ? beta_current_ : 0.0;
  LinearLoss forwarded = loss;
  if (gated_beta > 0.0) add_scaled(forwarded.gradient, gated_beta, constraint_.subgradient(x));
  inner_->observe(forwarded);
  add_scaled(decision_sum_, 1.0, x);
  add_scaled(weighted_decision_sum_, beta_current_, x);
  beta_total_ += beta_current_;
  if (beta_minimizer_) {
    beta_minimizer_->observe(LinearLoss(Vec{-last_violation_}, 0.0));
    beta_current_ = beta_minimizer_->next()[0];
  }
}

Vec LagrangianConstraint::uniform_average() const {
  if (round() == 0) throw Error("lagrangian: no decisions to average");
  return scaled(decision_sum_, 1.0 / static_cast<double>(round()));
}

Vec LagrangianConstraint::weighted_average() const {
  if (beta_total_ <= 0.0) return uniform_average();
  return scaled(weighted_decision_sum_, 1.0 / beta_total_);
}

BestResponse LagrangianConstraint::best_response(const Vec&) const {
  throw UnsupportedError(
      "lagrangian: best response over the constrained set is problem specific; use the "
      "constrained set's oracle");
}

std::string LagrangianConstraint::kind() const { return "lagrangian"; }

void LagrangianConstraint::describe(std::ostream& os, int indent) const {
  os << std::string(static_cast<std::size_t>(indent) * 2, ' ') << kind() << " dim=" << dim()
     << (schedule_.mode == PenaltySchedule::Mode::kFixed ? " (fixed beta)" : " (adaptive beta)")
     << "\n";
  inner_->describe(os, indent + 1);
}

}  // namespace regret
