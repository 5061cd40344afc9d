// The regret-minimizer contract: a device that alternates decisions in a
// convex set with observations of linear losses, plus the ledger used for
// exact regret evaluation and the convex-to-linear wrapper.
#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "regret/errors.hpp"
#include "regret/loss.hpp"
#include "regret/vec.hpp"

namespace regret {

inline constexpr double kFeasibilityTol = 1e-9;

// An exact best-in-hindsight answer: the minimizing decision and the
// minimum of a cumulative linear functional over the set.
struct BestResponse {
  Vec decision;
  double value = 0.0;
};

using BestResponseFn = std::function<BestResponse(const Vec&)>;

class Minimizer {
 public:
  virtual ~Minimizer() = default;
  Minimizer(const Minimizer&) = delete;
  Minimizer& operator=(const Minimizer&) = delete;

  int dim() const { return dim_; }
  // Completed rounds (observed losses so far).
  long round() const { return round_; }

  // Emits the decision for the upcoming round. Strict alternation with
  // observe() is enforced.
  Vec next();

  // Receives the loss for the round of the most recent decision.
  void observe(const LinearLoss& loss);

  // Single-call form: forwards the previous round's loss (absent on the
  // first call), then emits the next decision.
  Vec step(const std::optional<LinearLoss>& previous_loss = std::nullopt);

  // Exact minimizer and minimum of <cumulative_gradient, x> over the set.
  // Ties are broken toward the lowest coordinate/child index.
  virtual BestResponse best_response(const Vec& cumulative_gradient) const = 0;

  // Membership test for the underlying set. Not every composite set admits
  // one; the default reports the operation as unsupported.
  virtual bool contains(const Vec& x, double tol = kFeasibilityTol) const;

  virtual std::string kind() const = 0;

  // Prints this node (and any children) for circuit inspection.
  virtual void describe(std::ostream& os, int indent = 0) const;

  const Vec& last_decision() const { return last_decision_; }

 protected:
  explicit Minimizer(int dim);

  virtual Vec compute_next() = 0;
  virtual void absorb(const LinearLoss& loss) = 0;

 private:
  int dim_;
  long round_ = 0;
  bool pending_loss_ = false;
  Vec last_decision_;
};

// Ordered record of one minimizer's decisions and observed losses together
// with the running incurred sum.
class Ledger {
 public:
  void record_decision(const Vec& x);
  void record_loss(const LinearLoss& loss);

  long rounds() const { return static_cast<long>(losses_.size()); }
  double incurred() const { return incurred_; }
  double recompute_incurred() const;
  const Vec& gradient_sum() const { return gradient_sum_; }
  double offset_sum() const { return offset_sum_; }
  const std::vector<Vec>& decisions() const { return decisions_; }
  const std::vector<LinearLoss>& losses() const { return losses_; }

  // Cumulative regret: incurred minus the best fixed decision's total loss,
  // with the minimum supplied by an exact oracle. Empty ledger gives 0.
  double regret(const BestResponseFn& best_oracle) const;

 private:
  std::vector<Vec> decisions_;
  std::vector<LinearLoss> losses_;
  Vec gradient_sum_;
  double offset_sum_ = 0.0;
  double incurred_ = 0.0;
};

double cumulative_regret(const Ledger& ledger, const BestResponseFn& best_oracle);

// Transparent wrapper that records a ledger for the wrapped minimizer.
class Recording final : public Minimizer {
 public:
  explicit Recording(std::unique_ptr<Minimizer> inner);

  const Ledger& ledger() const { return ledger_; }
  double regret() const;
  Minimizer& inner() { return *inner_; }

  BestResponse best_response(const Vec& g) const override;
  bool contains(const Vec& x, double tol) const override;
  std::string kind() const override;
  void describe(std::ostream& os, int indent) const override;

 protected:
  Vec compute_next() override;
  void absorb(const LinearLoss& loss) override;

 private:
  std::unique_ptr<Minimizer> inner_;
  Ledger ledger_;
};

// Convex-to-linear wrapper: decisions pass through unchanged; an observed
// convex loss is forwarded to the inner minimizer as the linear loss whose
// gradient is a subgradient taken at the decision the loss evaluates.
class Linearized {
 public:
  explicit Linearized(std::unique_ptr<Minimizer> inner);
  explicit Linearized(Minimizer& inner);  // non-owning

  int dim() const;
  long round() const { return linear_ledger_.rounds(); }

  Vec next();
  void observe(const ConvexLoss& loss);

  // Forwarded linear losses and pass-through decisions.
  const Ledger& linear_ledger() const { return linear_ledger_; }
  // Running sum of the convex losses evaluated at the decisions.
  double convex_incurred() const { return convex_incurred_; }

  Minimizer& inner() { return *inner_; }

 private:
  Minimizer* inner_;
  std::unique_ptr<Minimizer> owned_;
  Ledger linear_ledger_;
  double convex_incurred_ = 0.0;
  Vec pending_decision_;
  bool has_pending_ = false;
};

}  // namespace regret
