#include "regret/minimizer.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace regret {

Minimizer::Minimizer(int dim) : dim_(dim) {
  if (dim < 0) throw DimensionError("minimizer dimension must be nonnegative");
}

Vec Minimizer::next() {
  if (pending_loss_)
    throw ProtocolError("next() called twice without an intervening observe() [" + kind() + "]");
  Vec x = compute_next();
  if (static_cast<int>(x.size()) != dim_)
    throw DimensionError("decision dimension " + std::to_string(x.size()) +
                         " does not match set dimension " + std::to_string(dim_));
  last_decision_ = x;
  pending_loss_ = true;
  return x;
}

void Minimizer::observe(const LinearLoss& loss) {
  if (loss.dim() != dim_)
    throw DimensionError("loss gradient dimension " + std::to_string(loss.dim()) +
                         " does not match set dimension " + std::to_string(dim_) + " [" +
                         kind() + "]");
  if (!pending_loss_)
    throw ProtocolError("observe() without a pending decision [" + kind() + "]");
  absorb(loss);
  pending_loss_ = false;
  ++round_;
}

Vec Minimizer::step(const std::optional<LinearLoss>& previous_loss) {
  if (previous_loss) observe(*previous_loss);
  return next();
}

bool Minimizer::contains(const Vec&, double) const {
  throw UnsupportedError("membership test not supported for set family [" + kind() + "]");
}

void Minimizer::describe(std::ostream& os, int indent) const {
  os << std::string(static_cast<std::size_t>(indent) * 2, ' ') << kind() << " dim=" << dim_
     << "\n";
}

void Ledger::record_decision(const Vec& x) {
  if (decisions_.size() != losses_.size())
    throw ProtocolError("ledger: decision recorded twice without a loss");
  decisions_.push_back(x);
}

void Ledger::record_loss(const LinearLoss& loss) {
  if (decisions_.size() != losses_.size() + 1)
    throw ProtocolError("ledger: loss recorded without a matching decision");
  if (gradient_sum_.empty()) gradient_sum_ = zeros(loss.dim());
  if (loss.dim() != static_cast<int>(gradient_sum_.size()))
    throw DimensionError("ledger: loss dimension changed mid-stream");
  losses_.push_back(loss);
  add_scaled(gradient_sum_, 1.0, loss.gradient);
  offset_sum_ += loss.offset;
  incurred_ += loss.value(decisions_.back());
}

double Ledger::recompute_incurred() const {
  double s = 0.0;
  for (std::size_t t = 0; t < losses_.size(); ++t) s += losses_[t].value(decisions_[t]);
  return s;
}

double Ledger::regret(const BestResponseFn& best_oracle) const {
  if (losses_.empty()) return 0.0;
  BestResponse best = best_oracle(gradient_sum_);
  return incurred_ - (best.value + offset_sum_);
}

double cumulative_regret(const Ledger& ledger, const BestResponseFn& best_oracle) {
  return ledger.regret(best_oracle);
}

Recording::Recording(std::unique_ptr<Minimizer> inner)
    : Minimizer(inner->dim()), inner_(std::move(inner)) {}

double Recording::regret() const {
  return ledger_.regret([this](const Vec& g) { return inner_->best_response(g); });
}

BestResponse Recording::best_response(const Vec& g) const { return inner_->best_response(g); }

bool Recording::contains(const Vec& x, double tol) const { return inner_->contains(x, tol); }

std::string Recording::kind() const { return inner_->kind(); }

void Recording::describe(std::ostream& os, int indent) const { inner_->describe(os, indent); }

Vec Recording::compute_next() {
  Vec x = inner_->next();
  ledger_.record_decision(x);
  return x;
}

void Recording::absorb(const LinearLoss& loss) {
  inner_->observe(loss);
  ledger_.record_loss(loss);
}

Linearized::Linearized(std::unique_ptr<Minimizer> inner)
    : inner_(inner.get()), owned_(std::move(inner)) {}

Linearized::Linearized(Minimizer& inner) : inner_(&inner) {}

int Linearized::dim() const { return inner_->dim(); }

Vec Linearized::next() {
  Vec x = inner_->next();
  pending_decision_ = x;
  has_pending_ = true;
  linear_ledger_.record_decision(x);
  return x;
}

void Linearized::observe(const ConvexLoss& loss) {
  if (!has_pending_) throw ProtocolError("linearize: observe() without a pending decision");
  Vec g;
  try {
    g = loss.subgradient(pending_decision_);
  } catch (const std::exception& e) {
    throw Error("linearize: subgradient callable failed at round " +
                std::to_string(linear_ledger_.rounds() + 1) + ": " + e.what());
  }
  if (static_cast<int>(g.size()) != inner_->dim())
    throw DimensionError("linearize: subgradient dimension does not match the set");
  convex_incurred_ += loss.value(pending_decision_);
  LinearLoss forwarded(std::move(g), 0.0);
  inner_->observe(forwarded);
  linear_ledger_.record_loss(forwarded);
  has_pending_ = false;
}

}  // namespace regret
