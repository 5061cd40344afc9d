#include "regret/intersection.hpp"

#include <cmath>
#include <ostream>

namespace regret {

ProjectionIntersection::ProjectionIntersection(std::unique_ptr<Minimizer> inner,
                                               std::shared_ptr<const Region> region,
                                               BregmanGeometry geometry, ProjectOptions options)
    : Minimizer(inner->dim()),
      inner_(std::move(inner)),
      region_(std::move(region)),
      geometry_(std::move(geometry)),
      options_(options) {
  if (!region_) throw ConfigError("projection circuit: region must be provided");
  if (region_->dim() != dim())
    throw DimensionError("projection circuit: region dimension does not match the inner set");
  geometry_.validate();
}

Vec ProjectionIntersection::compute_next() {
  raw_decision_ = inner_->next();
  raw_feasible_ = region_->contains(raw_decision_, kFeasibilityTol);
  projected_decision_ =
      raw_feasible_ ? raw_decision_ : bregman_project(*region_, raw_decision_, geometry_, options_);
  return projected_decision_;
}

void ProjectionIntersection::absorb(const LinearLoss& loss) {
  LinearLoss forwarded = loss;
  if (raw_feasible_) {
    last_alpha_ = 0.0;
  } else {
    Vec displacement = diff(projected_decision_, raw_decision_);
    double gap = loss.slope(displacement);
    double sq = dot(displacement, displacement);
    last_alpha_ = std::max(0.0, gap / (geometry_.strong_convexity * sq));
    alpha_lhs_ += gap / geometry_.strong_convexity;
    alpha_rhs_ += last_alpha_ * sq;
    if (last_alpha_ > 0.0) {
      Vec penalty = diff(geometry_.gradient(raw_decision_), geometry_.gradient(projected_decision_));
      add_scaled(forwarded.gradient, last_alpha_, penalty);
    }
  }
  double incoming = norm2(loss.gradient);
  if (incoming > 0.0)
    max_dilation_ = std::max(max_dilation_, norm2(forwarded.gradient) / incoming);
  inner_->observe(forwarded);
}

BestResponse ProjectionIntersection::best_response(const Vec& g) const {
  return region_->min_linear(g);
}

bool ProjectionIntersection::contains(const Vec& x, double tol) const {
  return region_->contains(x, tol);
}

std::string ProjectionIntersection::kind() const { return "project[" + region_->name() + "]"; }

void ProjectionIntersection::describe(std::ostream& os, int indent) const {
  Minimizer::describe(os, indent);
  inner_->describe(os, indent + 1);
}

}  // namespace regret
