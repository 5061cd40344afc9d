#include "regret/circuits.hpp"

#include <ostream>

namespace regret {

AffineMap::AffineMap(Matrix m, Vec b) : matrix(std::move(m)), offset(std::move(b)) {
  if (static_cast<int>(offset.size()) != matrix.rows)
    throw DimensionError("affine map: offset length does not match the matrix rows");
}

Vec AffineMap::apply(const Vec& x) const {
  Vec y = matrix.apply(x);
  add_scaled(y, 1.0, offset);
  return y;
}

LinearLoss AffineMap::pullback(const LinearLoss& loss) const {
  return LinearLoss(matrix.apply_transposed(loss.gradient),
                    loss.offset + dot(loss.gradient, offset));
}

int CartesianProduct::total_dim(const std::vector<std::unique_ptr<Minimizer>>& children) {
  if (children.empty()) throw DimensionError("cartesian product needs at least one factor");
  int d = 0;
  for (const auto& c : children) d += c->dim();
  return d;
}

CartesianProduct::CartesianProduct(std::vector<std::unique_ptr<Minimizer>> children)
    : Minimizer(total_dim(children)), children_(std::move(children)) {
  int off = 0;
  for (const auto& c : children_) {
    offsets_.push_back(off);
    off += c->dim();
  }
}

CartesianProduct::CartesianProduct(std::unique_ptr<Minimizer> x, std::unique_ptr<Minimizer> y)
    : CartesianProduct([&] {
        std::vector<std::unique_ptr<Minimizer>> v;
        v.push_back(std::move(x));
        v.push_back(std::move(y));
        return v;
      }()) {}

Vec CartesianProduct::compute_next() {
  Vec x = zeros(dim());
  for (std::size_t i = 0; i < children_.size(); ++i) {
    Vec part = children_[i]->next();
    std::copy(part.begin(), part.end(), x.begin() + offsets_[i]);
  }
  return x;
}

void CartesianProduct::absorb(const LinearLoss& loss) {
  for (std::size_t i = 0; i < children_.size(); ++i)
    children_[i]->observe(
        LinearLoss(slice(loss.gradient, offsets_[i], children_[i]->dim()), 0.0));
}

BestResponse CartesianProduct::best_response(const Vec& g) const {
  if (static_cast<int>(g.size()) != dim())
    throw DimensionError("best_response: gradient dimension mismatch");
  Vec x = zeros(dim());
  double value = 0.0;
  for (std::size_t i = 0; i < children_.size(); ++i) {
    BestResponse part =
        children_[i]->best_response(slice(g, offsets_[i], children_[i]->dim()));
    std::copy(part.decision.begin(), part.decision.end(), x.begin() + offsets_[i]);
    value += part.value;
  }
  return {x, value};
}

bool CartesianProduct::contains(const Vec& x, double tol) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  for (std::size_t i = 0; i < children_.size(); ++i)
    if (!children_[i]->contains(slice(x, offsets_[i], children_[i]->dim()), tol)) return false;
  return true;
}

std::string CartesianProduct::kind() const { return "product"; }

void CartesianProduct::describe(std::ostream& os, int indent) const {
  Minimizer::describe(os, indent);
  for (const auto& c : children_) c->describe(os, indent + 1);
}

AffineImage::AffineImage(std::unique_ptr<Minimizer> inner, AffineMap map)
    : Minimizer(map.range_dim()), inner_(std::move(inner)), map_(std::move(map)) {
  if (map_.domain_dim() != inner_->dim())
    throw DimensionError("affine image: map domain does not match the inner set");
}

Vec AffineImage::compute_next() { return map_.apply(inner_->next()); }

void AffineImage::absorb(const LinearLoss& loss) {
  // Only the linear part survives composition with the map; the constant
  // part cannot influence regret.
  inner_->observe(LinearLoss(map_.matrix.apply_transposed(loss.gradient), 0.0));
}

BestResponse AffineImage::best_response(const Vec& g) const {
  if (static_cast<int>(g.size()) != dim())
    throw DimensionError("best_response: gradient dimension mismatch");
  BestResponse inner = inner_->best_response(map_.matrix.apply_transposed(g));
  return {map_.apply(inner.decision), inner.value + dot(g, map_.offset)};
}

std::string AffineImage::kind() const { return "affine_image"; }

void AffineImage::describe(std::ostream& os, int indent) const {
  Minimizer::describe(os, indent);
  inner_->describe(os, indent + 1);
}

std::unique_ptr<Minimizer> minkowski_sum(std::unique_ptr<Minimizer> x,
                                         std::unique_ptr<Minimizer> y) {
  int n = x->dim();
  if (y->dim() != n) throw DimensionError("minkowski sum: summands must share a dimension");
  auto product = std::make_unique<CartesianProduct>(std::move(x), std::move(y));
  Matrix m(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = 1.0;
    m.at(i, n + i) = 1.0;
  }
  return std::make_unique<AffineImage>(std::move(product), AffineMap(std::move(m), zeros(n)));
}

ConvexHull::ConvexHull(std::vector<std::unique_ptr<Minimizer>> children,
                       std::unique_ptr<Minimizer> mixer)
    : Minimizer(children.empty() ? 0 : children.front()->dim()),
      children_(std::move(children)),
      mixer_(std::move(mixer)) {
  if (children_.size() < 2) throw DimensionError("convex hull needs at least two children");
  for (const auto& c : children_)
    if (c->dim() != dim())
      throw DimensionError("convex hull children must share an ambient dimension");
  if (mixer_->dim() != static_cast<int>(children_.size()))
    throw DimensionError("convex hull mixer dimension must equal the child count");
}

Vec ConvexHull::compute_next() {
  round_decisions_.clear();
  for (auto& c : children_) round_decisions_.push_back(c->next());
  round_weights_ = mixer_->next();
  Vec x = zeros(dim());
  for (std::size_t i = 0; i < children_.size(); ++i)
    add_scaled(x, round_weights_[i], round_decisions_[i]);
  return x;
}

void ConvexHull::absorb(const LinearLoss& loss) {
  // The mixer's loss vector evaluates the incoming loss at the children's
  // decisions from this same round.
  Vec mixer_gradient = zeros(static_cast<int>(children_.size()));
  for (std::size_t i = 0; i < children_.size(); ++i)
    mixer_gradient[i] = loss.value(round_decisions_[i]);
  for (auto& c : children_) c->observe(loss);
  mixer_->observe(LinearLoss(std::move(mixer_gradient), 0.0));
}

BestResponse ConvexHull::best_response(const Vec& g) const {
  if (static_cast<int>(g.size()) != dim())
    throw DimensionError("best_response: gradient dimension mismatch");
  BestResponse best;
  bool first = true;
  for (const auto& c : children_) {
    BestResponse r = c->best_response(g);
    if (first || r.value < best.value) {
      best = std::move(r);
      first = false;
    }
  }
  return best;
}

std::string ConvexHull::kind() const { return "hull"; }

void ConvexHull::describe(std::ostream& os, int indent) const {
  Minimizer::describe(os, indent);
  os << std::string(static_cast<std::size_t>(indent + 1) * 2, ' ') << "mixer:\n";
  mixer_->describe(os, indent + 2);
  for (const auto& c : children_) c->describe(os, indent + 1);
}

VPolytope::VPolytope(std::vector<Vec> vertices, std::unique_ptr<Minimizer> mixer)
    : Minimizer(vertices.empty() ? 0 : static_cast<int>(vertices.front().size())),
      vertices_(std::move(vertices)),
      mixer_(std::move(mixer)) {
  if (vertices_.empty()) throw DimensionError("v-polytope needs at least one vertex");
  for (const auto& v : vertices_)
    if (static_cast<int>(v.size()) != dim())
      throw DimensionError("v-polytope vertices must share a dimension");
  if (mixer_->dim() != static_cast<int>(vertices_.size()))
    throw DimensionError("v-polytope mixer dimension must equal the vertex count");
}

Vec VPolytope::compute_next() {
  round_weights_ = mixer_->next();
  Vec x = zeros(dim());
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    add_scaled(x, round_weights_[i], vertices_[i]);
  return x;
}

void VPolytope::absorb(const LinearLoss& loss) {
  Vec mixer_gradient = zeros(static_cast<int>(vertices_.size()));
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    mixer_gradient[i] = loss.value(vertices_[i]);
  mixer_->observe(LinearLoss(std::move(mixer_gradient), 0.0));
}

BestResponse VPolytope::best_response(const Vec& g) const {
  if (static_cast<int>(g.size()) != dim())
    throw DimensionError("best_response: gradient dimension mismatch");
  int best = 0;
  double best_value = dot(g, vertices_[0]);
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    double v = dot(g, vertices_[i]);
    if (v < best_value) {
      best = static_cast<int>(i);
      best_value = v;
    }
  }
  return {vertices_[best], best_value};
}

std::string VPolytope::kind() const { return "vpolytope"; }

void VPolytope::describe(std::ostream& os, int indent) const {
  os << std::string(static_cast<std::size_t>(indent) * 2, ' ') << kind() << " dim=" << dim()
     << " vertices=" << vertices_.size() << "\n";
  mixer_->describe(os, indent + 1);
}

ExpertsCombiner::ExpertsCombiner(std::vector<std::unique_ptr<Minimizer>> experts,
                                 std::unique_ptr<Minimizer> mixer)
    : experts_(std::move(experts)), mixer_(std::move(mixer)) {
  if (experts_.empty()) throw DimensionError("experts combiner needs at least one expert");
  if (mixer_->dim() != static_cast<int>(experts_.size()))
    throw DimensionError("experts combiner mixer dimension must equal the expert count");
  expert_stats_.resize(experts_.size());
  for (std::size_t i = 0; i < experts_.size(); ++i)
    expert_stats_[i].gradient_sum = zeros(experts_[i]->dim());
  mixer_stats_.gradient_sum = zeros(mixer_->dim());
}

ExpertsCombiner::Round ExpertsCombiner::next() {
  if (pending_) throw ProtocolError("experts combiner: next() called twice without observe()");
  round_.recommendations.clear();
  for (auto& e : experts_) round_.recommendations.push_back(e->next());
  round_.weights = mixer_->next();
  pending_ = true;
  return round_;
}

void ExpertsCombiner::observe(const std::vector<LinearLoss>& losses) {
  if (!pending_) throw ProtocolError("experts combiner: observe() without a pending round");
  if (losses.size() != experts_.size())
    throw DimensionError("experts combiner: expected one loss per expert, got " +
                         std::to_string(losses.size()));
  Vec mixer_gradient = zeros(static_cast<int>(experts_.size()));
  for (std::size_t i = 0; i < experts_.size(); ++i) {
    double v = losses[i].value(round_.recommendations[i]);
    mixer_gradient[i] = v;
    experts_[i]->observe(losses[i]);
    add_scaled(expert_stats_[i].gradient_sum, 1.0, losses[i].gradient);
    expert_stats_[i].offset_sum += losses[i].offset;
    expert_stats_[i].incurred += v;
  }
  LinearLoss mixer_loss(mixer_gradient, 0.0);
  combined_incurred_ += mixer_loss.value(round_.weights);
  mixer_->observe(mixer_loss);
  add_scaled(mixer_stats_.gradient_sum, 1.0, mixer_gradient);
  mixer_stats_.incurred += mixer_loss.value(round_.weights);
  pending_ = false;
  ++rounds_;
}

double ExpertsCombiner::combined_regret() const {
  if (rounds_ == 0) return 0.0;
  // The comparator picks one expert and one fixed decision for it, so the
  // best total is the smallest per-expert best-in-hindsight total.
  double best = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < experts_.size(); ++i) {
    double v = experts_[i]->best_response(expert_stats_[i].gradient_sum).value +
               expert_stats_[i].offset_sum;
    if (first || v < best) {
      best = v;
      first = false;
    }
  }
  return combined_incurred_ - best;
}

double ExpertsCombiner::mixer_regret() const {
  if (rounds_ == 0) return 0.0;
  return mixer_stats_.incurred - mixer_->best_response(mixer_stats_.gradient_sum).value;
}

double ExpertsCombiner::expert_regret(int i) const {
  const StreamStats& s = expert_stats_.at(static_cast<std::size_t>(i));
  if (rounds_ == 0) return 0.0;
  return s.incurred -
         (experts_[static_cast<std::size_t>(i)]->best_response(s.gradient_sum).value +
          s.offset_sum);
}

}  // namespace regret
