#include "regret/atoms.hpp"

#include <algorithm>
#include <cmath>

namespace regret {

Vec positive_share(const Vec& regrets) {
  Vec share = zeros(static_cast<int>(regrets.size()));
  double total = 0.0;
  for (std::size_t i = 0; i < regrets.size(); ++i) {
    share[i] = std::max(0.0, regrets[i]);
    total += share[i];
  }
  if (total <= 0.0) return uniform_point(static_cast<int>(regrets.size()));
  for (double& v : share) v /= total;
  return share;
}

SimplexAtom::SimplexAtom(int n) : Minimizer(n) {
  if (n < 1) throw DimensionError("simplex atom needs at least one coordinate");
}

BestResponse SimplexAtom::best_response(const Vec& g) const {
  if (static_cast<int>(g.size()) != dim())
    throw DimensionError("best_response: gradient dimension mismatch");
  int i = argmin(g);
  Vec v = zeros(dim());
  v[i] = 1.0;
  return {v, g[i]};
}

bool SimplexAtom::contains(const Vec& x, double tol) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  double s = 0.0;
  for (double v : x) {
    if (v < -tol) return false;
    s += v;
  }
  return std::fabs(s - 1.0) <= tol;
}

Vec SimplexAtom::instantaneous_regrets(const LinearLoss& loss) const {
  const Vec& x = last_decision();
  double incurred = loss.slope(x);
  Vec r = zeros(dim());
  for (int i = 0; i < dim(); ++i) r[i] = incurred - loss.gradient[i];
  return r;
}

RegretMatching::RegretMatching(int n) : SimplexAtom(n), regrets_(zeros(n)) {}

std::string RegretMatching::kind() const { return "rm"; }

Vec RegretMatching::compute_next() { return positive_share(regrets_); }

void RegretMatching::absorb(const LinearLoss& loss) {
  add_scaled(regrets_, 1.0, instantaneous_regrets(loss));
}

RegretMatchingPlus::RegretMatchingPlus(int n) : SimplexAtom(n), regrets_(zeros(n)) {}

std::string RegretMatchingPlus::kind() const { return "rm_plus"; }

Vec RegretMatchingPlus::compute_next() { return positive_share(regrets_); }

void RegretMatchingPlus::absorb(const LinearLoss& loss) {
  Vec r = instantaneous_regrets(loss);
  for (int i = 0; i < dim(); ++i) regrets_[i] = std::max(0.0, regrets_[i] + r[i]);
}

Hedge::Hedge(int n, std::optional<double> fixed_eta)
    : SimplexAtom(n), loss_sum_(zeros(n)), fixed_eta_(fixed_eta) {
  if (fixed_eta_ && *fixed_eta_ <= 0.0)
    throw ConfigError("hedge: step size must be positive");
}

std::string Hedge::kind() const { return "hedge"; }

double Hedge::step_size() const {
  if (fixed_eta_) return *fixed_eta_;
  long t = std::max<long>(1, round());
  return std::sqrt(std::log(static_cast<double>(dim())) / static_cast<double>(t));
}

Vec Hedge::compute_next() {
  if (round() == 0) return uniform_point(dim());
  double eta = step_size();
  // Shift by the smallest cumulative loss so every exponent is <= 0.
  double lo = *std::min_element(loss_sum_.begin(), loss_sum_.end());
  Vec w = zeros(dim());
  double total = 0.0;
  for (int i = 0; i < dim(); ++i) {
    w[i] = std::exp(-eta * (loss_sum_[i] - lo));
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

void Hedge::absorb(const LinearLoss& loss) { add_scaled(loss_sum_, 1.0, loss.gradient); }

Constant::Constant(Vec v) : Minimizer(static_cast<int>(v.size())), point_(std::move(v)) {
  if (point_.empty()) throw DimensionError("constant minimizer needs a nonempty point");
}

BestResponse Constant::best_response(const Vec& g) const {
  if (static_cast<int>(g.size()) != dim())
    throw DimensionError("best_response: gradient dimension mismatch");
  return {point_, dot(g, point_)};
}

bool Constant::contains(const Vec& x, double tol) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  return norm_inf(diff(x, point_)) <= tol;
}

std::string Constant::kind() const { return "constant"; }

Vec Constant::compute_next() { return point_; }

void Constant::absorb(const LinearLoss&) {}

std::unique_ptr<Minimizer> make_atom(AtomKind kind, int dim) {
  switch (kind) {
    case AtomKind::kRegretMatching:
      return std::make_unique<RegretMatching>(dim);
    case AtomKind::kRegretMatchingPlus:
      return std::make_unique<RegretMatchingPlus>(dim);
    case AtomKind::kHedge:
      return std::make_unique<Hedge>(dim);
  }
  throw ConfigError("unknown atom kind");
}

AtomKind parse_atom_kind(const std::string& name) {
  if (name == "rm") return AtomKind::kRegretMatching;
  if (name == "rm_plus") return AtomKind::kRegretMatchingPlus;
  if (name == "hedge") return AtomKind::kHedge;
  throw ConfigError("unknown atom '" + name + "' (expected rm, rm_plus, or hedge)");
}

std::string to_string(AtomKind kind) {
  switch (kind) {
    case AtomKind::kRegretMatching:
      return "rm";
    case AtomKind::kRegretMatchingPlus:
      return "rm_plus";
    case AtomKind::kHedge:
      return "hedge";
  }
  return "?";
}

}  // namespace regret
