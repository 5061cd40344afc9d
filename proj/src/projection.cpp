#include "regret/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace regret {

BregmanGeometry BregmanGeometry::euclidean() {
  BregmanGeometry g;
  g.value = [](const Vec& x) { return 0.5 * dot(x, x); };
  g.gradient = [](const Vec& x) { return x; };
  g.strong_convexity = 1.0;
  g.smoothness = 1.0;
  g.is_euclidean = true;
  return g;
}

BregmanGeometry BregmanGeometry::weighted_euclidean(Vec weights) {
  if (weights.empty()) throw DimensionError("weighted geometry needs at least one weight");
  double lo = weights[0], hi = weights[0];
  for (double w : weights) {
    if (w <= 0.0) throw ConfigError("weighted geometry: weights must be positive");
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  BregmanGeometry g;
  g.value = [weights](const Vec& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += 0.5 * weights[i] * x[i] * x[i];
    return s;
  };
  g.gradient = [weights](const Vec& x) {
    Vec r = x;
    for (std::size_t i = 0; i < x.size(); ++i) r[i] *= weights[i];
    return r;
  };
  g.strong_convexity = lo;
  g.smoothness = hi;
  g.is_euclidean = false;
  return g;
}

double BregmanGeometry::divergence(const Vec& y, const Vec& x) const {
  return value(y) - value(x) - dot(gradient(x), diff(y, x));
}

void BregmanGeometry::validate() const {
  if (!value || !gradient) throw ConfigError("geometry: value and gradient must be set");
  if (strong_convexity <= 0.0) throw ConfigError("geometry: strong convexity must be positive");
  if (smoothness < strong_convexity)
    throw ConfigError("geometry: smoothness must be at least the strong convexity");
}

Vec project_to_simplex(const Vec& v) {
  const int n = static_cast<int>(v.size());
  Vec sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double running = 0.0;
  double theta = 0.0;
  int support = 0;
  for (int k = 0; k < n; ++k) {
    running += sorted[k];
    double candidate = (running - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) {
      theta = candidate;
      support = k + 1;
    }
  }
  (void)support;
  Vec x = zeros(n);
  for (int i = 0; i < n; ++i) x[i] = std::max(0.0, v[i] - theta);
  return x;
}

BestResponse Region::min_linear(const Vec&) const {
  throw UnsupportedError("linear minimization not supported for region [" + name() + "]");
}

SimplexRegion::SimplexRegion(int n) : n_(n) {
  if (n < 1) throw DimensionError("simplex region needs at least one coordinate");
}

std::string SimplexRegion::name() const { return "simplex(" + std::to_string(n_) + ")"; }

bool SimplexRegion::contains(const Vec& x, double tol) const {
  if (static_cast<int>(x.size()) != n_) return false;
  double s = 0.0;
  for (double v : x) {
    if (v < -tol) return false;
    s += v;
  }
  return std::fabs(s - 1.0) <= tol;
}

Vec SimplexRegion::euclidean_project(const Vec& x, const ProjectOptions&) const {
  return project_to_simplex(x);
}

BestResponse SimplexRegion::min_linear(const Vec& g) const {
  int i = argmin(g);
  Vec v = zeros(n_);
  v[i] = 1.0;
  return {v, g[i]};
}

SimplexHalfspaceRegion::SimplexHalfspaceRegion(int n, Halfspace h)
    : n_(n), halfspace_(std::move(h)) {
  if (static_cast<int>(halfspace_.normal.size()) != n)
    throw DimensionError("halfspace normal dimension mismatch");
  double lo = halfspace_.normal[0];
  for (double a : halfspace_.normal) lo = std::min(lo, a);
  if (lo > halfspace_.bound)
    throw InfeasibleError("simplex/halfspace intersection is empty: min vertex value " +
                          std::to_string(lo) + " exceeds bound " +
                          std::to_string(halfspace_.bound));
}

std::string SimplexHalfspaceRegion::name() const {
  return "simplex(" + std::to_string(n_) + ")&halfspace";
}

bool SimplexHalfspaceRegion::contains(const Vec& x, double tol) const {
  if (static_cast<int>(x.size()) != n_) return false;
  double s = 0.0;
  for (double v : x) {
    if (v < -tol) return false;
    s += v;
  }
  if (std::fabs(s - 1.0) > tol) return false;
  return halfspace_.violation(x) <= tol;
}

Vec SimplexHalfspaceRegion::euclidean_project(const Vec& x, const ProjectOptions&) const {
  Vec p = project_to_simplex(x);
  if (halfspace_.violation(p) <= 0.0) return p;
  // Dualize the halfspace: project v - mu * a onto the simplex and drive the
  // constraint value to the bound by bisection on mu >= 0.
  const Vec& a = halfspace_.normal;
  auto shifted = [&](double mu) { return project_to_simplex(diff(x, scaled(a, mu))); };
  double hi = 1.0;
  int doublings = 0;
  while (halfspace_.violation(shifted(hi)) > 0.0) {
    hi *= 2.0;
    if (++doublings > 120) break;  // constraint face reached only in the limit
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (halfspace_.violation(shifted(mid)) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return shifted(hi);
}

BestResponse SimplexHalfspaceRegion::min_linear(const Vec& g) const {
  if (static_cast<int>(g.size()) != n_)
    throw DimensionError("min_linear: gradient dimension mismatch");
  const Vec& a = halfspace_.normal;
  const double c = halfspace_.bound;
  bool found = false;
  Vec best;
  double best_value = 0.0;
  auto consider = [&](const Vec& x, double value) {
    if (!found || value < best_value) {
      best = x;
      best_value = value;
      found = true;
    }
  };
  // Vertices of the cut simplex: original vertices that satisfy the
  // halfspace, plus edge points where the constraint becomes tight.
  for (int i = 0; i < n_; ++i) {
    if (a[i] <= c) {
      Vec v = zeros(n_);
      v[i] = 1.0;
      consider(v, g[i]);
    }
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      double di = a[i] - c, dj = a[j] - c;
      if ((di > 0.0 && dj < 0.0) || (di < 0.0 && dj > 0.0)) {
        double t = (c - a[j]) / (a[i] - a[j]);
        Vec v = zeros(n_);
        v[i] = t;
        v[j] = 1.0 - t;
        consider(v, t * g[i] + (1.0 - t) * g[j]);
      }
    }
  }
  if (!found) throw InfeasibleError("simplex/halfspace region has no vertices");
  return {best, best_value};
}

PolyhedralRegion::PolyhedralRegion(int dim, std::optional<std::pair<Matrix, Vec>> affine,
                                   bool nonnegative, std::vector<Halfspace> halfspaces,
                                   Vec feasible_witness, std::string name)
    : dim_(dim),
      affine_(std::move(affine)),
      nonnegative_(nonnegative),
      halfspaces_(std::move(halfspaces)),
      name_(std::move(name)) {
  if (affine_) {
    const Matrix& e = affine_->first;
    if (e.cols != dim_) throw DimensionError("polyhedron: affine matrix column mismatch");
    if (static_cast<int>(affine_->second.size()) != e.rows)
      throw DimensionError("polyhedron: affine rhs length mismatch");
    Matrix gram(e.rows, e.rows);
    for (int i = 0; i < e.rows; ++i)
      for (int j = 0; j < e.rows; ++j) {
        double s = 0.0;
        for (int k = 0; k < e.cols; ++k) s += e.at(i, k) * e.at(j, k);
        gram.at(i, j) = s;
      }
    affine_chol_ = cholesky(gram);
  }
  for (const Halfspace& h : halfspaces_)
    if (static_cast<int>(h.normal.size()) != dim_)
      throw DimensionError("polyhedron: halfspace normal dimension mismatch");
  if (!contains(feasible_witness, 1e-6))
    throw InfeasibleError("polyhedron: feasibility witness violates the constraints");
}

bool PolyhedralRegion::contains(const Vec& x, double tol) const {
  if (static_cast<int>(x.size()) != dim_) return false;
  return feasibility_residual(x) <= tol;
}

double PolyhedralRegion::feasibility_residual(const Vec& x) const {
  double r = 0.0;
  if (affine_) {
    Vec ax = affine_->first.apply(x);
    for (int i = 0; i < affine_->first.rows; ++i)
      r = std::max(r, std::fabs(ax[i] - affine_->second[i]));
  }
  if (nonnegative_)
    for (double v : x) r = std::max(r, -v);
  for (const Halfspace& h : halfspaces_) r = std::max(r, h.violation(x));
  return r;
}

Vec PolyhedralRegion::project_affine(const Vec& x) const {
  const Matrix& e = affine_->first;
  Vec residual = e.apply(x);
  add_scaled(residual, -1.0, affine_->second);
  Vec lambda = cholesky_solve(affine_chol_, residual);
  Vec out = x;
  add_scaled(out, -1.0, e.apply_transposed(lambda));
  return out;
}

Vec PolyhedralRegion::euclidean_project(const Vec& x, const ProjectOptions& opts) const {
  // Dykstra's alternating projections with one correction per component set.
  const int sets = (affine_ ? 1 : 0) + (nonnegative_ ? 1 : 0) +
                   static_cast<int>(halfspaces_.size());
  std::vector<Vec> corrections(static_cast<std::size_t>(sets), zeros(dim_));
  Vec current = x;
  double residual = feasibility_residual(current);
  for (long cycle = 0; cycle < opts.max_iters; ++cycle) {
    Vec before_cycle = current;
    int set_index = 0;
    auto apply_set = [&](const std::function<Vec(const Vec&)>& proj) {
      Vec shifted = sum(current, corrections[set_index]);
      Vec projected = proj(shifted);
      corrections[set_index] = diff(shifted, projected);
      current = std::move(projected);
      ++set_index;
    };
    if (affine_) apply_set([&](const Vec& v) { return project_affine(v); });
    if (nonnegative_)
      apply_set([&](const Vec& v) {
        Vec r = v;
        for (double& t : r) t = std::max(0.0, t);
        return r;
      });
    for (const Halfspace& h : halfspaces_)
      apply_set([&](const Vec& v) {
        double viol = h.violation(v);
        if (viol <= 0.0) return v;
        Vec r = v;
        add_scaled(r, -viol / dot(h.normal, h.normal), h.normal);
        return r;
      });
    residual = feasibility_residual(current);
    double moved = norm_inf(diff(current, before_cycle));
    if (residual <= opts.tol && moved <= 1e-12) return current;
  }
  throw ConvergenceError("polyhedral projection did not converge within " +
                             std::to_string(opts.max_iters) + " cycles (residual " +
                             std::to_string(residual) + ")",
                         residual);
}

BestResponse PolyhedralRegion::min_linear(const Vec& g) const {
  if (!linear_oracle_) return Region::min_linear(g);
  return linear_oracle_(g);
}

void PolyhedralRegion::set_linear_oracle(std::function<BestResponse(const Vec&)> oracle) {
  linear_oracle_ = std::move(oracle);
}

Vec bregman_project(const Region& region, const Vec& x, const BregmanGeometry& geometry,
                    const ProjectOptions& opts) {
  geometry.validate();
  if (static_cast<int>(x.size()) != region.dim())
    throw DimensionError("bregman_project: point dimension mismatch");
  if (geometry.is_euclidean) return region.euclidean_project(x, opts);
  // Projected gradient descent on y -> Divergence(y, x), which is
  // smoothness-smooth and strongly convex, so the iteration contracts.
  const double step = 1.0 / geometry.smoothness;
  Vec anchor_grad = geometry.gradient(x);
  Vec y = region.euclidean_project(x, opts);
  double residual = 0.0;
  for (long it = 0; it < opts.max_iters; ++it) {
    Vec grad = diff(geometry.gradient(y), anchor_grad);
    Vec target = y;
    add_scaled(target, -step, grad);
    Vec y_next = region.euclidean_project(target, opts);
    residual = norm_inf(diff(y_next, y)) / step;
    y = std::move(y_next);
    if (residual <= opts.tol) return y;
  }
  throw ConvergenceError("bregman projection did not reach tolerance " +
                             std::to_string(opts.tol) + " (residual " +
                             std::to_string(residual) + ")",
                         residual);
}

BestResponse constrained_min_linear(const std::function<BestResponse(const Vec&)>& base_oracle,
                                    const Halfspace& h, const Vec& g) {
  BestResponse unconstrained = base_oracle(g);
  if (h.violation(unconstrained.decision) <= 0.0) return unconstrained;
  auto at = [&](double mu) {
    Vec shifted = g;
    add_scaled(shifted, mu, h.normal);
    return base_oracle(shifted);
  };
  double hi = 1.0;
  int doublings = 0;
  while (h.violation(at(hi).decision) > 0.0) {
    hi *= 2.0;
    if (++doublings > 120)
      throw ConvergenceError("constrained linear minimization: no feasible multiplier found",
                             h.violation(at(hi).decision));
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (h.violation(at(mid).decision) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  Vec x_lo = at(lo).decision;
  Vec x_hi = at(hi).decision;
  double v_lo = h.violation(x_lo);
  double v_hi = h.violation(x_hi);
  if (v_lo <= 0.0) return {x_lo, dot(g, x_lo)};
  // Blend the two endpoint minimizers onto the constraint face; the blend
  // stays in the base set and is optimal up to the bisection window.
  double theta = v_lo / (v_lo - v_hi);
  Vec blend = scaled(x_lo, 1.0 - theta);
  add_scaled(blend, theta, x_hi);
  return {blend, dot(g, blend)};
}

}  // namespace regret
