// Generalized (Bregman) projections and the feasible-region descriptions
// used by the intersection circuit: simplex, simplex-with-halfspace, and
// general polyhedra handled by Dykstra's alternating projections.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "regret/linalg.hpp"
#include "regret/minimizer.hpp"

namespace regret {

// Distance-generating function with its gradient and curvature constants.
// Divergence(y, x) = d(y) - d(x) - <grad d(x), y - x>.
struct BregmanGeometry {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  double strong_convexity = 1.0;  // mu
  double smoothness = 1.0;        // must be >= mu
  bool is_euclidean = false;

  // d(x) = ||x||^2 / 2, mu = smoothness = 1; divergence is the half squared
  // Euclidean distance and closed-form projections apply.
  static BregmanGeometry euclidean();
  // d(x) = sum_i w_i x_i^2 / 2 with w > 0; mu = min w, smoothness = max w.
  static BregmanGeometry weighted_euclidean(Vec weights);

  double divergence(const Vec& y, const Vec& x) const;
  void validate() const;
};

// Euclidean projection onto the probability simplex (sort-based).
Vec project_to_simplex(const Vec& v);

struct Halfspace {
  Vec normal;
  double bound = 0.0;  // <normal, x> <= bound
  double violation(const Vec& x) const { return dot(normal, x) - bound; }
};

struct ProjectOptions {
  double tol = 1e-9;
  long max_iters = 100000;
};

// A closed convex feasible region. Euclidean projection is always
// available; an exact linear-minimization oracle is optional.
class Region {
 public:
  virtual ~Region() = default;
  virtual int dim() const = 0;
  virtual std::string name() const = 0;
  virtual bool contains(const Vec& x, double tol = kFeasibilityTol) const = 0;
  virtual Vec euclidean_project(const Vec& x, const ProjectOptions& opts = {}) const = 0;
  // Exact min of <g, x> over the region; unsupported by default.
  virtual BestResponse min_linear(const Vec& g) const;
};

class SimplexRegion final : public Region {
 public:
  explicit SimplexRegion(int n);
  int dim() const override { return n_; }
  std::string name() const override;
  bool contains(const Vec& x, double tol) const override;
  Vec euclidean_project(const Vec& x, const ProjectOptions& opts) const override;
  BestResponse min_linear(const Vec& g) const override;

 private:
  int n_;
};

// Simplex intersected with one halfspace. Projection composes the simplex
// projection with a bisection on the halfspace multiplier; the linear
// oracle enumerates the vertices of the cut simplex exactly.
class SimplexHalfspaceRegion final : public Region {
 public:
  SimplexHalfspaceRegion(int n, Halfspace h);  // throws InfeasibleError when empty
  int dim() const override { return n_; }
  std::string name() const override;
  bool contains(const Vec& x, double tol) const override;
  Vec euclidean_project(const Vec& x, const ProjectOptions& opts) const override;
  BestResponse min_linear(const Vec& g) const override;
  const Halfspace& halfspace() const { return halfspace_; }

 private:
  int n_;
  Halfspace halfspace_;
};

// {x : E x = e, x >= 0 (optional), plus halfspaces}. Euclidean projection
// runs Dykstra's alternating projections over the component sets, each of
// which projects in closed form. Construction requires a feasible witness.
class PolyhedralRegion final : public Region {
 public:
  PolyhedralRegion(int dim, std::optional<std::pair<Matrix, Vec>> affine, bool nonnegative,
                   std::vector<Halfspace> halfspaces, Vec feasible_witness,
                   std::string name = "polyhedron");

  int dim() const override { return dim_; }
  std::string name() const override { return name_; }
  bool contains(const Vec& x, double tol) const override;
  Vec euclidean_project(const Vec& x, const ProjectOptions& opts) const override;
  BestResponse min_linear(const Vec& g) const override;

  // Supplies the exact linear oracle (problem-specific).
  void set_linear_oracle(std::function<BestResponse(const Vec&)> oracle);

 private:
  Vec project_affine(const Vec& x) const;
  double feasibility_residual(const Vec& x) const;

  int dim_;
  std::optional<std::pair<Matrix, Vec>> affine_;
  Matrix affine_chol_;  // factor of E E^T
  bool nonnegative_;
  std::vector<Halfspace> halfspaces_;
  std::string name_;
  std::function<BestResponse(const Vec&)> linear_oracle_;
};

// argmin over the region of Divergence(y, x). Euclidean geometry uses the
// region's closed-form projection; other geometries run projected gradient
// descent on the divergence, which is smooth and strongly convex.
Vec bregman_project(const Region& region, const Vec& x, const BregmanGeometry& geometry,
                    const ProjectOptions& opts = {});

// Exact min of <g, x> over {x in base set : <a, x> <= c}, given an exact
// linear oracle for the base set. Solves the one-dimensional Lagrangian
// dual by bisection on the halfspace multiplier and recovers a feasible
// primal point on the constraint face.
BestResponse constrained_min_linear(const std::function<BestResponse(const Vec&)>& base_oracle,
                                    const Halfspace& h, const Vec& g);

}  // namespace regret
