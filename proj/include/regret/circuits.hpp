// Combinators that turn regret minimizers for simpler sets into a regret
// minimizer for a composite set: Cartesian product, affine image, Minkowski
// sum, convex hull, V-polytope, and expert mixing.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "regret/linalg.hpp"
#include "regret/minimizer.hpp"

namespace regret {

// x -> matrix * x + offset.
struct AffineMap {
  Matrix matrix;
  Vec offset;

  AffineMap() = default;
  AffineMap(Matrix m, Vec b);

  int domain_dim() const { return matrix.cols; }
  int range_dim() const { return matrix.rows; }
  Vec apply(const Vec& x) const;
  // (g, c) composed with the map: (M^T g, c + <g, offset>).
  LinearLoss pullback(const LinearLoss& loss) const;
};

// Product set X1 x ... x Xk: losses split by coordinate blocks, decisions
// concatenate, and the regrets add up exactly.
class CartesianProduct final : public Minimizer {
 public:
  explicit CartesianProduct(std::vector<std::unique_ptr<Minimizer>> children);
  CartesianProduct(std::unique_ptr<Minimizer> x, std::unique_ptr<Minimizer> y);

  int child_count() const { return static_cast<int>(children_.size()); }
  int child_offset(int i) const { return offsets_[i]; }

  BestResponse best_response(const Vec& g) const override;
  bool contains(const Vec& x, double tol) const override;
  std::string kind() const override;
  void describe(std::ostream& os, int indent) const override;

 protected:
  Vec compute_next() override;
  void absorb(const LinearLoss& loss) override;

 private:
  static int total_dim(const std::vector<std::unique_ptr<Minimizer>>& children);
  std::vector<std::unique_ptr<Minimizer>> children_;
  std::vector<int> offsets_;
};

// Image T(X) of the inner set under an affine map: incoming losses are
// pulled back to their linear part (the constant is dropped), decisions are
// pushed forward through the map.
class AffineImage final : public Minimizer {
 public:
  AffineImage(std::unique_ptr<Minimizer> inner, AffineMap map);

  BestResponse best_response(const Vec& g) const override;
  std::string kind() const override;
  void describe(std::ostream& os, int indent) const override;

 protected:
  Vec compute_next() override;
  void absorb(const LinearLoss& loss) override;

 private:
  std::unique_ptr<Minimizer> inner_;
  AffineMap map_;
};

// X + Y as the image of X x Y under (x, y) -> x + y; both summands observe
// the incoming gradient unchanged.
std::unique_ptr<Minimizer> minkowski_sum(std::unique_ptr<Minimizer> x,
                                         std::unique_ptr<Minimizer> y);

// Convex hull of k >= 2 sets of equal ambient dimension. Children all
// observe the incoming loss; a simplex mixer observes the loss vector of
// the children's same-round decisions and weights them.
class ConvexHull final : public Minimizer {
 public:
  ConvexHull(std::vector<std::unique_ptr<Minimizer>> children,
             std::unique_ptr<Minimizer> mixer);

  BestResponse best_response(const Vec& g) const override;
  std::string kind() const override;
  void describe(std::ostream& os, int indent) const override;

 protected:
  Vec compute_next() override;
  void absorb(const LinearLoss& loss) override;

 private:
  std::vector<std::unique_ptr<Minimizer>> children_;
  std::unique_ptr<Minimizer> mixer_;
  std::vector<Vec> round_decisions_;
  Vec round_weights_;
};

// co{v_1, ..., v_n}: a simplex mixer weighting fixed vertices. Equivalent
// to a convex hull over constant minimizers, with n = 1 allowed.
class VPolytope final : public Minimizer {
 public:
  VPolytope(std::vector<Vec> vertices, std::unique_ptr<Minimizer> mixer);

  const std::vector<Vec>& vertices() const { return vertices_; }

  BestResponse best_response(const Vec& g) const override;
  std::string kind() const override;
  void describe(std::ostream& os, int indent) const override;

 protected:
  Vec compute_next() override;
  void absorb(const LinearLoss& loss) override;

 private:
  std::vector<Vec> vertices_;
  std::unique_ptr<Minimizer> mixer_;
  Vec round_weights_;
};

// Weights independent experts that each face their own loss stream; the
// combiner's loss is the weighted average of the experts' losses. Unlike
// the convex hull, the experts need not share an ambient space.
class ExpertsCombiner {
 public:
  ExpertsCombiner(std::vector<std::unique_ptr<Minimizer>> experts,
                  std::unique_ptr<Minimizer> mixer);

  struct Round {
    Vec weights;
    std::vector<Vec> recommendations;
  };

  int expert_count() const { return static_cast<int>(experts_.size()); }
  long rounds() const { return rounds_; }

  Round next();
  // Exactly one loss per expert, in expert order.
  void observe(const std::vector<LinearLoss>& losses);

  double combined_incurred() const { return combined_incurred_; }
  // Combined regret against the best fixed (expert, decision) pair.
  double combined_regret() const;
  double mixer_regret() const;
  double expert_regret(int i) const;
  const Vec& last_weights() const { return round_.weights; }

 private:
  struct StreamStats {
    Vec gradient_sum;
    double offset_sum = 0.0;
    double incurred = 0.0;
  };

  std::vector<std::unique_ptr<Minimizer>> experts_;
  std::unique_ptr<Minimizer> mixer_;
  std::vector<StreamStats> expert_stats_;
  StreamStats mixer_stats_;
  Round round_;
  bool pending_ = false;
  long rounds_ = 0;
  double combined_incurred_ = 0.0;
};

}  // namespace regret
