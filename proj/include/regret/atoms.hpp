// Atomic regret minimizers over the probability simplex, used as leaves and
// mixers in every circuit.
#pragma once

#include <memory>
#include <optional>
#include <string>

#include "regret/minimizer.hpp"

namespace regret {

// Positive parts of the regret vector normalized to the simplex; uniform
// when no entry is positive.
Vec positive_share(const Vec& regrets);

// Common simplex plumbing: membership and the vertex best response.
class SimplexAtom : public Minimizer {
 public:
  BestResponse best_response(const Vec& g) const override;
  bool contains(const Vec& x, double tol) const override;

 protected:
  explicit SimplexAtom(int n);
  // Per-coordinate instantaneous regret <g, x> - g_i of the last decision.
  Vec instantaneous_regrets(const LinearLoss& loss) const;
};

class RegretMatching final : public SimplexAtom {
 public:
  explicit RegretMatching(int n);
  const Vec& cumulative_regrets() const { return regrets_; }
  std::string kind() const override;

 protected:
  Vec compute_next() override;
  void absorb(const LinearLoss& loss) override;

 private:
  Vec regrets_;
};

// Clipped accumulation: the regret vector is floored at zero after every
// update, so stale negative regret never has to be paid back.
class RegretMatchingPlus final : public SimplexAtom {
 public:
  explicit RegretMatchingPlus(int n);
  const Vec& cumulative_regrets() const { return regrets_; }
  std::string kind() const override;

 protected:
  Vec compute_next() override;
  void absorb(const LinearLoss& loss) override;

 private:
  Vec regrets_;
};

// Exponential weights over the cumulative loss vector. The default step
// size is the anytime schedule eta_t = sqrt(log(n) / t); a fixed eta can be
// supplied instead.
class Hedge final : public SimplexAtom {
 public:
  explicit Hedge(int n, std::optional<double> fixed_eta = std::nullopt);
  const Vec& cumulative_loss() const { return loss_sum_; }
  std::string kind() const override;

 protected:
  Vec compute_next() override;
  void absorb(const LinearLoss& loss) override;

 private:
  double step_size() const;
  Vec loss_sum_;
  std::optional<double> fixed_eta_;
};

// Singleton set {v}: always plays v, regret is identically zero.
class Constant final : public Minimizer {
 public:
  explicit Constant(Vec v);
  const Vec& point() const { return point_; }

  BestResponse best_response(const Vec& g) const override;
  bool contains(const Vec& x, double tol) const override;
  std::string kind() const override;

 protected:
  Vec compute_next() override;
  void absorb(const LinearLoss& loss) override;

 private:
  Vec point_;
};

enum class AtomKind { kRegretMatching, kRegretMatchingPlus, kHedge };

std::unique_ptr<Minimizer> make_atom(AtomKind kind, int dim);
AtomKind parse_atom_kind(const std::string& name);  // "rm" | "rm_plus" | "hedge"
std::string to_string(AtomKind kind);

}  // namespace regret
