// Sequence-form strategy spaces built inductively from convex hulls
// (decision points) and Cartesian products (observation points), plus the
// CFR instantiation, the exact best-response oracle, and averaging.
#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "regret/linalg.hpp"
#include "regret/minimizer.hpp"

namespace regret {

// One node of a treeplex description. An infoset node owns one child
// treeplex per action (absent for leaf actions) and occupies a coordinate
// block laid out as [action indices..., child blocks in action order]; an
// observation node is the Cartesian product of its children.
class TreeplexNode {
 public:
  enum class Kind { kInfoset, kObservation };

  static std::unique_ptr<TreeplexNode> infoset(
      std::string id, std::vector<std::string> actions,
      std::vector<std::unique_ptr<TreeplexNode>> children);
  static std::unique_ptr<TreeplexNode> observation(
      std::vector<std::unique_ptr<TreeplexNode>> children, std::string id = "");

  Kind kind() const { return kind_; }
  const std::string& id() const { return id_; }
  int dim() const { return dim_; }
  int child_count() const { return static_cast<int>(children_.size()); }
  const TreeplexNode* child(int i) const { return children_[static_cast<std::size_t>(i)].get(); }
  const std::vector<std::string>& actions() const { return actions_; }
  // Offset of child i's coordinate block within this node's block.
  int child_offset(int i) const { return child_offsets_[static_cast<std::size_t>(i)]; }

 private:
  TreeplexNode() = default;
  Kind kind_ = Kind::kObservation;
  std::string id_;
  std::vector<std::string> actions_;
  std::vector<std::unique_ptr<TreeplexNode>> children_;
  std::vector<int> child_offsets_;
  int dim_ = 0;
};

// Supplies the simplex minimizer used at a decision point.
using AtomFactory =
    std::function<std::unique_ptr<Minimizer>(const std::string& infoset_id, int action_count)>;

// Composes Cartesian-product and convex-hull circuits along the node
// structure; the per-infoset mixers then observe exactly the counterfactual
// losses, which is the CFR construction.
std::unique_ptr<Minimizer> make_cfr_minimizer(const TreeplexNode& root,
                                              const AtomFactory& factory);

// Exact best response by bottom-up dynamic programming; ties are broken
// toward the lowest action index.
BestResponse treeplex_best_response(const TreeplexNode& root, const Vec& cumulative_gradient);

// Flow conservation: every decision point's action block sums to its parent
// sequence's value, all coordinates nonnegative.
bool is_sequence_form(const TreeplexNode& root, const Vec& x, double tol = kFeasibilityTol);

// Sequence form of the uniform behavioral strategy.
Vec uniform_strategy(const TreeplexNode& root);

// Uniform average of sequence-form decisions; feasible by convexity.
Vec average_strategy(const std::vector<Vec>& decisions);
Vec average_strategy(const Ledger& ledger);

// Sequence-form constraints E x = e of the treeplex (one row per decision
// point), for use by polyhedral projections.
std::pair<Matrix, Vec> sequence_constraints(const TreeplexNode& root);

// Plain-text recursive description, one node per line:
//   observation <id> <child-id>...
//   infoset <id> <action>[=<child-id>]...
// The first node is the root; every other node must be referenced exactly
// once. '#' starts a comment.
std::unique_ptr<TreeplexNode> load_treeplex(std::istream& in, const std::string& source_name);
std::unique_ptr<TreeplexNode> load_treeplex_file(const std::string& path);

}  // namespace regret
