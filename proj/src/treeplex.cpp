#include "regret/treeplex.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "regret/atoms.hpp"
#include "regret/circuits.hpp"

namespace regret {

std::unique_ptr<TreeplexNode> TreeplexNode::infoset(
    std::string id, std::vector<std::string> actions,
    std::vector<std::unique_ptr<TreeplexNode>> children) {
  if (actions.empty()) throw ConfigError("infoset '" + id + "' needs at least one action");
  if (children.size() != actions.size())
    throw ConfigError("infoset '" + id + "' needs one child slot per action");
  std::set<std::string> seen;
  for (const auto& a : actions)
    if (!seen.insert(a).second)
      throw ConfigError("infoset '" + id + "' has duplicate action '" + a + "'");
  auto node = std::unique_ptr<TreeplexNode>(new TreeplexNode());
  node->kind_ = Kind::kInfoset;
  node->id_ = std::move(id);
  node->actions_ = std::move(actions);
  node->children_ = std::move(children);
  int offset = static_cast<int>(node->actions_.size());
  for (const auto& c : node->children_) {
    node->child_offsets_.push_back(offset);
    offset += c ? c->dim() : 0;
  }
  node->dim_ = offset;
  return node;
}

std::unique_ptr<TreeplexNode> TreeplexNode::observation(
    std::vector<std::unique_ptr<TreeplexNode>> children, std::string id) {
  if (children.empty())
    throw ConfigError("observation node" + (id.empty() ? "" : " '" + id + "'") +
                      " needs at least one child");
  for (const auto& c : children)
    if (!c) throw ConfigError("observation node children must be treeplexes");
  auto node = std::unique_ptr<TreeplexNode>(new TreeplexNode());
  node->kind_ = Kind::kObservation;
  node->id_ = std::move(id);
  node->children_ = std::move(children);
  int offset = 0;
  for (const auto& c : node->children_) {
    node->child_offsets_.push_back(offset);
    offset += c->dim();
  }
  node->dim_ = offset;
  return node;
}

namespace {

// Embeds a child treeplex under one action of its decision point: the
// embedded decision carries a 1 at the action index and the child decision
// in the child's block.
class SequenceEmbedding final : public Minimizer {
 public:
  SequenceEmbedding(std::unique_ptr<Minimizer> inner, int total_dim, int action_index,
                    int block_offset)
      : Minimizer(total_dim),
        inner_(std::move(inner)),
        action_index_(action_index),
        block_offset_(block_offset) {}

  BestResponse best_response(const Vec& g) const override {
    BestResponse r = inner_->best_response(slice(g, block_offset_, inner_->dim()));
    Vec x = zeros(dim());
    x[action_index_] = 1.0;
    std::copy(r.decision.begin(), r.decision.end(), x.begin() + block_offset_);
    return {x, g[action_index_] + r.value};
  }

  std::string kind() const override { return "seq_embed"; }

  void describe(std::ostream& os, int indent) const override {
    Minimizer::describe(os, indent);
    inner_->describe(os, indent + 1);
  }

 protected:
  Vec compute_next() override {
    Vec x = zeros(dim());
    x[action_index_] = 1.0;
    Vec part = inner_->next();
    std::copy(part.begin(), part.end(), x.begin() + block_offset_);
    return x;
  }

  void absorb(const LinearLoss& loss) override {
    inner_->observe(LinearLoss(slice(loss.gradient, block_offset_, inner_->dim()), 0.0));
  }

 private:
  std::unique_ptr<Minimizer> inner_;
  int action_index_;
  int block_offset_;
};

Vec basis_vector(int n, int i) {
  Vec v = zeros(n);
  v[i] = 1.0;
  return v;
}

}  // namespace

std::unique_ptr<Minimizer> make_cfr_minimizer(const TreeplexNode& node,
                                              const AtomFactory& factory) {
  if (node.kind() == TreeplexNode::Kind::kObservation) {
    std::vector<std::unique_ptr<Minimizer>> parts;
    for (int i = 0; i < node.child_count(); ++i)
      parts.push_back(make_cfr_minimizer(*node.child(i), factory));
    return std::make_unique<CartesianProduct>(std::move(parts));
  }
  const int action_count = static_cast<int>(node.actions().size());
  std::vector<std::unique_ptr<Minimizer>> embedded;
  for (int i = 0; i < action_count; ++i) {
    if (node.child(i)) {
      embedded.push_back(std::make_unique<SequenceEmbedding>(
          make_cfr_minimizer(*node.child(i), factory), node.dim(), i, node.child_offset(i)));
    } else {
      embedded.push_back(std::make_unique<Constant>(basis_vector(node.dim(), i)));
    }
  }
  if (action_count == 1) return std::move(embedded.front());
  auto mixer = factory(node.id(), action_count);
  if (!mixer || mixer->dim() != action_count)
    throw ConfigError("atom factory must supply a simplex minimizer over the action count");
  return std::make_unique<ConvexHull>(std::move(embedded), std::move(mixer));
}

namespace {

BestResponse best_response_rec(const TreeplexNode& node, const Vec& g) {
  if (node.kind() == TreeplexNode::Kind::kObservation) {
    Vec x = zeros(node.dim());
    double value = 0.0;
    for (int i = 0; i < node.child_count(); ++i) {
      BestResponse part = best_response_rec(
          *node.child(i), slice(g, node.child_offset(i), node.child(i)->dim()));
      std::copy(part.decision.begin(), part.decision.end(), x.begin() + node.child_offset(i));
      value += part.value;
    }
    return {x, value};
  }
  const int action_count = static_cast<int>(node.actions().size());
  int best = -1;
  double best_value = 0.0;
  std::vector<BestResponse> child_best(static_cast<std::size_t>(action_count));
  for (int i = 0; i < action_count; ++i) {
    double v = g[i];
    if (node.child(i)) {
      child_best[static_cast<std::size_t>(i)] = best_response_rec(
          *node.child(i), slice(g, node.child_offset(i), node.child(i)->dim()));
      v += child_best[static_cast<std::size_t>(i)].value;
    }
    if (best < 0 || v < best_value) {
      best = i;
      best_value = v;
    }
  }
  Vec x = zeros(node.dim());
  x[best] = 1.0;
  if (node.child(best)) {
    const Vec& sub = child_best[static_cast<std::size_t>(best)].decision;
    std::copy(sub.begin(), sub.end(), x.begin() + node.child_offset(best));
  }
  return {x, best_value};
}

bool flow_rec(const TreeplexNode& node, const Vec& x, int offset, double parent_mass,
              double tol) {
  if (node.kind() == TreeplexNode::Kind::kObservation) {
    for (int i = 0; i < node.child_count(); ++i)
      if (!flow_rec(*node.child(i), x, offset + node.child_offset(i), parent_mass, tol))
        return false;
    return true;
  }
  const int action_count = static_cast<int>(node.actions().size());
  double mass = 0.0;
  for (int i = 0; i < action_count; ++i) {
    double p = x[offset + i];
    if (p < -tol) return false;
    mass += p;
  }
  if (std::fabs(mass - parent_mass) > tol) return false;
  for (int i = 0; i < action_count; ++i)
    if (node.child(i) &&
        !flow_rec(*node.child(i), x, offset + node.child_offset(i), x[offset + i], tol))
      return false;
  return true;
}

void uniform_rec(const TreeplexNode& node, Vec& x, int offset, double mass) {
  if (node.kind() == TreeplexNode::Kind::kObservation) {
    for (int i = 0; i < node.child_count(); ++i)
      uniform_rec(*node.child(i), x, offset + node.child_offset(i), mass);
    return;
  }
  const int action_count = static_cast<int>(node.actions().size());
  double share = mass / static_cast<double>(action_count);
  for (int i = 0; i < action_count; ++i) {
    x[offset + i] = share;
    if (node.child(i)) uniform_rec(*node.child(i), x, offset + node.child_offset(i), share);
  }
}

struct ConstraintRow {
  std::vector<std::pair<int, double>> coefficients;
  double rhs = 0.0;
};

void constraints_rec(const TreeplexNode& node, int offset, int parent_coordinate,
                     std::vector<ConstraintRow>& rows) {
  if (node.kind() == TreeplexNode::Kind::kObservation) {
    for (int i = 0; i < node.child_count(); ++i)
      constraints_rec(*node.child(i), offset + node.child_offset(i), parent_coordinate, rows);
    return;
  }
  ConstraintRow row;
  const int action_count = static_cast<int>(node.actions().size());
  for (int i = 0; i < action_count; ++i) row.coefficients.emplace_back(offset + i, 1.0);
  if (parent_coordinate >= 0)
    row.coefficients.emplace_back(parent_coordinate, -1.0);
  else
    row.rhs = 1.0;
  rows.push_back(std::move(row));
  for (int i = 0; i < action_count; ++i)
    if (node.child(i))
      constraints_rec(*node.child(i), offset + node.child_offset(i), offset + i, rows);
}

}  // namespace

BestResponse treeplex_best_response(const TreeplexNode& root, const Vec& cumulative_gradient) {
  if (static_cast<int>(cumulative_gradient.size()) != root.dim())
    throw DimensionError("treeplex best response: gradient dimension mismatch");
  return best_response_rec(root, cumulative_gradient);
}

bool is_sequence_form(const TreeplexNode& root, const Vec& x, double tol) {
  if (static_cast<int>(x.size()) != root.dim()) return false;
  return flow_rec(root, x, 0, 1.0, tol);
}

Vec uniform_strategy(const TreeplexNode& root) {
  Vec x = zeros(root.dim());
  uniform_rec(root, x, 0, 1.0);
  return x;
}

Vec average_strategy(const std::vector<Vec>& decisions) {
  if (decisions.empty()) throw Error("average_strategy: no decisions to average");
  Vec avg = zeros(static_cast<int>(decisions.front().size()));
  for (const Vec& x : decisions) add_scaled(avg, 1.0, x);
  return scaled(avg, 1.0 / static_cast<double>(decisions.size()));
}

Vec average_strategy(const Ledger& ledger) { return average_strategy(ledger.decisions()); }

std::pair<Matrix, Vec> sequence_constraints(const TreeplexNode& root) {
  std::vector<ConstraintRow> rows;
  constraints_rec(root, 0, -1, rows);
  Matrix e(static_cast<int>(rows.size()), root.dim());
  Vec rhs = zeros(static_cast<int>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [col, coeff] : rows[r].coefficients)
      e.at(static_cast<int>(r), col) = coeff;
    rhs[r] = rows[r].rhs;
  }
  return {std::move(e), std::move(rhs)};
}

namespace {

struct ParsedLine {
  std::string kind;
  std::vector<std::string> args;  // loader tokens after the id
  int line_number = 0;
  bool used = false;
};

std::unique_ptr<TreeplexNode> build_from_map(const std::string& id,
                                             std::map<std::string, ParsedLine>& nodes,
                                             std::set<std::string>& in_progress,
                                             const std::string& source) {
  auto it = nodes.find(id);
  if (it == nodes.end()) throw ConfigError(source + ": unknown node id '" + id + "'");
  ParsedLine& line = it->second;
  if (in_progress.count(id))
    throw ConfigError(source + ":" + std::to_string(line.line_number) +
                      ": node '" + id + "' is part of a reference cycle");
  if (line.used)
    throw ConfigError(source + ":" + std::to_string(line.line_number) + ": node '" + id +
                      "' referenced more than once");
  line.used = true;
  in_progress.insert(id);
  std::unique_ptr<TreeplexNode> node;
  if (line.kind == "observation") {
    std::vector<std::unique_ptr<TreeplexNode>> children;
    for (const std::string& child_id : line.args)
      children.push_back(build_from_map(child_id, nodes, in_progress, source));
    node = TreeplexNode::observation(std::move(children), id);
  } else {
    std::vector<std::string> actions;
    std::vector<std::unique_ptr<TreeplexNode>> children;
    for (const std::string& token : line.args) {
      auto eq = token.find('=');
      if (eq == std::string::npos) {
        actions.push_back(token);
        children.push_back(nullptr);
      } else {
        actions.push_back(token.substr(0, eq));
        children.push_back(build_from_map(token.substr(eq + 1), nodes, in_progress, source));
      }
    }
    try {
      node = TreeplexNode::infoset(id, std::move(actions), std::move(children));
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(line.line_number) + ": " + e.what());
    }
  }
  in_progress.erase(id);
  return node;
}

}  // namespace

std::unique_ptr<TreeplexNode> load_treeplex(std::istream& in, const std::string& source_name) {
  std::map<std::string, ParsedLine> nodes;
  std::string root_id;
  std::string raw;
  int line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::string kind;
    if (!(tokens >> kind)) continue;
    if (kind != "infoset" && kind != "observation")
      throw ConfigError(source_name + ":" + std::to_string(line_number) +
                        ": expected 'infoset' or 'observation', got '" + kind + "'");
    std::string id;
    if (!(tokens >> id))
      throw ConfigError(source_name + ":" + std::to_string(line_number) + ": missing node id");
    ParsedLine line;
    line.kind = kind;
    line.line_number = line_number;
    std::string token;
    while (tokens >> token) line.args.push_back(token);
    if (line.args.empty())
      throw ConfigError(source_name + ":" + std::to_string(line_number) + ": node '" + id +
                        "' has no " + (kind == "infoset" ? "actions" : "children"));
    if (!nodes.emplace(id, std::move(line)).second)
      throw ConfigError(source_name + ":" + std::to_string(line_number) + ": duplicate node id '" +
                        id + "'");
    if (root_id.empty()) root_id = id;
  }
  if (root_id.empty()) throw ConfigError(source_name + ": no treeplex nodes found");
  std::set<std::string> in_progress;
  auto root = build_from_map(root_id, nodes, in_progress, source_name);
  for (const auto& [id, line] : nodes)
    if (!line.used)
      throw ConfigError(source_name + ":" + std::to_string(line.line_number) + ": node '" + id +
                        "' is defined but never referenced");
  return root;
}

std::unique_ptr<TreeplexNode> load_treeplex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open treeplex file '" + path + "'");
  return load_treeplex(in, path);
}

}  // namespace regret
