#include "tara/attack_tree.hpp"

#include <algorithm>
#include <functional>

#include "tara/error.hpp"
#include "tara/model.hpp"

namespace tara {

namespace {

using Family = std::vector<std::set<NodeId>>;

// Drops duplicates and supersets, leaving the minimal sets in sorted order.
Family minimize(Family family) {
  std::sort(family.begin(), family.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  family.erase(std::unique(family.begin(), family.end()), family.end());
  Family kept;
  for (auto& candidate : family) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
      return std::includes(candidate.begin(), candidate.end(), k.begin(), k.end());
    });
    if (!dominated) kept.push_back(std::move(candidate));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

Family paths_of(const AttackTree& tree, const NodeId& id) {
  const Node& node = tree.nodes.at(id);
  if (std::holds_alternative<Leaf>(node)) return {{id}};
  const Gate& gate = std::get<Gate>(node);
  if (gate.kind == GateKind::Or) {
    Family out;
    for (const NodeId& child : gate.children) {
      Family sub = paths_of(tree, child);
      out.insert(out.end(), std::make_move_iterator(sub.begin()),
                 std::make_move_iterator(sub.end()));
    }
    return minimize(std::move(out));
  }
  Family acc{{}};
  for (const NodeId& child : gate.children) {
    Family sub = paths_of(tree, child);
    Family next;
    next.reserve(acc.size() * sub.size());
    for (const auto& left : acc)
      for (const auto& right : sub) {
        std::set<NodeId> merged = left;
        merged.insert(right.begin(), right.end());
        next.push_back(std::move(merged));
      }
    acc = minimize(std::move(next));
  }
  return acc;
}

}  // namespace

std::vector<NodeId> AttackTree::leaf_ids() const {
  std::vector<NodeId> out;
  for (const auto& [id, node] : nodes)
    if (std::holds_alternative<Leaf>(node)) out.push_back(id);
  return out;
}

std::vector<std::string> structure_problems(const AttackTree& tree) {
  std::vector<std::string> problems;
  if (!tree.nodes.count(tree.root)) {
    problems.push_back("root node '" + tree.root + "' does not exist");
    return problems;
  }
  std::map<NodeId, int> parents;
  for (const auto& [id, node] : tree.nodes) {
    const auto* gate = std::get_if<Gate>(&node);
    if (gate == nullptr) continue;
    if (gate->children.empty()) problems.push_back("gate '" + id + "' has no children");
    for (const NodeId& child : gate->children) {
      if (!tree.nodes.count(child)) {
        problems.push_back("gate '" + id + "' references missing node '" + child + "'");
        continue;
      }
      ++parents[child];
    }
  }
  if (parents.count(tree.root)) problems.push_back("root node '" + tree.root + "' has a parent");
  for (const auto& [id, count] : parents)
    if (count > 1)
      problems.push_back("node '" + id + "' has " + std::to_string(count) + " parents");
  if (!problems.empty()) return problems;

  // With one parent per non-root node, anything unreachable from the root
  // sits on a detached cycle or a second component.
  std::set<NodeId> reached;
  std::vector<NodeId> stack{tree.root};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (!reached.insert(id).second) continue;
    if (const auto* gate = std::get_if<Gate>(&tree.nodes.at(id)))
      for (const NodeId& child : gate->children) stack.push_back(child);
  }
  for (const auto& [id, node] : tree.nodes)
    if (!reached.count(id)) problems.push_back("node '" + id + "' is not reachable from the root");
  return problems;
}

std::vector<AttackPath> enumerate_paths(const AttackTree& tree) {
  auto problems = structure_problems(tree);
  if (!problems.empty())
    throw StructureError("attack tree '" + tree.id + "': " + problems.front());
  std::vector<AttackPath> out;
  for (auto& leaves : paths_of(tree, tree.root)) out.push_back({std::move(leaves)});
  return out;
}

cvss::Score path_feasibility(const AttackPath& path, const AttackTree& tree,
                             const SecurityModel& model) {
  if (path.leaves.empty()) throw ScoringError("attack path is empty");
  std::optional<cvss::Score> weakest;
  for (const NodeId& id : path.leaves) {
    auto it = tree.nodes.find(id);
    const Leaf* leaf = it == tree.nodes.end() ? nullptr : std::get_if<Leaf>(&it->second);
    if (leaf == nullptr) throw ScoringError("path node '" + id + "' is not a leaf");
    if (!leaf->threat) throw ScoringError("leaf '" + id + "' has no threat and cannot be scored");
    cvss::Score s = cvss::temporal_score(threat_by_id(model, *leaf->threat).metrics);
    if (!weakest || s < *weakest) weakest = s;
  }
  return *weakest;
}

GoalFeasibility goal_feasibility(const AttackTree& tree, const SecurityModel& model) {
  std::optional<GoalFeasibility> best;
  for (AttackPath& path : enumerate_paths(tree)) {
    cvss::Score s = path_feasibility(path, tree, model);
    if (!best || s > best->score) best = GoalFeasibility{s, std::move(path)};
  }
  if (!best) throw ScoringError("attack tree '" + tree.id + "' has no paths");
  return *best;
}

std::string_view to_string(GateKind kind) { return kind == GateKind::And ? "AND" : "OR"; }

GateKind gate_from_string(std::string_view s) {
  if (s == "AND") return GateKind::And;
  if (s == "OR") return GateKind::Or;
  throw ParseError("unknown gate '" + std::string(s) + "'");
}

}  // namespace tara
