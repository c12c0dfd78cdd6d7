/// @file attack_tree.hpp
/// AND/OR attack trees, attack-path (minimal cut set) enumeration and
/// feasibility propagation from CVSS-scored leaves.
///
/// Aggregation: a path is as feasible as its hardest step (minimum of leaf
/// temporal scores); a goal is as feasible as its easiest path (maximum over
/// paths, ties to the lexicographically smallest path).
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tara/cvss.hpp"

namespace tara {

struct SecurityModel;

using NodeId = std::string;

enum class GateKind { And, Or };

struct Gate {
  std::string label;
  GateKind kind = GateKind::Or;
  std::vector<NodeId> children;

  bool operator==(const Gate&) const = default;
};

struct Leaf {
  std::string label;
  std::optional<int> threat;

  bool operator==(const Leaf&) const = default;
};

using Node = std::variant<Gate, Leaf>;

struct AttackTree {
  std::string id;
  NodeId root;
  std::map<NodeId, Node> nodes;

  bool operator==(const AttackTree&) const = default;

  std::vector<NodeId> leaf_ids() const;
};

/// Set of leaf node ids whose joint activation satisfies the root, with no
/// proper subset doing so. Ordered lexicographically by sorted leaf ids.
struct AttackPath {
  std::set<NodeId> leaves;

  auto operator<=>(const AttackPath&) const = default;
};

/// Structural problems (dangling child, several parents, cycle, childless
/// gate, unreachable node). Empty when the tree is well-formed.
std::vector<std::string> structure_problems(const AttackTree& tree);

/// All minimal cut sets, deduplicated and sorted. Throws StructureError on a
/// malformed tree.
std::vector<AttackPath> enumerate_paths(const AttackTree& tree);

/// Weakest-link score of one path. Throws ScoringError for an empty path or
/// a leaf without a threat reference.
cvss::Score path_feasibility(const AttackPath& path, const AttackTree& tree,
                             const SecurityModel& model);

struct GoalFeasibility {
  cvss::Score score;
  AttackPath best_path;
};

GoalFeasibility goal_feasibility(const AttackTree& tree, const SecurityModel& model);

std::string_view to_string(GateKind kind);
GateKind gate_from_string(std::string_view s);

}  // namespace tara
