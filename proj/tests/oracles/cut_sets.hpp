// Brute-force minimal cut sets and a random AND/OR tree generator, for
// checking the attack-path enumerator.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tara/attack_tree.hpp"

namespace oracle {

inline bool Satisfied(const tara::AttackTree& tree, const tara::NodeId& id,
                      const std::set<tara::NodeId>& active) {
  const tara::Node& node = tree.nodes.at(id);
  if (std::holds_alternative<tara::Leaf>(node)) return active.count(id) > 0;
  const tara::Gate& g = std::get<tara::Gate>(node);
  if (g.kind == tara::GateKind::And)
    return std::all_of(g.children.begin(), g.children.end(),
                       [&](const auto& c) { return Satisfied(tree, c, active); });
  return std::any_of(g.children.begin(), g.children.end(),
                     [&](const auto& c) { return Satisfied(tree, c, active); });
}

// Every leaf subset that satisfies the root and stops doing so when any one
// leaf is removed (sufficient for minimality because gates are monotone).
inline std::vector<std::set<tara::NodeId>> MinimalCutSets(const tara::AttackTree& tree) {
  const std::vector<tara::NodeId> leaves = tree.leaf_ids();
  std::vector<std::set<tara::NodeId>> out;
  const std::uint32_t n = static_cast<std::uint32_t>(leaves.size());
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::set<tara::NodeId> active;
    for (std::uint32_t k = 0; k < n; ++k)
      if (mask & (1u << k)) active.insert(leaves[k]);
    if (!Satisfied(tree, tree.root, active)) continue;
    bool minimal = true;
    for (const auto& leaf : active) {
      auto smaller = active;
      smaller.erase(leaf);
      if (Satisfied(tree, tree.root, smaller)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(std::move(active));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Random AND/OR tree with between 1 and max_leaves leaves. Leaf ids are
// "L<n>", gate ids "G<n>".
inline tara::AttackTree RandomTree(std::mt19937& rng, int max_leaves) {
  tara::AttackTree tree;
  tree.id = "random";
  int leaf_budget = std::uniform_int_distribution<int>(1, max_leaves)(rng);
  int next_leaf = 0;
  int next_gate = 0;

  // Builds a subtree holding exactly `leaves` leaves.
  auto build = [&](auto&& self, int leaves, int depth) -> tara::NodeId {
    if (leaves == 1 && (depth > 0 || rng() % 4 != 0)) {
      tara::NodeId id = "L" + std::to_string(next_leaf++);
      tree.nodes.emplace(id, tara::Leaf{id, std::nullopt});
      return id;
    }
    tara::NodeId id = "G" + std::to_string(next_gate++);
    tara::Gate gate;
    gate.label = id;
    gate.kind = rng() % 2 ? tara::GateKind::And : tara::GateKind::Or;
    int children = std::uniform_int_distribution<int>(1, std::min(leaves, 4))(rng);
    // Split `leaves` into `children` positive parts.
    std::vector<int> parts(children, 1);
    for (int r = leaves - children; r > 0; --r) parts[rng() % children] += 1;
    for (int p : parts) gate.children.push_back(self(self, p, depth + 1));
    tree.nodes.emplace(id, std::move(gate));
    return id;
  };
  tree.root = build(build, leaf_budget, 0);
  return tree;
}

}  // namespace oracle
