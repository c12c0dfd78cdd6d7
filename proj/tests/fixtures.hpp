// Small shared helpers for the test binaries.
#pragma once

#include <filesystem>
#include <string>

#include "tara/model.hpp"
#include "tara/model_io.hpp"

namespace fixtures {

inline std::filesystem::path data(const std::string& name) {
  return std::filesystem::path(TARA_DATA_DIR) / name;
}

inline tara::SecurityModel ivi_v1() { return tara::io::load_model(data("ivi-v1.json")); }
inline tara::SecurityModel ivi_v2() { return tara::io::load_model(data("ivi-v2.json")); }
inline tara::DisclosureEvent jailbreak() {
  return tara::io::load_event(data("tesla-jailbreak-event.json"));
}

inline tara::Threat threat(int id, const std::string& vector, const std::string& source,
                           tara::impact::ImpactVector impact = {}) {
  tara::Threat t;
  t.id = id;
  t.details = "threat " + std::to_string(id);
  t.source = source;
  t.attack_method = "method";
  t.metrics = tara::cvss::parse_vector(vector);
  t.impact = impact;
  return t;
}

// One asset, no flows, the given threats and a single OR tree over them.
inline tara::SecurityModel minimal_model(std::vector<tara::Threat> threats) {
  tara::SecurityModel m;
  m.assets.push_back({"ivi", "IVI System", tara::AssetKind::Module, "", {}});
  tara::AttackTree tree;
  tree.id = "t";
  tree.root = "root";
  tara::Gate root{"root", tara::GateKind::Or, {}};
  for (const auto& t : threats) {
    std::string leaf = "l" + std::to_string(t.id);
    root.children.push_back(leaf);
    tree.nodes.emplace(leaf, tara::Leaf{leaf, t.id});
  }
  if (!threats.empty()) tree.nodes.emplace("root", root);
  m.threats = std::move(threats);
  if (!m.threats.empty()) {
    m.trees.push_back(tree);
    m.personas.push_back({"p", "Persona", "goal", "t"});
  }
  return m;
}

}  // namespace fixtures
