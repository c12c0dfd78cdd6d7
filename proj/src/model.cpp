#include "tara/model.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "tara/error.hpp"

namespace tara {

namespace {

bool is_identifier(const std::string& id) {
  static const std::regex kToken("[A-Za-z0-9][A-Za-z0-9_.:-]*");
  return std::regex_match(id, kToken);
}

bool is_utc_timestamp(const std::string& ts) {
  static const std::regex kUtc(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z)");
  return std::regex_match(ts, kUtc);
}

std::string at(std::string_view collection, std::size_t index) {
  return std::string(collection) + "[" + std::to_string(index) + "]";
}

class Checker {
 public:
  explicit Checker(ValidationReport& report) : report_(report) {}

  void error(std::string path, std::string message) {
    report_.issues.push_back({IssueSeverity::Error, std::move(path), std::move(message)});
  }
  void warning(std::string path, std::string message) {
    report_.issues.push_back({IssueSeverity::Warning, std::move(path), std::move(message)});
  }

  // Records an id, reporting duplicates and malformed tokens.
  void unique_id(std::set<std::string>& seen, const std::string& id, const std::string& path) {
    if (!is_identifier(id)) error(path + ".id", "malformed identifier '" + id + "'");
    if (!seen.insert(id).second) error(path + ".id", "duplicate identifier '" + id + "'");
  }

 private:
  ValidationReport& report_;
};

}  // namespace

std::size_t ValidationReport::error_count() const {
  return std::count_if(issues.begin(), issues.end(),
                       [](const Issue& i) { return i.severity == IssueSeverity::Error; });
}

std::size_t ValidationReport::warning_count() const { return issues.size() - error_count(); }

std::string ValidationReport::str() const {
  std::ostringstream out;
  for (const Issue& i : issues)
    out << (i.severity == IssueSeverity::Error ? "error" : "warning") << ' ' << i.path << ": "
        << i.message << '\n';
  return out.str();
}

ValidationReport validate(const SecurityModel& model) {
  ValidationReport report;
  Checker check(report);

  if (model.schema_version != kSchemaVersion)
    check.error("schema_version", "unsupported schema version " +
                                      std::to_string(model.schema_version));
  if (model.model_version != 1 + static_cast<int>(model.events.size()))
    check.error("model_version", "model version " + std::to_string(model.model_version) +
                                     " does not match " + std::to_string(model.events.size()) +
                                     " applied events");

  std::set<std::string> asset_ids;
  for (std::size_t k = 0; k < model.assets.size(); ++k)
    check.unique_id(asset_ids, model.assets[k].id, at("assets", k));
  auto asset_ref = [&](const std::string& id, const std::string& path) {
    if (!asset_ids.count(id)) check.error(path, "unresolved asset reference '" + id + "'");
  };

  std::set<std::string> flow_ids;
  for (std::size_t k = 0; k < model.flows.size(); ++k) {
    const DataFlow& f = model.flows[k];
    const std::string path = at("flows", k);
    check.unique_id(flow_ids, f.id, path);
    asset_ref(f.source, path + ".source");
    asset_ref(f.target, path + ".target");
    if (f.source == f.target) check.error(path, "flow source and target are the same asset");
  }

  std::set<std::string> boundary_ids;
  for (std::size_t k = 0; k < model.boundaries.size(); ++k) {
    const TrustBoundary& b = model.boundaries[k];
    const std::string path = at("boundaries", k);
    check.unique_id(boundary_ids, b.id, path);
    for (std::size_t m = 0; m < b.members.size(); ++m)
      asset_ref(b.members[m], at(path + ".members", m));
  }

  std::set<int> threat_ids;
  for (std::size_t k = 0; k < model.threats.size(); ++k) {
    const Threat& t = model.threats[k];
    const std::string path = at("threats", k);
    if (t.id <= 0) check.error(path + ".id", "threat id must be a positive integer");
    if (!threat_ids.insert(t.id).second)
      check.error(path + ".id", "duplicate threat id " + std::to_string(t.id));
    asset_ref(t.source, path + ".source");
    if (t.metrics.has_environmental())
      check.error(path + ".cvss", "environmental metrics are not supported for scoring");
  }

  std::set<std::string> tree_ids;
  std::set<int> referenced_threats;
  for (std::size_t k = 0; k < model.trees.size(); ++k) {
    const AttackTree& tree = model.trees[k];
    const std::string path = at("trees", k);
    check.unique_id(tree_ids, tree.id, path);
    for (const std::string& problem : structure_problems(tree)) check.error(path, problem);
    for (const auto& [node_id, node] : tree.nodes) {
      const auto* leaf = std::get_if<Leaf>(&node);
      if (leaf == nullptr) continue;
      const std::string leaf_path = path + ".nodes." + node_id;
      if (!leaf->threat) {
        check.warning(leaf_path, "leaf has no threat reference and cannot be scored");
      } else if (!threat_ids.count(*leaf->threat)) {
        check.error(leaf_path, "unresolved threat reference " + std::to_string(*leaf->threat));
      } else {
        referenced_threats.insert(*leaf->threat);
      }
    }
  }

  std::set<std::string> persona_ids;
  for (std::size_t k = 0; k < model.personas.size(); ++k) {
    const AttackerPersona& p = model.personas[k];
    const std::string path = at("personas", k);
    check.unique_id(persona_ids, p.id, path);
    if (!tree_ids.count(p.tree))
      check.error(path + ".tree", "unresolved attack tree reference '" + p.tree + "'");
  }

  for (std::size_t k = 0; k < model.events.size(); ++k) {
    const DisclosureEvent& e = model.events[k];
    const std::string path = at("events", k);
    if (!is_identifier(e.id)) check.error(path + ".id", "malformed identifier '" + e.id + "'");
    if (!is_utc_timestamp(e.timestamp))
      check.error(path + ".timestamp", "timestamp must be YYYY-MM-DDTHH:MM:SSZ");
    if (e.targets.empty()) check.error(path + ".targets", "event has no targets");
    if (e.metric_overrides.empty() && e.impact_overrides.empty())
      check.error(path, "event has no overrides");
    for (std::size_t m = 0; m < e.targets.size(); ++m)
      if (!threat_ids.count(e.targets[m]))
        check.error(at(path + ".targets", m),
                    "unresolved threat reference " + std::to_string(e.targets[m]));
  }

  for (std::size_t k = 0; k < model.threats.size(); ++k)
    if (!referenced_threats.count(model.threats[k].id))
      check.warning(at("threats", k), "threat " + std::to_string(model.threats[k].id) +
                                          " is not referenced by any attack-tree leaf");

  return report;
}

void require_valid(const SecurityModel& model) {
  ValidationReport report = validate(model);
  if (report.ok()) return;
  std::string message = "model has " + std::to_string(report.error_count()) + " error(s)";
  for (const Issue& i : report.issues)
    if (i.severity == IssueSeverity::Error) message += "\n  " + i.path + ": " + i.message;
  throw ValidationError(message);
}

const Threat& threat_by_id(const SecurityModel& model, int id) {
  for (const Threat& t : model.threats)
    if (t.id == id) return t;
  throw NotFoundError("threat", std::to_string(id));
}

const Asset* find_asset(const SecurityModel& model, std::string_view id) {
  for (const Asset& a : model.assets)
    if (a.id == id) return &a;
  return nullptr;
}

const AttackTree* find_tree(const SecurityModel& model, std::string_view id) {
  for (const AttackTree& t : model.trees)
    if (t.id == id) return &t;
  return nullptr;
}

const AttackerPersona* find_persona(const SecurityModel& model, std::string_view id) {
  for (const AttackerPersona& p : model.personas)
    if (p.id == id) return &p;
  return nullptr;
}

std::string_view to_string(AssetKind k) {
  switch (k) {
    case AssetKind::Module: return "module";
    case AssetKind::Datastore: return "datastore";
    case AssetKind::ExternalEntity: return "external-entity";
  }
  return "module";
}

std::string_view to_string(Channel c) {
  switch (c) {
    case Channel::InternalBus: return "internal-bus";
    case Channel::Usb: return "usb";
    case Channel::Bluetooth: return "bluetooth";
    case Channel::Wifi: return "wifi";
    case Channel::GpsRf: return "gps-rf";
    case Channel::Cellular: return "cellular";
    case Channel::Physical: return "physical";
  }
  return "internal-bus";
}

std::string_view to_string(Stride s) {
  switch (s) {
    case Stride::Spoofing: return "Spoofing";
    case Stride::Tampering: return "Tampering";
    case Stride::Repudiation: return "Repudiation";
    case Stride::InformationDisclosure: return "Information Disclosure";
    case Stride::DenialOfService: return "Denial of Service";
    case Stride::ElevationOfPrivilege: return "Elevation of Privilege";
  }
  return "Spoofing";
}

AssetKind asset_kind_from_string(std::string_view s) {
  for (AssetKind k : {AssetKind::Module, AssetKind::Datastore, AssetKind::ExternalEntity})
    if (to_string(k) == s) return k;
  throw ParseError("unknown asset kind '" + std::string(s) + "'");
}

Channel channel_from_string(std::string_view s) {
  for (Channel c : {Channel::InternalBus, Channel::Usb, Channel::Bluetooth, Channel::Wifi,
                    Channel::GpsRf, Channel::Cellular, Channel::Physical})
    if (to_string(c) == s) return c;
  throw ParseError("unknown channel '" + std::string(s) + "'");
}

Stride stride_from_string(std::string_view s) {
  for (Stride c : {Stride::Spoofing, Stride::Tampering, Stride::Repudiation,
                   Stride::InformationDisclosure, Stride::DenialOfService,
                   Stride::ElevationOfPrivilege})
    if (to_string(c) == s) return c;
  throw ParseError("unknown STRIDE category '" + std::string(s) + "'");
}

}  // namespace tara
