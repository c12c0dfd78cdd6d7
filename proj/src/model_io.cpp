#include "tara/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tara/error.hpp"

namespace tara::io {

namespace {

constexpr const char* kFeasibilityRows[] = {"None", "Low", "Medium", "High", "Critical"};

// Strict view over a JSON object: every key must be consumed, anything left
// over is reported as an unknown field.
class Reader {
 public:
  Reader(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail("expected an object");
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError((path_.empty() ? std::string("model") : path_) + ": " + message);
  }

  std::string child(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  bool has(const char* key) const { return obj_.contains(key); }

  const Json& get(const char* key) {
    auto it = obj_.find(key);
    if (it == obj_.end()) fail(std::string("missing field '") + key + "'");
    used_.insert(key);
    return *it;
  }

  const Json* optional(const char* key) {
    auto it = obj_.find(key);
    if (it == obj_.end()) return nullptr;
    used_.insert(key);
    return &*it;
  }

  std::string str(const char* key) {
    const Json& v = get(key);
    if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
  }

  int integer(const char* key) {
    const Json& v = get(key);
    if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
  }

  bool boolean(const char* key) {
    const Json& v = get(key);
    if (!v.is_boolean()) fail(std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
  }

  const Json& array(const char* key) {
    const Json& v = get(key);
    if (!v.is_array()) fail(std::string("field '") + key + "' must be a list");
    return v;
  }

  std::vector<std::string> strings(const char* key) {
    std::vector<std::string> out;
    for (const Json& v : array(key)) {
      if (!v.is_string()) fail(std::string("field '") + key + "' must hold strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  }

  // Converts enum words, re-throwing with this reader's path.
  template <typename F>
  auto word(const char* key, F convert) {
    const std::string s = str(key);
    try {
      return convert(s);
    } catch (const ParseError& e) {
      fail(std::string("field '") + key + "': " + e.what());
    }
  }

  void finish() const {
    for (const auto& item : obj_.items())
      if (!used_.count(item.key())) fail("unknown field '" + item.key() + "'");
  }

 private:
  const Json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

std::string indexed(const std::string& path, std::size_t k) {
  return path + "[" + std::to_string(k) + "]";
}

Json rational_to_json(const impact::Rational& r) {
  if (r.denominator() == 1) return r.numerator();
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

impact::Rational rational_from_json(const Json& v, Reader& at) {
  if (v.is_number_integer()) return impact::Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t slash = s.find('/');
    try {
      if (slash == std::string::npos) return impact::Rational(std::stoll(s));
      std::size_t used = 0;
      const long long num = std::stoll(s.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(s);
      const long long den = std::stoll(s.substr(slash + 1));
      if (den == 0) at.fail("zero denominator in weight '" + s + "'");
      return impact::Rational(num, den);
    } catch (const std::logic_error&) {
      at.fail("malformed weight '" + s + "'");
    }
  }
  at.fail("weights must be integers or \"p/q\" strings");
}

Json impact_to_json(const impact::ImpactVector& v) {
  Json out = Json::object();
  for (impact::Objective o : impact::kObjectives)
    out[std::string(impact::to_string(o))] = std::string(impact::to_string(v.get(o)));
  return out;
}

Json tree_to_json(const AttackTree& tree) {
  Json nodes = Json::object();
  for (const auto& [id, node] : tree.nodes) {
    Json n = Json::object();
    if (const auto* gate = std::get_if<Gate>(&node)) {
      n["label"] = gate->label;
      n["gate"] = std::string(to_string(gate->kind));
      n["children"] = gate->children;
    } else {
      const Leaf& leaf = std::get<Leaf>(node);
      n["label"] = leaf.label;
      if (leaf.threat) n["threat"] = *leaf.threat;
    }
    nodes[id] = std::move(n);
  }
  return Json{{"id", tree.id}, {"root", tree.root}, {"nodes", std::move(nodes)}};
}

AttackTree tree_from_json(const Json& doc, const std::string& path) {
  Reader r(doc, path);
  AttackTree tree;
  tree.id = r.str("id");
  tree.root = r.str("root");
  const Json& nodes = r.get("nodes");
  if (!nodes.is_object()) r.fail("field 'nodes' must be an object keyed by node id");
  for (const auto& item : nodes.items()) {
    Reader n(item.value(), path + ".nodes." + item.key());
    std::string label = n.str("label");
    if (n.has("gate")) {
      Gate gate;
      gate.label = std::move(label);
      gate.kind = n.word("gate", gate_from_string);
      gate.children = n.strings("children");
      tree.nodes.emplace(item.key(), std::move(gate));
    } else {
      Leaf leaf;
      leaf.label = std::move(label);
      if (const Json* t = n.optional("threat")) {
        if (!t->is_number_integer()) n.fail("field 'threat' must be an integer");
        leaf.threat = t->get<int>();
      }
      tree.nodes.emplace(item.key(), std::move(leaf));
    }
    n.finish();
  }
  r.finish();
  return tree;
}

Json matrix_to_json(const RiskMatrix& m) {
  Json out = Json::object();
  for (std::size_t row = 0; row < 5; ++row) {
    Json cells = Json::array();
    for (RiskRating c : m.cells()[row]) cells.push_back(std::string(to_string(c)));
    out[kFeasibilityRows[row]] = std::move(cells);
  }
  return out;
}

RiskMatrix matrix_from_json(const Json& doc) {
  Reader r(doc, "matrix_override");
  RiskMatrix::Cells cells{};
  for (std::size_t row = 0; row < 5; ++row) {
    std::vector<std::string> words = r.strings(kFeasibilityRows[row]);
    if (words.size() != 5)
      r.fail(std::string("row '") + kFeasibilityRows[row] + "' must have 5 cells");
    for (std::size_t col = 0; col < 5; ++col) {
      try {
        cells[row][col] = risk_from_string(words[col]);
      } catch (const ParseError& e) {
        r.fail(e.what());
      }
    }
  }
  r.finish();
  try {
    return RiskMatrix(cells);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    r.fail(e.what());
  }
}

Json threat_to_json(const Threat& t) {
  Json out{{"id", t.id},
           {"details", t.details},
           {"category", std::string(to_string(t.category))},
           {"source", t.source},
           {"attack_method", t.attack_method},
           {"physical", t.physical},
           {"cvss", cvss::format_vector(t.metrics)},
           {"impact", impact_to_json(t.impact)}};
  if (!t.recorded.empty()) {
    Json rec = Json::object();
    if (t.recorded.cvss) rec["cvss"] = t.recorded.cvss->str();
    if (t.recorded.feasibility) rec["feasibility"] = std::string(cvss::to_string(*t.recorded.feasibility));
    if (t.recorded.impact) rec["impact"] = std::string(impact::to_string(*t.recorded.impact));
    if (t.recorded.risk) rec["risk"] = std::string(to_string(*t.recorded.risk));
    out["recorded"] = std::move(rec);
  }
  return out;
}

impact::ImpactVector impact_from_json(const Json& doc, const std::string& path) {
  Reader r(doc, path);
  impact::ImpactVector v;
  for (impact::Objective o : impact::kObjectives)
    v.set(o, r.word(std::string(impact::to_string(o)).c_str(), impact::level_from_string));
  r.finish();
  return v;
}

cvss::Score score_from_string(const std::string& s, Reader& r) {
  // "d.d" or "10.0"
  const std::size_t dot = s.find('.');
  if (dot == std::string::npos || dot + 2 != s.size() || dot == 0 || dot > 2)
    r.fail("malformed score '" + s + "'");
  for (char c : s)
    if (c != '.' && !std::isdigit(static_cast<unsigned char>(c)))
      r.fail("malformed score '" + s + "'");
  const int tenths = std::stoi(s.substr(0, dot)) * 10 + (s[dot + 1] - '0');
  try {
    return cvss::Score::from_tenths(tenths);
  } catch (const Error&) {
    r.fail("score out of range '" + s + "'");
  }
}

Threat threat_from_json(const Json& doc, const std::string& path) {
  Reader r(doc, path);
  Threat t;
  t.id = r.integer("id");
  t.details = r.str("details");
  t.category = r.word("category", stride_from_string);
  t.source = r.str("source");
  t.attack_method = r.str("attack_method");
  t.physical = r.boolean("physical");
  t.metrics = r.word("cvss", [](const std::string& s) { return cvss::parse_vector(s); });
  t.impact = impact_from_json(r.get("impact"), r.child("impact"));
  if (const Json* rec = r.optional("recorded")) {
    Reader rr(*rec, r.child("recorded"));
    if (rr.has("cvss")) t.recorded.cvss = score_from_string(rr.str("cvss"), rr);
    if (rr.has("feasibility"))
      t.recorded.feasibility = rr.word("feasibility", cvss::severity_from_string);
    if (rr.has("impact")) t.recorded.impact = rr.word("impact", impact::rating_from_string);
    if (rr.has("risk")) t.recorded.risk = rr.word("risk", risk_from_string);
    rr.finish();
  }
  r.finish();
  return t;
}

DisclosureEvent event_from_reader(Reader& r) {
  DisclosureEvent e;
  e.id = r.str("id");
  e.reference = r.str("reference");
  e.timestamp = r.str("timestamp");
  for (const Json& v : r.array("targets")) {
    if (!v.is_number_integer()) r.fail("targets must be integer threat ids");
    e.targets.push_back(v.get<int>());
  }
  if (r.has("metric_overrides"))
    e.metric_overrides = r.word("metric_overrides",
                                [](const std::string& s) { return cvss::parse_overrides(s); });
  if (const Json* io = r.optional("impact_overrides")) {
    Reader ir(*io, r.child("impact_overrides"));
    for (impact::Objective o : impact::kObjectives) {
      const std::string key(impact::to_string(o));
      if (!ir.has(key.c_str())) continue;
      impact::Level level = ir.word(key.c_str(), impact::level_from_string);
      switch (o) {
        case impact::Objective::Safety: e.impact_overrides.safety = level; break;
        case impact::Objective::Operational: e.impact_overrides.operational = level; break;
        case impact::Objective::Financial: e.impact_overrides.financial = level; break;
        case impact::Objective::Privacy: e.impact_overrides.privacy = level; break;
      }
    }
    ir.finish();
  }
  if (const Json* rat = r.optional("rationale")) {
    if (!rat->is_object()) r.fail("field 'rationale' must be an object");
    for (const auto& item : rat->items()) {
      if (!item.value().is_string()) r.fail("rationale entries must be strings");
      e.rationale[item.key()] = item.value().get<std::string>();
    }
  }
  r.finish();
  return e;
}

}  // namespace

Json to_json(const DisclosureEvent& e) {
  Json out{{"id", e.id}, {"reference", e.reference}, {"timestamp", e.timestamp},
           {"targets", e.targets}};
  if (!e.metric_overrides.empty())
    out["metric_overrides"] = cvss::format_overrides(e.metric_overrides);
  if (!e.impact_overrides.empty()) {
    Json io = Json::object();
    const impact::ImpactOverrides& o = e.impact_overrides;
    if (o.safety) io["safety"] = std::string(impact::to_string(*o.safety));
    if (o.operational) io["operational"] = std::string(impact::to_string(*o.operational));
    if (o.financial) io["financial"] = std::string(impact::to_string(*o.financial));
    if (o.privacy) io["privacy"] = std::string(impact::to_string(*o.privacy));
    out["impact_overrides"] = std::move(io);
  }
  if (!e.rationale.empty()) {
    Json rat = Json::object();
    for (const auto& [k, v] : e.rationale) rat[k] = v;
    out["rationale"] = std::move(rat);
  }
  return out;
}

Json to_json(const SecurityModel& m) {
  Json doc = Json::object();
  doc["schema_version"] = m.schema_version;
  doc["model_version"] = m.model_version;
  Json weights = Json::object();
  for (impact::Objective o : impact::kObjectives)
    weights[std::string(impact::to_string(o))] = rational_to_json(m.weights.get(o));
  doc["weights"] = std::move(weights);
  if (m.matrix_override) doc["matrix_override"] = matrix_to_json(*m.matrix_override);

  Json assets = Json::array();
  for (const Asset& a : m.assets) {
    Json j{{"id", a.id}, {"name", a.name}, {"kind", std::string(to_string(a.kind))},
           {"description", a.description}};
    if (!a.tags.empty()) j["tags"] = a.tags;
    assets.push_back(std::move(j));
  }
  doc["assets"] = std::move(assets);

  Json flows = Json::array();
  for (const DataFlow& f : m.flows)
    flows.push_back(Json{{"id", f.id},
                         {"source", f.source},
                         {"target", f.target},
                         {"channel", std::string(to_string(f.channel))},
                         {"crosses_trust_boundary", f.crosses_trust_boundary}});
  doc["flows"] = std::move(flows);

  Json boundaries = Json::array();
  for (const TrustBoundary& b : m.boundaries)
    boundaries.push_back(Json{{"id", b.id}, {"name", b.name}, {"members", b.members}});
  doc["boundaries"] = std::move(boundaries);

  Json threats = Json::array();
  for (const Threat& t : m.threats) threats.push_back(threat_to_json(t));
  doc["threats"] = std::move(threats);

  Json personas = Json::array();
  for (const AttackerPersona& p : m.personas)
    personas.push_back(
        Json{{"id", p.id}, {"name", p.name}, {"goal", p.goal}, {"tree", p.tree}});
  doc["personas"] = std::move(personas);

  Json trees = Json::array();
  for (const AttackTree& t : m.trees) trees.push_back(tree_to_json(t));
  doc["trees"] = std::move(trees);

  Json events = Json::array();
  for (const DisclosureEvent& e : m.events) events.push_back(to_json(e));
  doc["events"] = std::move(events);
  return doc;
}

SecurityModel model_from_json(const Json& doc) {
  Reader r(doc, "");
  SecurityModel m;
  m.schema_version = r.integer("schema_version");
  if (m.schema_version != kSchemaVersion)
    r.fail("unsupported schema_version " + std::to_string(m.schema_version) + " (expected " +
           std::to_string(kSchemaVersion) + ")");
  m.model_version = r.integer("model_version");

  if (const Json* w = r.optional("weights")) {
    Reader wr(*w, "weights");
    impact::Rational vals[4];
    for (std::size_t k = 0; k < 4; ++k)
      vals[k] = rational_from_json(wr.get(std::string(impact::to_string(impact::kObjectives[k])).c_str()), wr);
    wr.finish();
    try {
      m.weights = impact::Weights(vals[0], vals[1], vals[2], vals[3]);
    } catch (const Error& e) {
      wr.fail(e.what());
    }
  }
  if (const Json* mo = r.optional("matrix_override"); mo && !mo->is_null())
    m.matrix_override = matrix_from_json(*mo);

  const Json& assets = r.array("assets");
  for (std::size_t k = 0; k < assets.size(); ++k) {
    Reader a(assets[k], indexed("assets", k));
    Asset asset;
    asset.id = a.str("id");
    asset.name = a.str("name");
    asset.kind = a.word("kind", asset_kind_from_string);
    asset.description = a.str("description");
    if (a.has("tags")) asset.tags = a.strings("tags");
    a.finish();
    m.assets.push_back(std::move(asset));
  }

  const Json& flows = r.array("flows");
  for (std::size_t k = 0; k < flows.size(); ++k) {
    Reader f(flows[k], indexed("flows", k));
    DataFlow flow;
    flow.id = f.str("id");
    flow.source = f.str("source");
    flow.target = f.str("target");
    flow.channel = f.word("channel", channel_from_string);
    flow.crosses_trust_boundary = f.boolean("crosses_trust_boundary");
    f.finish();
    m.flows.push_back(std::move(flow));
  }

  const Json& boundaries = r.array("boundaries");
  for (std::size_t k = 0; k < boundaries.size(); ++k) {
    Reader b(boundaries[k], indexed("boundaries", k));
    TrustBoundary boundary;
    boundary.id = b.str("id");
    boundary.name = b.str("name");
    boundary.members = b.strings("members");
    b.finish();
    m.boundaries.push_back(std::move(boundary));
  }

  const Json& threats = r.array("threats");
  for (std::size_t k = 0; k < threats.size(); ++k)
    m.threats.push_back(threat_from_json(threats[k], indexed("threats", k)));

  const Json& personas = r.array("personas");
  for (std::size_t k = 0; k < personas.size(); ++k) {
    Reader p(personas[k], indexed("personas", k));
    AttackerPersona persona;
    persona.id = p.str("id");
    persona.name = p.str("name");
    persona.goal = p.str("goal");
    persona.tree = p.str("tree");
    p.finish();
    m.personas.push_back(std::move(persona));
  }

  const Json& trees = r.array("trees");
  for (std::size_t k = 0; k < trees.size(); ++k)
    m.trees.push_back(tree_from_json(trees[k], indexed("trees", k)));

  const Json& events = r.array("events");
  for (std::size_t k = 0; k < events.size(); ++k) {
    Reader e(events[k], indexed("events", k));
    m.events.push_back(event_from_reader(e));
  }
  r.finish();
  return m;
}

DisclosureEvent event_from_json(const Json& doc) {
  Reader r(doc, "event");
  return event_from_reader(r);
}

std::string dump_model(const SecurityModel& model) { return to_json(model).dump(2) + "\n"; }

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t byte = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t k = 0; k < byte; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string message = e.what();
    if (auto pos = message.find("syntax error"); pos != std::string::npos)
      message = message.substr(pos);
    throw ParseError("JSON " + message, line, column);
  }
}

SecurityModel parse_model(std::string_view text) {
  SecurityModel m = model_from_json(parse_json(text));
  require_valid(m);
  return m;
}

DisclosureEvent parse_event(std::string_view text) { return event_from_json(parse_json(text)); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SecurityModel load_model(const std::filesystem::path& path) {
  return parse_model(read_file(path));
}

void save_model(const SecurityModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << dump_model(model);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

DisclosureEvent load_event(const std::filesystem::path& path) {
  return parse_event(read_file(path));
}

}  // namespace tara::io
