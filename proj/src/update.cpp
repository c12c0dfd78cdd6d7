#include "tara/update.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <set>

#include "tara/error.hpp"

namespace tara {

namespace {

struct FieldValue {
  std::string field;
  std::string value;
};

std::vector<FieldValue> threat_fields(const Threat& t, const impact::Weights& weights,
                                      const RiskMatrix& matrix) {
  std::vector<FieldValue> out;
  out.push_back({"details", t.details});
  out.push_back({"category", std::string(to_string(t.category))});
  out.push_back({"source", t.source});
  out.push_back({"attack_method", t.attack_method});
  out.push_back({"physical", t.physical ? "true" : "false"});
  for (std::string_view key : cvss::kMetricKeys)
    out.push_back({std::string(key), cvss::metric_letter(t.metrics, key)});
  static constexpr const char* kImpactFields[] = {"i_s", "i_o", "i_f", "i_p"};
  for (std::size_t k = 0; k < 4; ++k)
    out.push_back({kImpactFields[k], std::string(impact::to_string(t.impact.get(
                                         impact::kObjectives[k])))});

  const cvss::Score temporal = cvss::temporal_score(t.metrics);
  const cvss::Severity feasibility = cvss::severity(temporal);
  const impact::ImpactScore score = impact::impact_score(t.impact, weights);
  const impact::Rating rating = impact::impact_rating(score);
  out.push_back({"cvss_temporal", temporal.str()});
  out.push_back({"feasibility", std::string(cvss::to_string(feasibility))});
  out.push_back({"impact_score", score.str()});
  out.push_back({"impact", std::string(impact::to_string(rating))});
  out.push_back({"risk", std::string(to_string(matrix.lookup(feasibility, rating)))});
  return out;
}

std::map<int, const Threat*> by_id(const SecurityModel& m) {
  std::map<int, const Threat*> out;
  for (const Threat& t : m.threats) out.emplace(t.id, &t);
  return out;
}

void check_event(const SecurityModel& model, const DisclosureEvent& e) {
  if (e.targets.empty()) throw EventError("event '" + e.id + "' has no targets");
  if (e.metric_overrides.empty() && e.impact_overrides.empty())
    throw EventError("event '" + e.id + "' has no overrides");
  for (int target : e.targets) {
    try {
      threat_by_id(model, target);
    } catch (const NotFoundError&) {
      throw EventError("event '" + e.id + "' targets unknown threat " + std::to_string(target));
    }
  }
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// Whole-word occurrence of `needle` in `haystack`; both lower-case.
bool contains_word(const std::string& haystack, const std::string& needle) {
  if (needle.empty()) return false;
  for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + 1)) {
    const bool left_ok = pos == 0 || !is_word_char(haystack[pos - 1]);
    const std::size_t end = pos + needle.size();
    const bool right_ok = end == haystack.size() || !is_word_char(haystack[end]);
    if (left_ok && right_ok) return true;
  }
  return false;
}

std::vector<std::string> channel_keywords(Channel c) {
  switch (c) {
    case Channel::InternalBus: return {"internal-bus", "can bus"};
    case Channel::Usb: return {"usb"};
    case Channel::Bluetooth: return {"bluetooth"};
    case Channel::Wifi: return {"wifi", "wi-fi"};
    case Channel::GpsRf: return {"gps-rf", "gps"};
    case Channel::Cellular: return {"cellular"};
    case Channel::Physical: return {"physical"};
  }
  return {};
}

std::set<std::string> asset_keywords(const SecurityModel& model, const std::string& asset_id) {
  std::set<std::string> out{lower(asset_id)};
  if (const Asset* a = find_asset(model, asset_id)) {
    out.insert(lower(a->name));
    for (const std::string& tag : a->tags) out.insert(lower(tag));
  }
  for (const DataFlow& f : model.flows)
    if (f.source == asset_id || f.target == asset_id)
      for (std::string& k : channel_keywords(f.channel)) out.insert(std::move(k));
  return out;
}

// Fields where `cve` differs from `current`; undefined CVE temporal metrics
// are treated as silent rather than as a request to reset.
cvss::MetricOverrides differing(const cvss::MetricSet& current, const cvss::MetricSet& cve) {
  cvss::MetricOverrides o;
  if (cve.av != current.av) o.av = cve.av;
  if (cve.ac != current.ac) o.ac = cve.ac;
  if (cve.pr != current.pr) o.pr = cve.pr;
  if (cve.ui != current.ui) o.ui = cve.ui;
  if (cve.s != current.s) o.s = cve.s;
  if (cve.c != current.c) o.c = cve.c;
  if (cve.i != current.i) o.i = cve.i;
  if (cve.a != current.a) o.a = cve.a;
  if (cve.e != cvss::ExploitMaturity::NotDefined && cve.e != current.e) o.e = cve.e;
  if (cve.rl != cvss::RemediationLevel::NotDefined && cve.rl != current.rl) o.rl = cve.rl;
  if (cve.rc != cvss::ReportConfidence::NotDefined && cve.rc != current.rc) o.rc = cve.rc;
  return o;
}

std::string record_path(std::size_t index) { return "record " + std::to_string(index); }

std::string string_field(const nlohmann::json& rec, const char* key, std::size_t index,
                         bool required) {
  auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) {
    if (required) throw ParseError(record_path(index) + ": missing field '" + key + "'");
    return {};
  }
  if (!it->is_string())
    throw ParseError(record_path(index) + ": field '" + key + "' must be a string");
  return it->get<std::string>();
}

}  // namespace

std::string_view ChangeRow::kind() const {
  if (field == "threat" && before == "absent") return "added";
  if (field == "threat" && after == "absent") return "removed";
  return "changed";
}

ChangeReport diff(const SecurityModel& a, const SecurityModel& b, const RiskMatrix& matrix) {
  ChangeReport report;
  report.before_version = a.model_version;
  report.after_version = b.model_version;
  const auto left = by_id(a);
  const auto right = by_id(b);
  std::set<int> ids;
  for (const auto& [id, t] : left) ids.insert(id);
  for (const auto& [id, t] : right) ids.insert(id);

  for (int id : ids) {
    auto l = left.find(id);
    auto r = right.find(id);
    if (l == left.end() || r == right.end()) {
      const bool added = l == left.end();
      report.rows.push_back({id, "threat", added ? "absent" : "present",
                             added ? "present" : "absent"});
      continue;
    }
    const auto before = threat_fields(*l->second, a.weights, matrix);
    const auto after = threat_fields(*r->second, b.weights, matrix);
    for (std::size_t k = 0; k < before.size(); ++k)
      if (before[k].value != after[k].value)
        report.rows.push_back({id, before[k].field, before[k].value, after[k].value});
  }
  return report;
}

AppliedEvent apply_event(const SecurityModel& model, const RiskMatrix& matrix,
                         const DisclosureEvent& event) {
  require_valid(model);
  check_event(model, event);
  SecurityModel next = model;
  for (Threat& t : next.threats) {
    if (std::find(event.targets.begin(), event.targets.end(), t.id) == event.targets.end())
      continue;
    t.metrics = event.metric_overrides.applied_to(t.metrics);
    t.impact = event.impact_overrides.applied_to(t.impact);
  }
  next.model_version = model.model_version + 1;
  next.events.push_back(event);
  ChangeReport report = diff(model, next, matrix);
  return {std::move(next), std::move(report)};
}

DisclosureEvent inverse_event(const SecurityModel& model, const DisclosureEvent& event) {
  if (event.targets.size() != 1)
    throw EventError("inverse of event '" + event.id + "' needs exactly one target");
  const Threat& t = threat_by_id(model, event.targets.front());
  DisclosureEvent inv;
  inv.id = event.id + "-revert";
  inv.reference = event.reference;
  inv.timestamp = event.timestamp;
  inv.targets = event.targets;

  const cvss::MetricOverrides& o = event.metric_overrides;
  cvss::MetricOverrides& r = inv.metric_overrides;
  if (o.av) r.av = t.metrics.av;
  if (o.ac) r.ac = t.metrics.ac;
  if (o.pr) r.pr = t.metrics.pr;
  if (o.ui) r.ui = t.metrics.ui;
  if (o.s) r.s = t.metrics.s;
  if (o.c) r.c = t.metrics.c;
  if (o.i) r.i = t.metrics.i;
  if (o.a) r.a = t.metrics.a;
  if (o.e) r.e = t.metrics.e;
  if (o.rl) r.rl = t.metrics.rl;
  if (o.rc) r.rc = t.metrics.rc;

  const impact::ImpactOverrides& io = event.impact_overrides;
  if (io.safety) inv.impact_overrides.safety = t.impact.safety;
  if (io.operational) inv.impact_overrides.operational = t.impact.operational;
  if (io.financial) inv.impact_overrides.financial = t.impact.financial;
  if (io.privacy) inv.impact_overrides.privacy = t.impact.privacy;
  return inv;
}

IngestResult ingest_cve(const nlohmann::json& feed, const SecurityModel& model) {
  const nlohmann::json* records = &feed;
  if (feed.is_object()) {
    auto it = feed.find("records");
    if (it == feed.end()) throw ParseError("CVE feed object has no 'records' list");
    records = &*it;
  }
  if (!records->is_array()) throw ParseError("CVE feed must be a list of records");

  static const std::regex kUtc(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z)");
  IngestResult result;
  std::vector<CandidateEvent> candidates;

  for (std::size_t index = 0; index < records->size(); ++index) {
    const nlohmann::json& rec = (*records)[index];
    if (!rec.is_object()) throw ParseError(record_path(index) + ": record must be an object");
    const std::string cve_id = string_field(rec, "cve_id", index, true);
    const std::string description = string_field(rec, "description", index, false);
    const std::string vector = string_field(rec, "cvss31_vector", index, false);
    const std::string published = string_field(rec, "published", index, false);
    std::string text = lower(description);
    if (auto it = rec.find("affected"); it != rec.end() && !it->is_null()) {
      if (!it->is_array())
        throw ParseError(record_path(index) + ": field 'affected' must be a list");
      for (const auto& product : *it) {
        if (!product.is_string())
          throw ParseError(record_path(index) + ": affected products must be strings");
        text += "\n" + lower(product.get<std::string>());
      }
    }

    if (vector.empty()) {
      result.warnings.push_back(cve_id + ": no CVSS v3.1 vector, skipped");
      continue;
    }
    cvss::MetricSet cve_metrics;
    try {
      cve_metrics = cvss::parse_vector(vector);
    } catch (const ParseError& e) {
      result.warnings.push_back(cve_id + ": not a CVSS v3.1 vector (" + e.what() + "), skipped");
      continue;
    }
    if (cve_metrics.has_environmental()) {
      result.warnings.push_back(cve_id + ": environmental metrics present, skipped");
      continue;
    }

    // Group matching threats by the overrides they would receive.
    std::map<std::string, CandidateEvent> groups;
    std::vector<std::string> group_order;
    bool matched_any = false;
    std::vector<const Threat*> threats;
    for (const Threat& t : model.threats) threats.push_back(&t);
    std::sort(threats.begin(), threats.end(),
              [](const Threat* x, const Threat* y) { return x->id < y->id; });
    for (const Threat* t : threats) {
      std::vector<std::string> hits;
      for (const std::string& keyword : asset_keywords(model, t->source))
        if (contains_word(text, keyword)) hits.push_back(keyword);
      if (hits.empty()) continue;
      matched_any = true;
      cvss::MetricOverrides o = differing(t->metrics, cve_metrics);
      if (o.empty()) continue;
      const std::string key = cvss::format_overrides(o);
      auto [it, inserted] = groups.try_emplace(key);
      CandidateEvent& c = it->second;
      if (inserted) {
        group_order.push_back(key);
        c.event.reference = cve_id;
        c.event.timestamp = std::regex_match(published, kUtc) ? published : "1970-01-01T00:00:00Z";
        c.event.metric_overrides = o;
        c.event.rationale["cvss"] = cve_id + " publishes " + vector;
      }
      c.event.targets.push_back(t->id);
      for (std::string& h : hits)
        if (std::find(c.matched_keywords.begin(), c.matched_keywords.end(), h) ==
            c.matched_keywords.end())
          c.matched_keywords.push_back(std::move(h));
    }
    if (!matched_any) continue;
    if (groups.empty()) {
      result.warnings.push_back(cve_id + ": matching threats already reflect the vector");
      continue;
    }
    for (std::size_t g = 0; g < group_order.size(); ++g) {
      CandidateEvent c = std::move(groups.at(group_order[g]));
      c.event.id = group_order.size() == 1 ? cve_id : cve_id + "-" + std::to_string(g + 1);
      std::sort(c.matched_keywords.begin(), c.matched_keywords.end());
      c.match_count = static_cast<int>(c.matched_keywords.size());
      candidates.push_back(std::move(c));
    }
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const CandidateEvent& x, const CandidateEvent& y) {
                     return x.match_count > y.match_count;
                   });
  result.candidates = std::move(candidates);
  return result;
}

}  // namespace tara
