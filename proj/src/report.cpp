#include "tara/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tara/error.hpp"

namespace tara::report {

namespace {

using Json = nlohmann::ordered_json;

std::string md(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += sep;
    out += items[k];
  }
  return out;
}

std::string path_str(const AttackPath& path) {
  return "{" + join(std::vector<std::string>(path.leaves.begin(), path.leaves.end()), ", ") + "}";
}

void table_header(std::ostream& out, const std::vector<std::string>& cols) {
  out << "| " << join(cols, " | ") << " |\n|";
  for (std::size_t k = 0; k < cols.size(); ++k) out << "---|";
  out << '\n';
}

void table_row(std::ostream& out, const std::vector<std::string>& cells) {
  std::vector<std::string> escaped;
  for (const std::string& c : cells) escaped.push_back(md(c));
  out << "| " << join(escaped, " | ") << " |\n";
}

void register_markdown(std::ostream& out, const RiskRegister& reg) {
  table_header(out, {"Threat ID", "CVSS Score", "Attack Feasibility", "Impact Rating",
                     "Risk Rating", "Impact Score"});
  for (const RiskRow& r : reg.rows)
    table_row(out, {std::to_string(r.threat_id), r.cvss_temporal.str(),
                    std::string(cvss::to_string(r.feasibility)),
                    std::string(impact::to_string(r.impact)), std::string(to_string(r.risk)),
                    r.impact_score.str()});
  if (!reg.goals.empty()) {
    out << "\n### Attack goals\n\n";
    for (const GoalRow& g : reg.goals) {
      out << "- " << g.persona << " (tree " << g.tree << "): ";
      if (g.score)
        out << g.score->str() << " (" << cvss::to_string(cvss::severity(*g.score)) << ") via "
            << path_str(*g.best_path) << '\n';
      else
        out << "unscored: " << g.note << '\n';
    }
  }
  if (!reg.warnings.empty()) {
    out << "\n### Warnings\n\n";
    for (const std::string& w : reg.warnings) out << "- " << w << '\n';
  }
}

std::string register_csv(const RiskRegister& reg) {
  std::ostringstream out;
  out << "threat_id,cvss_temporal,attack_feasibility,impact_score,impact_rating,risk_rating\n";
  for (const RiskRow& r : reg.rows)
    out << r.threat_id << ',' << r.cvss_temporal.str() << ','
        << csv_field(cvss::to_string(r.feasibility)) << ',' << r.impact_score.str() << ','
        << csv_field(impact::to_string(r.impact)) << ',' << csv_field(to_string(r.risk))
        << "\n";
  return out.str();
}

std::string register_json(const RiskRegister& reg) {
  Json doc = Json::object();
  doc["model_version"] = reg.model_version;
  Json rows = Json::array();
  for (const RiskRow& r : reg.rows) {
    const impact::Rational& v = r.impact_score.value;
    rows.push_back(Json{
        {"threat_id", r.threat_id},
        {"cvss_temporal", r.cvss_temporal.str()},
        {"attack_feasibility", std::string(cvss::to_string(r.feasibility))},
        {"impact_score", r.impact_score.str()},
        {"impact_score_exact",
         std::to_string(v.numerator()) + "/" + std::to_string(v.denominator())},
        {"impact_rating", std::string(impact::to_string(r.impact))},
        {"risk_rating", std::string(to_string(r.risk))}});
  }
  doc["rows"] = std::move(rows);
  Json goals = Json::array();
  for (const GoalRow& g : reg.goals) {
    Json j{{"persona", g.persona}, {"tree", g.tree}};
    if (g.score) {
      j["score"] = g.score->str();
      j["best_path"] = std::vector<std::string>(g.best_path->leaves.begin(),
                                                g.best_path->leaves.end());
    } else {
      j["note"] = g.note;
    }
    goals.push_back(std::move(j));
  }
  doc["goals"] = std::move(goals);
  doc["warnings"] = reg.warnings;
  return doc.dump(2) + "\n";
}

std::string register_ascii_matrix(const RiskRegister& reg) {
  // Cell text: threat ids that land in the cell, with the cell's risk.
  std::map<std::pair<int, int>, std::vector<std::string>> placed;
  std::map<std::pair<int, int>, RiskRating> risk;
  for (const RiskRow& r : reg.rows) {
    auto key = std::make_pair(static_cast<int>(r.feasibility), static_cast<int>(r.impact));
    placed[key].push_back(std::to_string(r.threat_id));
    risk[key] = r.risk;
  }
  static constexpr const char* kNames[] = {"None", "Low", "Medium", "High", "Critical"};
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"Feasibility \\ Impact"});
  for (const char* n : kNames) grid.back().push_back(n);
  for (int row = 4; row >= 0; --row) {
    std::vector<std::string> line{kNames[row]};
    for (int col = 0; col < 5; ++col) {
      auto it = placed.find({row, col});
      if (it == placed.end()) {
        line.push_back(".");
      } else {
        line.push_back(std::string(to_string(risk.at({row, col}))) + ": " +
                       join(it->second, ","));
      }
    }
    grid.push_back(std::move(line));
  }
  std::vector<std::size_t> width(6, 0);
  for (const auto& line : grid)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  std::ostringstream out;
  auto rule = [&] {
    out << '+';
    for (std::size_t w : width) out << std::string(w + 2, '-') << '+';
    out << '\n';
  };
  out << "Risk matrix, model version " << reg.model_version << '\n';
  rule();
  for (std::size_t r = 0; r < grid.size(); ++r) {
    out << '|';
    for (std::size_t c = 0; c < grid[r].size(); ++c)
      out << ' ' << grid[r][c] << std::string(width[c] - grid[r][c].size(), ' ') << " |";
    out << '\n';
    if (r == 0) rule();
  }
  rule();
  return out.str();
}

std::string asset_name(const SecurityModel& model, const std::string& id) {
  const Asset* a = find_asset(model, id);
  return a ? a->name : id;
}

}  // namespace

Format format_from_string(std::string_view s) {
  if (s == "markdown-table" || s == "markdown") return Format::MarkdownTable;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "ascii-matrix") return Format::AsciiMatrix;
  throw ParseError("unknown report format '" + std::string(s) + "'");
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_register(const RiskRegister& reg, Format fmt) {
  switch (fmt) {
    case Format::Csv: return register_csv(reg);
    case Format::Json: return register_json(reg);
    case Format::AsciiMatrix: return register_ascii_matrix(reg);
    case Format::MarkdownTable: break;
  }
  std::ostringstream out;
  out << "## Risk register (model version " << reg.model_version << ")\n\n";
  register_markdown(out, reg);
  return out.str();
}

std::string render_changes(const ChangeReport& report) {
  std::ostringstream out;
  out << "## Changes: model version " << report.before_version << " -> "
      << report.after_version << "\n\n";
  if (report.rows.empty()) {
    out << "No changes.\n";
    return out.str();
  }
  table_header(out, {"Threat ID", "Field", "Change"});
  for (const ChangeRow& r : report.rows) {
    std::string change = r.kind() == "changed" ? r.before + " -> " + r.after
                                               : std::string(r.kind());
    table_row(out, {std::to_string(r.threat_id), r.field, change});
  }
  return out.str();
}

std::string render_full(const SecurityModel& model, const RiskMatrix& matrix) {
  const RiskRegister reg = assess(model, matrix);
  std::vector<const Threat*> threats;
  for (const Threat& t : model.threats) threats.push_back(&t);
  std::sort(threats.begin(), threats.end(),
            [](const Threat* a, const Threat* b) { return a->id < b->id; });

  std::ostringstream out;
  out << "# Security model report (model version " << model.model_version << ")\n\n";

  out << "## Assets\n\n";
  table_header(out, {"ID", "Name", "Kind", "Description"});
  for (const Asset& a : model.assets)
    table_row(out, {a.id, a.name, std::string(to_string(a.kind)), a.description});

  out << "\n## Threats\n\n";
  table_header(out, {"Components", "Threat ID", "Threat Details", "Threat Category", "Physical"});
  for (const Threat* t : threats)
    table_row(out, {asset_name(model, t->source), std::to_string(t->id), t->details,
                    std::string(to_string(t->category)), t->physical ? "yes" : "no"});

  out << "\n## Attack feasibility\n\n";
  std::vector<std::string> cols{"Threat ID"};
  for (std::string_view k : cvss::kMetricKeys) cols.emplace_back(k);
  cols.insert(cols.end(), {"CVSS Score", "Attack Feasibility"});
  table_header(out, cols);
  for (const Threat* t : threats) {
    std::vector<std::string> cells{std::to_string(t->id)};
    for (std::string_view k : cvss::kMetricKeys) cells.push_back(cvss::metric_letter(t->metrics, k));
    const cvss::Score s = cvss::temporal_score(t->metrics);
    cells.push_back(s.str());
    cells.emplace_back(cvss::to_string(cvss::severity(s)));
    table_row(out, cells);
  }

  out << "\n## Impact\n\n";
  table_header(out, {"Threat ID", "i_s", "i_o", "i_f", "i_p", "Impact Score", "Impact Rating"});
  for (const Threat* t : threats) {
    std::vector<std::string> cells{std::to_string(t->id)};
    for (impact::Objective o : impact::kObjectives)
      cells.push_back(std::to_string(impact::numeric(t->impact.get(o))));
    const impact::ImpactScore s = impact::impact_score(t->impact, model.weights);
    cells.push_back(s.str());
    cells.emplace_back(impact::to_string(impact::impact_rating(s)));
    table_row(out, cells);
  }

  out << "\n## Impact level definitions\n";
  for (const Threat* t : threats) {
    out << "\n### Threat " << t->id << "\n\n";
    for (impact::Objective o : impact::kObjectives) {
      const impact::Level level = t->impact.get(o);
      out << "- " << impact::to_string(o) << " (" << impact::to_string(level)
          << "): " << impact::describe_level(o, level) << '\n';
    }
  }

  out << "\n## Risk register\n\n";
  register_markdown(out, reg);
  return out.str();
}

std::string render_tree_paths(const SecurityModel& model, std::string_view persona_id) {
  const AttackerPersona* persona = find_persona(model, persona_id);
  if (persona == nullptr) throw NotFoundError("persona", std::string(persona_id));
  const AttackTree* tree = find_tree(model, persona->tree);
  if (tree == nullptr) throw NotFoundError("attack tree", persona->tree);

  std::ostringstream out;
  out << "## Attack paths: " << persona->name << " (" << persona->id << ")\n\n";
  out << "Goal: " << persona->goal << "\n\n";
  const std::vector<AttackPath> paths = enumerate_paths(*tree);
  table_header(out, {"#", "Leaves", "Threats", "Feasibility"});
  for (std::size_t k = 0; k < paths.size(); ++k) {
    std::vector<std::string> labels;
    std::vector<std::string> threats;
    for (const NodeId& id : paths[k].leaves) {
      const Leaf& leaf = std::get<Leaf>(tree->nodes.at(id));
      labels.push_back(leaf.label);
      threats.push_back(leaf.threat ? std::to_string(*leaf.threat) : "-");
    }
    std::string score;
    try {
      score = path_feasibility(paths[k], *tree, model).str();
    } catch (const ScoringError&) {
      score = "unscored";
    }
    table_row(out, {std::to_string(k + 1), join(labels, " AND "), join(threats, ", "), score});
  }
  out << '\n';
  try {
    const GoalFeasibility g = goal_feasibility(*tree, model);
    const auto it = std::find(paths.begin(), paths.end(), g.best_path);
    out << "Goal feasibility: " << g.score.str() << " ("
        << cvss::to_string(cvss::severity(g.score)) << ") via path "
        << (it - paths.begin()) + 1 << '\n';
  } catch (const ScoringError& e) {
    out << "Goal feasibility: unscored (" << e.what() << ")\n";
  }
  return out.str();
}

}  // namespace tara::report
