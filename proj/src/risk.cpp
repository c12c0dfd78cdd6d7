#include "tara/risk.hpp"

#include <algorithm>

#include "tara/error.hpp"
#include "tara/model.hpp"

namespace tara {

namespace {

constexpr RiskRating L = RiskRating::Low;
constexpr RiskRating M = RiskRating::Medium;
constexpr RiskRating H = RiskRating::High;
constexpr RiskRating X = RiskRating::Extreme;

std::string threat_label(int id) { return "threat " + std::to_string(id); }

void compare_recorded(const Threat& t, const RiskRow& row, std::vector<std::string>& warnings) {
  const RecordedRatings& rec = t.recorded;
  auto differs = [&](std::string_view what, std::string_view recorded, std::string_view computed) {
    warnings.push_back(threat_label(t.id) + ": recorded " + std::string(what) + " " +
                       std::string(recorded) + " differs from computed " +
                       std::string(computed));
  };
  if (rec.cvss && *rec.cvss != row.cvss_temporal)
    differs("CVSS temporal score", rec.cvss->str(), row.cvss_temporal.str());
  if (rec.feasibility && *rec.feasibility != row.feasibility)
    differs("attack feasibility", cvss::to_string(*rec.feasibility),
            std::string(cvss::to_string(row.feasibility)) + " (CVSS " + row.cvss_temporal.str() +
                ")");
  if (rec.impact && *rec.impact != row.impact)
    differs("impact rating", impact::to_string(*rec.impact), impact::to_string(row.impact));
  if (rec.risk && *rec.risk != row.risk)
    differs("risk rating", to_string(*rec.risk), to_string(row.risk));
}

}  // namespace

std::string_view to_string(RiskRating r) {
  switch (r) {
    case RiskRating::Low: return "Low";
    case RiskRating::Medium: return "Medium";
    case RiskRating::High: return "High";
    case RiskRating::Extreme: return "Extreme";
  }
  return "Low";
}

RiskRating risk_from_string(std::string_view s) {
  for (RiskRating r : {L, M, H, X})
    if (to_string(r) == s) return r;
  throw ParseError("unknown risk rating '" + std::string(s) + "'");
}

RiskMatrix::RiskMatrix(const Cells& cells) : cells_(cells) {
  for (std::size_t row = 0; row < 5; ++row)
    for (std::size_t col = 0; col < 5; ++col) {
      if (col > 0 && cells_[row][col] < cells_[row][col - 1])
        throw Error("risk matrix decreases along impact in row " + std::to_string(row));
      if (row > 0 && cells_[row][col] < cells_[row - 1][col])
        throw Error("risk matrix decreases along feasibility in column " + std::to_string(col));
    }
}

const RiskMatrix& RiskMatrix::default_matrix() {
  static const RiskMatrix kDefault(Cells{{
      {L, L, L, M, M},  // feasibility None
      {L, M, M, H, H},  // Low
      {L, M, M, H, X},  // Medium
      {M, M, H, X, X},  // High
      {M, H, H, X, X},  // Critical
  }});
  return kDefault;
}

RiskRating RiskMatrix::lookup(cvss::Severity feasibility, impact::Rating impact) const {
  return cells_[static_cast<std::size_t>(feasibility)][static_cast<std::size_t>(impact)];
}

RiskRating risk_rating(const RiskMatrix& matrix, cvss::Severity feasibility,
                       impact::Rating impact) {
  return matrix.lookup(feasibility, impact);
}

const RiskMatrix& matrix_for(const SecurityModel& model) {
  return model.matrix_override ? *model.matrix_override : RiskMatrix::default_matrix();
}

RiskRegister assess(const SecurityModel& model, const RiskMatrix& matrix) {
  require_valid(model);
  RiskRegister reg;
  reg.model_version = model.model_version;

  std::vector<const Threat*> threats;
  for (const Threat& t : model.threats) threats.push_back(&t);
  std::sort(threats.begin(), threats.end(),
            [](const Threat* a, const Threat* b) { return a->id < b->id; });

  for (const Threat* t : threats) {
    RiskRow row;
    row.threat_id = t->id;
    row.cvss_temporal = cvss::temporal_score(t->metrics);
    row.feasibility = cvss::severity(row.cvss_temporal);
    row.impact_score = impact::impact_score(t->impact, model.weights);
    row.impact = impact::impact_rating(row.impact_score);
    row.risk = matrix.lookup(row.feasibility, row.impact);
    compare_recorded(*t, row, reg.warnings);
    reg.rows.push_back(std::move(row));
  }

  for (const AttackerPersona& p : model.personas) {
    GoalRow goal{p.id, p.tree, std::nullopt, std::nullopt, ""};
    try {
      GoalFeasibility g = goal_feasibility(*find_tree(model, p.tree), model);
      goal.score = g.score;
      goal.best_path = std::move(g.best_path);
    } catch (const ScoringError& e) {
      goal.note = e.what();
    }
    reg.goals.push_back(std::move(goal));
  }
  return reg;
}

}  // namespace tara
