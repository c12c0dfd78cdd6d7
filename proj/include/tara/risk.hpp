/// @file risk.hpp
/// 5x5 risk matrix (attack feasibility x impact rating) and the risk
/// register produced by assessing a whole model.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tara/attack_tree.hpp"
#include "tara/cvss.hpp"
#include "tara/impact.hpp"

namespace tara {

struct SecurityModel;

enum class RiskRating { Low, Medium, High, Extreme };

std::string_view to_string(RiskRating r);
RiskRating risk_from_string(std::string_view s);

/// Rows are feasibility None..Critical, columns impact rating None..Critical.
/// Every matrix is total and nondecreasing along both axes; the constructor
/// rejects anything else.
class RiskMatrix {
 public:
  using Cells = std::array<std::array<RiskRating, 5>, 5>;

  explicit RiskMatrix(const Cells& cells);

  static const RiskMatrix& default_matrix();

  RiskRating lookup(cvss::Severity feasibility, impact::Rating impact) const;
  const Cells& cells() const { return cells_; }

  bool operator==(const RiskMatrix&) const = default;

 private:
  Cells cells_;
};

RiskRating risk_rating(const RiskMatrix& matrix, cvss::Severity feasibility,
                       impact::Rating impact);

struct RiskRow {
  int threat_id = 0;
  cvss::Score cvss_temporal;
  cvss::Severity feasibility = cvss::Severity::None;
  impact::ImpactScore impact_score;
  impact::Rating impact = impact::Rating::None;
  RiskRating risk = RiskRating::Low;

  bool operator==(const RiskRow&) const = default;
};

/// Informational per-persona attack-goal line.
struct GoalRow {
  std::string persona;
  std::string tree;
  std::optional<cvss::Score> score;
  std::optional<AttackPath> best_path;
  std::string note;  // set when the goal could not be scored

  bool operator==(const GoalRow&) const = default;
};

struct RiskRegister {
  int model_version = 1;
  std::vector<RiskRow> rows;  // ascending threat id
  std::vector<GoalRow> goals;
  std::vector<std::string> warnings;  // disagreements with recorded ratings

  bool operator==(const RiskRegister&) const = default;
};

/// The model's matrix override, or the default matrix.
const RiskMatrix& matrix_for(const SecurityModel& model);

/// Scores every threat and rates it through the matrix. Throws
/// ValidationError when the model has validation errors.
RiskRegister assess(const SecurityModel& model, const RiskMatrix& matrix);

}  // namespace tara
