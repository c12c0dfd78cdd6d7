/// @file update.hpp
/// Event-driven re-assessment: applying disclosure events to produce a new
/// model version, diffing two versions, and turning CVE feed records into
/// candidate events for analyst review.
#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tara/model.hpp"
#include "tara/risk.hpp"

namespace tara {

/// One changed value. A threat present on only one side is a single row with
/// field "threat" and the values "absent"/"present".
struct ChangeRow {
  int threat_id = 0;
  std::string field;
  std::string before;
  std::string after;

  bool operator==(const ChangeRow&) const = default;

  /// "added", "removed" or "changed".
  std::string_view kind() const;
};

struct ChangeReport {
  int before_version = 0;
  int after_version = 0;
  std::vector<ChangeRow> rows;  // ascending threat id, fixed field order

  bool empty() const { return rows.empty(); }
  bool operator==(const ChangeReport&) const = default;
};

struct AppliedEvent {
  SecurityModel model;
  ChangeReport report;
};

/// Applies `event` to its target threats and bumps the model version.
/// Throws EventError for an event without targets or overrides, or with an
/// unknown target; ValidationError if `model` is invalid.
AppliedEvent apply_event(const SecurityModel& model, const RiskMatrix& matrix,
                         const DisclosureEvent& event);

/// Event restoring the targets' current values for every field `event`
/// overrides. Applying `event` then its inverse leaves assessments unchanged.
DisclosureEvent inverse_event(const SecurityModel& model, const DisclosureEvent& event);

/// Field-wise comparison of threats and their assessed values.
ChangeReport diff(const SecurityModel& a, const SecurityModel& b, const RiskMatrix& matrix);

struct CandidateEvent {
  DisclosureEvent event;
  int match_count = 0;
  std::vector<std::string> matched_keywords;
};

struct IngestResult {
  std::vector<CandidateEvent> candidates;  // descending match count
  std::vector<std::string> warnings;
};

/// Matches CVE records against threats by keyword (source asset id, name,
/// tags, and the channels of flows touching the asset; case-insensitive,
/// whole words) and proposes overrides where the record's v3.1 vector
/// differs from a threat's metrics. Temporal metrics the record leaves
/// undefined are not proposed. Throws ParseError for a malformed feed.
IngestResult ingest_cve(const nlohmann::json& feed, const SecurityModel& model);

}  // namespace tara
