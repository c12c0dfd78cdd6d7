/// @file model.hpp
/// Domain model of the system under assessment: assets, data flows, trust
/// boundaries, STRIDE threats, attacker personas, attack trees and the log
/// of applied disclosure events.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tara/attack_tree.hpp"
#include "tara/cvss.hpp"
#include "tara/impact.hpp"
#include "tara/risk.hpp"

namespace tara {

inline constexpr int kSchemaVersion = 1;

enum class AssetKind { Module, Datastore, ExternalEntity };

struct Asset {
  std::string id;
  std::string name;
  AssetKind kind = AssetKind::Module;
  std::string description;
  std::vector<std::string> tags;  // extra keywords for CVE matching

  bool operator==(const Asset&) const = default;
};

enum class Channel { InternalBus, Usb, Bluetooth, Wifi, GpsRf, Cellular, Physical };

struct DataFlow {
  std::string id;
  std::string source;
  std::string target;
  Channel channel = Channel::InternalBus;
  bool crosses_trust_boundary = false;

  bool operator==(const DataFlow&) const = default;
};

struct TrustBoundary {
  std::string id;
  std::string name;
  std::vector<std::string> members;

  bool operator==(const TrustBoundary&) const = default;
};

enum class Stride {
  Spoofing,
  Tampering,
  Repudiation,
  InformationDisclosure,
  DenialOfService,
  ElevationOfPrivilege
};

/// Ratings an analyst recorded for a threat elsewhere (e.g. a published
/// risk table). Disagreements with recomputed values become warnings.
struct RecordedRatings {
  std::optional<cvss::Score> cvss;
  std::optional<cvss::Severity> feasibility;
  std::optional<impact::Rating> impact;
  std::optional<RiskRating> risk;

  bool operator==(const RecordedRatings&) const = default;
  bool empty() const { return !cvss && !feasibility && !impact && !risk; }
};

struct Threat {
  int id = 0;
  std::string details;
  Stride category = Stride::Spoofing;
  std::string source;  // asset id
  std::string attack_method;
  cvss::MetricSet metrics;
  impact::ImpactVector impact;
  bool physical = false;
  RecordedRatings recorded;

  bool operator==(const Threat&) const = default;
};

struct AttackerPersona {
  std::string id;
  std::string name;
  std::string goal;
  std::string tree;

  bool operator==(const AttackerPersona&) const = default;
};

/// A vulnerability disclosure expressed as partial overrides of the
/// targeted threats' metrics and impact levels.
struct DisclosureEvent {
  std::string id;
  std::string reference;  // advisory / CVE id
  std::string timestamp;  // UTC, YYYY-MM-DDTHH:MM:SSZ; informational only
  std::vector<int> targets;
  cvss::MetricOverrides metric_overrides;
  impact::ImpactOverrides impact_overrides;
  std::map<std::string, std::string> rationale;  // override key -> text

  bool operator==(const DisclosureEvent&) const = default;
};

struct SecurityModel {
  int schema_version = kSchemaVersion;
  int model_version = 1;
  impact::Weights weights;
  std::optional<RiskMatrix> matrix_override;
  std::vector<Asset> assets;
  std::vector<DataFlow> flows;
  std::vector<TrustBoundary> boundaries;
  std::vector<Threat> threats;
  std::vector<AttackerPersona> personas;
  std::vector<AttackTree> trees;
  std::vector<DisclosureEvent> events;

  bool operator==(const SecurityModel&) const = default;
};

enum class IssueSeverity { Error, Warning };

struct Issue {
  IssueSeverity severity;
  std::string path;  // e.g. "threats[3].source"
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;

  std::size_t error_count() const;
  std::size_t warning_count() const;
  bool ok() const { return error_count() == 0; }
  /// One "error|warning path: message" line per issue.
  std::string str() const;
};

/// Checks identifier uniqueness and referential closure. Never throws.
ValidationReport validate(const SecurityModel& model);

/// Throws ValidationError listing every error if validate() reports any.
void require_valid(const SecurityModel& model);

const Threat& threat_by_id(const SecurityModel& model, int id);
const Asset* find_asset(const SecurityModel& model, std::string_view id);
const AttackTree* find_tree(const SecurityModel& model, std::string_view id);
const AttackerPersona* find_persona(const SecurityModel& model, std::string_view id);

std::string_view to_string(AssetKind k);
std::string_view to_string(Channel c);
std::string_view to_string(Stride s);
AssetKind asset_kind_from_string(std::string_view s);
Channel channel_from_string(std::string_view s);
Stride stride_from_string(std::string_view s);

}  // namespace tara
