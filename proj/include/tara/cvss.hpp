/// @file cvss.hpp
/// CVSS v3.1 vector parsing and base/temporal scoring.
///
/// Scores are held as integer tenths so that round-up and severity banding
/// never depend on floating-point ties.
#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace tara::cvss {

enum class AttackVector { Network, Adjacent, Local, Physical };
enum class AttackComplexity { Low, High };
enum class PrivilegesRequired { None, Low, High };
enum class UserInteraction { None, Required };
enum class Scope { Unchanged, Changed };
enum class CiaImpact { None, Low, High };
enum class ExploitMaturity { NotDefined, Unproven, ProofOfConcept, Functional, High };
enum class RemediationLevel { NotDefined, OfficialFix, TemporaryFix, Workaround, Unavailable };
enum class ReportConfidence { NotDefined, Unknown, Reasonable, Confirmed };

/// One threat's base + temporal metric values. Environmental metrics are
/// carried verbatim (key -> value letter) so vectors round-trip, but the
/// scoring functions refuse them.
struct MetricSet {
  AttackVector av = AttackVector::Network;
  AttackComplexity ac = AttackComplexity::Low;
  PrivilegesRequired pr = PrivilegesRequired::None;
  UserInteraction ui = UserInteraction::None;
  Scope s = Scope::Unchanged;
  CiaImpact c = CiaImpact::None;
  CiaImpact i = CiaImpact::None;
  CiaImpact a = CiaImpact::None;
  ExploitMaturity e = ExploitMaturity::NotDefined;
  RemediationLevel rl = RemediationLevel::NotDefined;
  ReportConfidence rc = ReportConfidence::NotDefined;
  std::map<std::string, std::string> environmental;

  bool operator==(const MetricSet&) const = default;

  bool has_environmental() const;
};

/// Subset of a MetricSet; only the present fields are overridden when applied.
struct MetricOverrides {
  std::optional<AttackVector> av;
  std::optional<AttackComplexity> ac;
  std::optional<PrivilegesRequired> pr;
  std::optional<UserInteraction> ui;
  std::optional<Scope> s;
  std::optional<CiaImpact> c;
  std::optional<CiaImpact> i;
  std::optional<CiaImpact> a;
  std::optional<ExploitMaturity> e;
  std::optional<RemediationLevel> rl;
  std::optional<ReportConfidence> rc;

  bool operator==(const MetricOverrides&) const = default;

  bool empty() const;
  MetricSet applied_to(MetricSet m) const;
};

/// Score in [0.0, 10.0] with one decimal, stored as tenths.
class Score {
 public:
  constexpr Score() = default;
  static Score from_tenths(int tenths);

  constexpr int tenths() const { return tenths_; }
  double value() const { return tenths_ / 10.0; }
  std::string str() const;

  constexpr auto operator<=>(const Score&) const = default;

 private:
  explicit constexpr Score(int tenths) : tenths_(tenths) {}
  int tenths_ = 0;
};

enum class Severity { None, Low, Medium, High, Critical };

/// Parses "CVSS:3.1/AV:N/..." or the bare "AV:N/..." form, metrics in any
/// order. Throws ParseError with the byte offset of the offending token.
MetricSet parse_vector(std::string_view text);

/// Parses a partial vector ("S:C/E:P"); base metrics are optional and
/// environmental metrics are rejected.
MetricOverrides parse_overrides(std::string_view text);

/// Canonical "CVSS:3.1/AV:../RC:.." form; X-valued metrics are omitted.
std::string format_vector(const MetricSet& m);

/// Canonical partial form without the "CVSS:3.1/" prefix.
std::string format_overrides(const MetricOverrides& o);

/// Smallest one-decimal value >= x, using the integer guard from the CVSS
/// v3.1 reference so that e.g. 4.000000001 rounds to 4.0 and not 4.1.
Score roundup(double x);

Score base_score(const MetricSet& m);
Score temporal_score(const MetricSet& m);

Severity severity(Score s);

// Letter/word rendering for reports and serialization.
std::string_view to_string(Severity s);
Severity severity_from_string(std::string_view s);

/// Metric value letter for a canonical key ("AV", "E", ...), e.g. "P".
std::string metric_letter(const MetricSet& m, std::string_view key);

/// The eleven base+temporal keys in canonical order.
inline constexpr std::string_view kMetricKeys[] = {"AV", "AC", "PR", "UI", "S",  "C",
                                                   "I",  "A",  "E",  "RL", "RC"};

}  // namespace tara::cvss
