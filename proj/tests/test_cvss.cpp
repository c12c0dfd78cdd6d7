#include <doctest.h>

#include <random>

#include "oracles/cvss_reference.hpp"
#include "tara/cvss.hpp"
#include "tara/error.hpp"

using namespace tara::cvss;

namespace {

MetricSet random_metrics(std::mt19937& rng) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  MetricSet m;
  m.av = static_cast<AttackVector>(pick(4));
  m.ac = static_cast<AttackComplexity>(pick(2));
  m.pr = static_cast<PrivilegesRequired>(pick(3));
  m.ui = static_cast<UserInteraction>(pick(2));
  m.s = static_cast<Scope>(pick(2));
  m.c = static_cast<CiaImpact>(pick(3));
  m.i = static_cast<CiaImpact>(pick(3));
  m.a = static_cast<CiaImpact>(pick(3));
  m.e = static_cast<ExploitMaturity>(pick(5));
  m.rl = static_cast<RemediationLevel>(pick(5));
  m.rc = static_cast<ReportConfidence>(pick(4));
  return m;
}

oracle::Vector to_oracle(const MetricSet& m) {
  oracle::Vector v;
  v.AV = metric_letter(m, "AV");
  v.AC = metric_letter(m, "AC");
  v.PR = metric_letter(m, "PR");
  v.UI = metric_letter(m, "UI");
  v.S = metric_letter(m, "S");
  v.C = metric_letter(m, "C");
  v.I = metric_letter(m, "I");
  v.A = metric_letter(m, "A");
  v.E = metric_letter(m, "E");
  v.RL = metric_letter(m, "RL");
  v.RC = metric_letter(m, "RC");
  return v;
}

int tenths(double x) { return static_cast<int>(std::lround(x * 10)); }

}  // namespace

TEST_CASE("parse_vector reads the bare form with temporal metrics") {
  const MetricSet m = parse_vector("AV:A/AC:L/PR:N/UI:N/S:C/C:N/I:L/A:H/E:P/RL:U/RC:U");
  CHECK(m.av == AttackVector::Adjacent);
  CHECK(m.ac == AttackComplexity::Low);
  CHECK(m.pr == PrivilegesRequired::None);
  CHECK(m.ui == UserInteraction::None);
  CHECK(m.s == Scope::Changed);
  CHECK(m.c == CiaImpact::None);
  CHECK(m.i == CiaImpact::Low);
  CHECK(m.a == CiaImpact::High);
  CHECK(m.e == ExploitMaturity::ProofOfConcept);
  CHECK(m.rl == RemediationLevel::Unavailable);
  CHECK(m.rc == ReportConfidence::Unknown);
}

TEST_CASE("parse_vector defaults absent temporal metrics to X") {
  const MetricSet m = parse_vector("CVSS:3.1/AV:P/AC:H/PR:N/UI:R/S:U/C:H/I:L/A:N");
  CHECK(m.av == AttackVector::Physical);
  CHECK(m.e == ExploitMaturity::NotDefined);
  CHECK(m.rl == RemediationLevel::NotDefined);
  CHECK(m.rc == ReportConfidence::NotDefined);
}

TEST_CASE("parse_vector accepts any order") {
  CHECK(parse_vector("A:N/I:L/C:H/S:U/UI:R/PR:N/AC:H/AV:P") ==
        parse_vector("AV:P/AC:H/PR:N/UI:R/S:U/C:H/I:L/A:N"));
}

TEST_CASE("parse_vector errors") {
  SUBCASE("unknown value") {
    try {
      parse_vector("AV:Z/AC:L/PR:N/UI:N/S:U/C:N/I:N/A:N");
      FAIL("expected ParseError");
    } catch (const tara::ParseError& e) {
      CHECK(std::string(e.what()).find("unknown value Z for AV") != std::string::npos);
      CHECK(e.position() == 0);
    }
  }
  SUBCASE("position points at the token") {
    try {
      parse_vector("AV:N/AC:Q/PR:N/UI:N/S:U/C:N/I:N/A:N");
      FAIL("expected ParseError");
    } catch (const tara::ParseError& e) {
      CHECK(e.position() == 5);
    }
  }
  CHECK_THROWS_AS(parse_vector("AV:N/AC:L/PR:N/UI:N/S:U/C:N/I:N"), tara::ParseError);
  CHECK_THROWS_AS(parse_vector("AV:N/AV:L/AC:L/PR:N/UI:N/S:U/C:N/I:N/A:N"), tara::ParseError);
  CHECK_THROWS_AS(parse_vector("AV:N/AC:L/PR:N/UI:N/S:U/C:N/I:N/A:N/ZZ:Q"), tara::ParseError);
  CHECK_THROWS_AS(parse_vector("AV:N/AC:L/PR:N/UI:N/S:U/C:N/I:N/A"), tara::ParseError);
  CHECK_THROWS_AS(parse_vector("AV:N//AC:L/PR:N/UI:N/S:U/C:N/I:N/A:N"), tara::ParseError);
  CHECK_THROWS_AS(parse_vector(""), tara::ParseError);
}

TEST_CASE("format_vector canonical form") {
  CHECK(format_vector(parse_vector("CVSS:3.1/AV:P/AC:H/PR:N/UI:R/S:U/C:H/I:L/A:N")) ==
        "CVSS:3.1/AV:P/AC:H/PR:N/UI:R/S:U/C:H/I:L/A:N");
  CHECK(format_vector(parse_vector("AV:A/AC:L/PR:N/UI:N/S:C/C:N/I:L/A:H/E:P/RL:U/RC:U")) ==
        "CVSS:3.1/AV:A/AC:L/PR:N/UI:N/S:C/C:N/I:L/A:H/E:P/RL:U/RC:U");
  // explicit X is the same as absent
  CHECK(format_vector(parse_vector("AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H/E:X/RL:X/RC:X")) ==
        "CVSS:3.1/AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H");
}

TEST_CASE("environmental metrics round-trip but do not score") {
  const MetricSet m = parse_vector("AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H/CR:H/MAV:L");
  CHECK(m.has_environmental());
  CHECK(parse_vector(format_vector(m)) == m);
  CHECK_THROWS_AS(base_score(m), tara::ScoringError);
  CHECK_THROWS_AS(temporal_score(m), tara::ScoringError);
}

TEST_CASE("overrides") {
  const MetricOverrides o = parse_overrides("S:C/I:H/A:H/E:P/RL:T/RC:C");
  CHECK_FALSE(o.empty());
  CHECK(format_overrides(o) == "S:C/I:H/A:H/E:P/RL:T/RC:C");
  CHECK(parse_overrides("").empty());
  CHECK_THROWS_AS(parse_overrides("CR:H"), tara::ParseError);
  const MetricSet before = parse_vector("AV:P/AC:H/PR:N/UI:R/S:U/C:H/I:L/A:N/E:U/RL:U/RC:U");
  CHECK(format_vector(o.applied_to(before)) ==
        "CVSS:3.1/AV:P/AC:H/PR:N/UI:R/S:C/C:H/I:H/A:H/E:P/RL:T/RC:C");
}

TEST_CASE("roundup") {
  CHECK(roundup(4.02).str() == "4.1");
  CHECK(roundup(4.00).str() == "4.0");
  CHECK(roundup(8.156).str() == "8.2");
  CHECK(roundup(4.000000001).str() == "4.0");
  CHECK(roundup(0.0).str() == "0.0");
  CHECK(roundup(10.0).str() == "10.0");
}

TEST_CASE("base scores") {
  CHECK(base_score(parse_vector("AV:A/AC:L/PR:N/UI:N/S:C/C:N/I:L/A:H")).str() == "8.2");
  CHECK(base_score(parse_vector("AV:P/AC:H/PR:N/UI:R/S:U/C:H/I:L/A:N")).str() == "4.6");
  CHECK(base_score(parse_vector("AV:N/AC:L/PR:N/UI:N/S:C/C:N/I:N/A:N")).str() == "0.0");
  CHECK(base_score(parse_vector("AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H")).str() == "9.8");
  CHECK(base_score(parse_vector("AV:N/AC:L/PR:N/UI:N/S:C/C:H/I:H/A:H")).str() == "10.0");
}

TEST_CASE("temporal scores") {
  CHECK(temporal_score(parse_vector("AV:A/AC:L/PR:N/UI:N/S:C/C:N/I:L/A:H/E:P/RL:U/RC:U")).str() ==
        "7.1");
  CHECK(temporal_score(parse_vector("AV:P/AC:H/PR:N/UI:R/S:U/C:H/I:L/A:N/E:U/RL:U/RC:U")).str() ==
        "3.9");
  CHECK(temporal_score(parse_vector("AV:P/AC:H/PR:N/UI:R/S:C/C:H/I:H/A:H/E:P/RL:T/RC:C")).str() ==
        "6.4");
}

TEST_CASE("severity bands") {
  CHECK(severity(Score::from_tenths(67)) == Severity::Medium);
  CHECK(severity(Score::from_tenths(71)) == Severity::High);
  CHECK(severity(Score::from_tenths(0)) == Severity::None);
  CHECK(severity(Score::from_tenths(1)) == Severity::Low);
  CHECK(severity(Score::from_tenths(39)) == Severity::Low);
  CHECK(severity(Score::from_tenths(40)) == Severity::Medium);
  CHECK(severity(Score::from_tenths(69)) == Severity::Medium);
  CHECK(severity(Score::from_tenths(70)) == Severity::High);
  CHECK(severity(Score::from_tenths(89)) == Severity::High);
  CHECK(severity(Score::from_tenths(90)) == Severity::Critical);
  CHECK(severity(Score::from_tenths(100)) == Severity::Critical);
  for (Severity s : {Severity::None, Severity::Low, Severity::Medium, Severity::High,
                     Severity::Critical})
    CHECK(severity_from_string(to_string(s)) == s);
  CHECK_THROWS(Score::from_tenths(101));
  CHECK_THROWS(Score::from_tenths(-1));
}

TEST_CASE("base scores match the reference over every base combination") {
  int checked = 0;
  oracle::ForEachBase([&](const oracle::Vector& v) {
    const MetricSet m = parse_vector(oracle::ToString(v));
    REQUIRE(base_score(m).tenths() == tenths(oracle::BaseScore(v)));
    ++checked;
  });
  CHECK(checked == 2592);
}

TEST_CASE("property: temporal scores match the reference and never exceed base") {
  std::mt19937 rng(20240601);
  for (int k = 0; k < 5000; ++k) {
    const MetricSet m = random_metrics(rng);
    const Score b = base_score(m);
    const Score t = temporal_score(m);
    REQUIRE(t <= b);
    REQUIRE(t.tenths() == tenths(oracle::TemporalScore(to_oracle(m))));
    MetricSet plain = m;
    plain.e = ExploitMaturity::NotDefined;
    plain.rl = RemediationLevel::NotDefined;
    plain.rc = ReportConfidence::NotDefined;
    REQUIRE(temporal_score(plain) == b);
  }
}

TEST_CASE("property: raising C, I or A never lowers the base score") {
  oracle::ForEachBase([&](const oracle::Vector& v) {
    const MetricSet m = parse_vector(oracle::ToString(v));
    const Score b = base_score(m);
    for (CiaImpact MetricSet::*field : {&MetricSet::c, &MetricSet::i, &MetricSet::a}) {
      if (m.*field == CiaImpact::High) continue;
      MetricSet up = m;
      up.*field = static_cast<CiaImpact>(static_cast<int>(m.*field) + 1);
      REQUIRE(base_score(up) >= b);
    }
  });
}

TEST_CASE("property: parse and format round-trip") {
  std::mt19937 rng(7);
  for (int k = 0; k < 2000; ++k) {
    const MetricSet m = random_metrics(rng);
    const std::string text = format_vector(m);
    REQUIRE(parse_vector(text) == m);
    REQUIRE(format_vector(parse_vector(text)) == text);
  }
}
