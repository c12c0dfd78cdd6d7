#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "tara/error.hpp"
#include "tara/report.hpp"

using namespace tara;
using report::Format;

namespace {

RiskRegister register_of(const SecurityModel& m) { return assess(m, matrix_for(m)); }

using Tuple = std::tuple<std::string, std::string, std::string, std::string, std::string>;

// (threat, cvss, feasibility, impact, risk) from each rendering.
std::vector<Tuple> from_csv(const std::string& text) {
  std::vector<Tuple> out;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    out.emplace_back(f[0], f[1], f[2], f[4], f[5]);
  }
  return out;
}

std::vector<Tuple> from_markdown(const std::string& text) {
  std::vector<Tuple> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (!line.starts_with("|")) {
      if (n > 0) break;
      continue;
    }
    if (n++ < 2) continue;
    std::vector<std::string> f;
    std::stringstream ls(line.substr(2));
    for (std::string cell; std::getline(ls, cell, '|');) {
      while (!cell.empty() && cell.back() == ' ') cell.pop_back();
      while (!cell.empty() && cell.front() == ' ') cell.erase(0, 1);
      f.push_back(cell);
    }
    out.emplace_back(f[0], f[1], f[2], f[3], f[4]);
  }
  return out;
}

std::vector<Tuple> from_json(const std::string& text) {
  std::vector<Tuple> out;
  const auto doc = nlohmann::json::parse(text);
  for (const auto& r : doc["rows"])
    out.emplace_back(std::to_string(r["threat_id"].get<int>()),
                     r["cvss_temporal"].get<std::string>(),
                     r["attack_feasibility"].get<std::string>(),
                     r["impact_rating"].get<std::string>(), r["risk_rating"].get<std::string>());
  return out;
}

}  // namespace

TEST_CASE("markdown rows") {
  const std::string v1 = report::render_register(register_of(fixtures::ivi_v1()),
                                                 Format::MarkdownTable);
  CHECK(v1.find("| 9146 | 3.9 | Low | Low | Medium | 0.0077 |") != std::string::npos);
  CHECK(v1.find("| 9132 | 6.7 | Medium | Critical | Extreme |") != std::string::npos);
  CHECK(v1.find("### Warnings") != std::string::npos);
  CHECK(v1.find("### Attack goals") != std::string::npos);

  const std::string v2 = report::render_register(register_of(fixtures::ivi_v2()),
                                                 Format::MarkdownTable);
  CHECK(v2.find("| 9146 | 6.4 | Medium | High | High | 0.1692 |") != std::string::npos);
}

TEST_CASE("csv") {
  CHECK(report::render_register(RiskRegister{}, Format::Csv) ==
        "threat_id,cvss_temporal,attack_feasibility,impact_score,impact_rating,risk_rating\n");
  const std::string v1 = report::render_register(register_of(fixtures::ivi_v1()), Format::Csv);
  CHECK(v1.find("\n9146,3.9,Low,0.0077,Low,Medium\n") != std::string::npos);
  CHECK(report::csv_field("plain") == "plain");
  CHECK(report::csv_field("a,b") == "\"a,b\"");
  CHECK(report::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(report::csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("json") {
  const auto doc = nlohmann::json::parse(
      report::render_register(register_of(fixtures::ivi_v1()), Format::Json));
  CHECK(doc["model_version"] == 1);
  CHECK(doc["rows"].size() == 13);
  bool found = false;
  for (const auto& r : doc["rows"])
    if (r["threat_id"] == 9146) {
      found = true;
      CHECK(r["impact_score_exact"] == "1/130");
      CHECK(r["impact_score"] == "0.0077");
    }
  CHECK(found);
  CHECK(doc["warnings"].size() == 1);
}

TEST_CASE("renderings agree on every tuple") {
  for (const SecurityModel& m : {fixtures::ivi_v1(), fixtures::ivi_v2()}) {
    const RiskRegister reg = register_of(m);
    const auto csv = from_csv(report::render_register(reg, Format::Csv));
    CHECK(csv.size() == reg.rows.size());
    CHECK(csv == from_markdown(report::render_register(reg, Format::MarkdownTable)));
    CHECK(csv == from_json(report::render_register(reg, Format::Json)));
  }
}

TEST_CASE("ascii matrix places threats in cells") {
  const std::string text =
      report::render_register(register_of(fixtures::ivi_v1()), Format::AsciiMatrix);
  CHECK(text.starts_with("Risk matrix, model version 1\n"));
  std::istringstream in(text);
  std::string line;
  bool low_row = false;
  while (std::getline(in, line))
    if (line.starts_with("| Low ")) {
      low_row = true;
      CHECK(line.find("Medium: ") != std::string::npos);
      CHECK(line.find("9146") != std::string::npos);
    }
  CHECK(low_row);
}

TEST_CASE("formats") {
  CHECK(report::format_from_string("markdown") == Format::MarkdownTable);
  CHECK(report::format_from_string("markdown-table") == Format::MarkdownTable);
  CHECK(report::format_from_string("ascii-matrix") == Format::AsciiMatrix);
  CHECK_THROWS_AS(report::format_from_string("xml"), ParseError);
}

TEST_CASE("change report") {
  const ChangeReport r = diff(fixtures::ivi_v1(), fixtures::ivi_v2(), RiskMatrix::default_matrix());
  const std::string text = report::render_changes(r);
  CHECK(text.find("| 9146 | risk | Medium -> High |") != std::string::npos);
  CHECK(text.find("| 9146 | impact_score | 0.0077 -> 0.1692 |") != std::string::npos);
  CHECK(report::render_changes(ChangeReport{}).find("No changes.") != std::string::npos);
}

TEST_CASE("full report and tree paths") {
  const SecurityModel m = fixtures::ivi_v1();
  const std::string full = report::render_full(m, matrix_for(m));
  CHECK(full.find("Severe and life-threatening injuries (survival probable)") !=
        std::string::npos);
  CHECK(full.find("9146") != std::string::npos);
  CHECK(full.find("Local maps data store") != std::string::npos);

  const std::string paths = report::render_tree_paths(m, "persona-a");
  CHECK(paths.find("| 4 | Reverse engineer head unit firmware for data store keys | 9146 | 3.9 |") !=
        std::string::npos);
  CHECK(paths.find("Goal feasibility: 4.5 (Medium) via path 1") != std::string::npos);
  CHECK_THROWS_AS(report::render_tree_paths(m, "nobody"), NotFoundError);
}

TEST_CASE("output is a pure function of the input") {
  const RiskRegister reg = register_of(fixtures::ivi_v1());
  for (Format f : {Format::MarkdownTable, Format::Csv, Format::Json, Format::AsciiMatrix})
    CHECK(report::render_register(reg, f) == report::render_register(register_of(fixtures::ivi_v1()), f));
}
