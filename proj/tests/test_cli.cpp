#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "tara/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tara");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = tara::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return fixtures::data(name).string(); }

}  // namespace

TEST_CASE("validate") {
  const Result r = run({"validate", data("ivi-v1.json")});
  CHECK(r.code == 0);
  CHECK(run({"validate", data("missing.json")}).code == 1);
}

TEST_CASE("assess") {
  const Result r = run({"assess", data("ivi-v1.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("| 9146 | 3.9 | Low | Low | Medium |") != std::string::npos);

  const Result csv = run({"assess", data("ivi-v1.json"), "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.starts_with("threat_id,"));

  CHECK(run({"assess", "missing.json"}).code == 1);
  CHECK(run({"assess", data("ivi-v1.json"), "--format", "xml"}).code == 2);
  CHECK(run({"assess"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("assess writes to a file") {
  const auto path = std::filesystem::temp_directory_path() / "tara-cli-assess.md";
  CHECK(run({"assess", data("ivi-v1.json"), "--out", path.string()}).code == 0);
  CHECK(tara::io::read_file(path) == run({"assess", data("ivi-v1.json")}).out);
  std::filesystem::remove(path);
}

TEST_CASE("help exits 0") { CHECK(run({"--help"}).code == 0); }

TEST_CASE("report and tree-paths") {
  const Result r = run({"report", data("ivi-v1.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("Light and moderate injuries") != std::string::npos);
  CHECK(run({"tree-paths", data("ivi-v1.json"), "--persona", "persona-a"}).code == 0);
  CHECK(run({"tree-paths", data("ivi-v1.json"), "--persona", "nobody"}).code == 1);
  CHECK(run({"tree-paths", data("ivi-v1.json")}).code == 2);
}

TEST_CASE("apply-event and diff") {
  const auto out = std::filesystem::temp_directory_path() / "tara-cli-v2.json";
  const Result a = run({"apply-event", data("ivi-v1.json"), data("tesla-jailbreak-event.json"),
                        "--out", out.string()});
  CHECK(a.code == 0);
  CHECK(a.out.find("Medium -> High") != std::string::npos);
  CHECK(tara::io::load_model(out).model_version == 2);
  std::filesystem::remove(out);
  CHECK(run({"apply-event", data("ivi-v1.json"), data("tesla-jailbreak-event.json")}).code == 2);

  const Result d = run({"diff", data("ivi-v1.json"), data("ivi-v2.json")});
  CHECK(d.code == 0);
  CHECK(d.out.find("| 9146 | risk | Medium -> High |") != std::string::npos);
}

TEST_CASE("import-cve") {
  const Result r = run({"import-cve", data("ivi-v1.json"), data("cve-feed-sample.json")});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out)["candidates"];
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["event"]["targets"] == nlohmann::json::array({9042}));
  CHECK(doc[0]["event"]["metric_overrides"] == "E:P/RL:T");
  CHECK(r.err.find("CVE-2099-0002") != std::string::npos);
  CHECK(run({"import-cve", data("ivi-v1.json"), data("ivi-v1.json")}).code == 1);
}

TEST_CASE("every subcommand is byte-deterministic") {
  const std::vector<std::vector<std::string>> commands = {
      {"validate", data("ivi-v1.json")},
      {"assess", data("ivi-v1.json"), "--format", "json"},
      {"assess", data("ivi-v2.json"), "--format", "ascii-matrix"},
      {"report", data("ivi-v2.json")},
      {"tree-paths", data("ivi-v1.json"), "--persona", "persona-b"},
      {"diff", data("ivi-v1.json"), data("ivi-v2.json")},
      {"import-cve", data("ivi-v1.json"), data("cve-feed-sample.json")},
  };
  for (const auto& c : commands) {
    const Result a = run(c);
    const Result b = run(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
}
