#include "tara/cli.hpp"

#include <fstream>

#include <CLI11.hpp>

#include "tara/error.hpp"
#include "tara/model_io.hpp"
#include "tara/report.hpp"
#include "tara/update.hpp"

namespace tara::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot write '" + out_path + "'");
  file << text;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const SecurityModel model = io::model_from_json(io::parse_json(io::read_file(path)));
  const ValidationReport report = validate(model);
  out << report.str();
  out << report.error_count() << " error(s), " << report.warning_count() << " warning(s)\n";
  return report.ok() ? kOk : kFailure;
}

int cmd_import_cve(const std::string& model_path, const std::string& feed_path,
                   std::ostream& out, std::ostream& err) {
  const SecurityModel model = io::load_model(model_path);
  const IngestResult result = ingest_cve(io::parse_json(io::read_file(feed_path)), model);
  for (const std::string& w : result.warnings) err << "warning: " << w << '\n';
  io::Json doc = io::Json::object();
  io::Json list = io::Json::array();
  for (const CandidateEvent& c : result.candidates)
    list.push_back(io::Json{{"match_count", c.match_count},
                            {"matched_keywords", c.matched_keywords},
                            {"event", io::to_json(c.event)}});
  doc["candidates"] = std::move(list);
  out << doc.dump(2) << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Threat analysis and risk assessment for automotive security models", "tara"};
  app.require_subcommand(1);

  std::string model_path;
  std::string second_path;
  std::string out_path;
  std::string format = "markdown-table";
  std::string persona;

  auto* validate_cmd = app.add_subcommand("validate", "Check a model's referential integrity");
  validate_cmd->add_option("model", model_path, "Model file")->required();

  auto* assess_cmd = app.add_subcommand("assess", "Print the risk register");
  assess_cmd->add_option("model", model_path, "Model file")->required();
  assess_cmd->add_option("--format", format, "markdown-table | csv | json | ascii-matrix")
      ->check(CLI::IsMember({"markdown-table", "markdown", "csv", "json", "ascii-matrix"}));
  assess_cmd->add_option("--out", out_path, "Write to this file instead of stdout");

  auto* report_cmd = app.add_subcommand("report", "Print all assessment tables");
  report_cmd->add_option("model", model_path, "Model file")->required();

  auto* tree_cmd = app.add_subcommand("tree-paths", "List a persona's attack paths");
  tree_cmd->add_option("model", model_path, "Model file")->required();
  tree_cmd->add_option("--persona", persona, "Persona id")->required();

  auto* apply_cmd = app.add_subcommand("apply-event", "Apply a disclosure event");
  apply_cmd->add_option("model", model_path, "Model file")->required();
  apply_cmd->add_option("event", second_path, "Event file")->required();
  apply_cmd->add_option("--out", out_path, "Where to write the new model version")->required();

  auto* diff_cmd = app.add_subcommand("diff", "Compare two model versions");
  diff_cmd->add_option("model_a", model_path, "Earlier model")->required();
  diff_cmd->add_option("model_b", second_path, "Later model")->required();

  auto* cve_cmd = app.add_subcommand("import-cve", "Propose events from a CVE feed");
  cve_cmd->add_option("model", model_path, "Model file")->required();
  cve_cmd->add_option("feed", second_path, "CVE feed file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'tara --help' for usage\n";
    return kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(model_path, out);
    if (*assess_cmd) {
      const SecurityModel model = io::load_model(model_path);
      const RiskRegister reg = assess(model, matrix_for(model));
      emit(report::render_register(reg, report::format_from_string(format)), out_path, out);
      return kOk;
    }
    if (*report_cmd) {
      const SecurityModel model = io::load_model(model_path);
      out << report::render_full(model, matrix_for(model));
      return kOk;
    }
    if (*tree_cmd) {
      out << report::render_tree_paths(io::load_model(model_path), persona);
      return kOk;
    }
    if (*apply_cmd) {
      const SecurityModel model = io::load_model(model_path);
      const DisclosureEvent event = io::load_event(second_path);
      const AppliedEvent applied = apply_event(model, matrix_for(model), event);
      io::save_model(applied.model, out_path);
      out << report::render_changes(applied.report);
      return kOk;
    }
    if (*diff_cmd) {
      const SecurityModel a = io::load_model(model_path);
      const SecurityModel b = io::load_model(second_path);
      out << report::render_changes(diff(a, b, matrix_for(a)));
      return kOk;
    }
    if (*cve_cmd) return cmd_import_cve(model_path, second_path, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace tara::cli
