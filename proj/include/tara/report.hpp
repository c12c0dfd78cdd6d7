/// @file report.hpp
/// Text renderings of registers, change reports and full model reports.
/// All output is a pure function of the input values.
#pragma once

#include <string>
#include <string_view>

#include "tara/model.hpp"
#include "tara/risk.hpp"
#include "tara/update.hpp"

namespace tara::report {

enum class Format { MarkdownTable, Csv, Json, AsciiMatrix };

/// Accepts "markdown-table" (or "markdown"), "csv", "json", "ascii-matrix".
Format format_from_string(std::string_view s);

std::string render_register(const RiskRegister& reg, Format fmt);

std::string render_changes(const ChangeReport& report);

/// Assets, threats, feasibility, impact (with level definitions) and the
/// risk register, as markdown.
std::string render_full(const SecurityModel& model, const RiskMatrix& matrix);

/// Attack paths of one persona's tree with per-path feasibility.
std::string render_tree_paths(const SecurityModel& model, std::string_view persona_id);

/// RFC 4180 quoting: fields with comma, quote, CR or LF are quoted and
/// embedded quotes doubled.
std::string csv_field(std::string_view s);

}  // namespace tara::report
