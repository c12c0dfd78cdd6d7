/// @file model_io.hpp
/// JSON model files and disclosure-event files.
///
/// Saving writes keys in a fixed order with two-space indentation, so equal
/// models serialize to identical bytes. Loading rejects unknown fields.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "tara/model.hpp"

namespace tara::io {

using Json = nlohmann::ordered_json;

Json to_json(const SecurityModel& model);
Json to_json(const DisclosureEvent& event);

/// Builds a model without validating it.
SecurityModel model_from_json(const Json& doc);
DisclosureEvent event_from_json(const Json& doc);

/// Canonical text of a model: to_json(model).dump(2) plus a trailing newline.
std::string dump_model(const SecurityModel& model);

/// Parses and validates; ParseError carries line/column for syntax errors.
SecurityModel parse_model(std::string_view text);
DisclosureEvent parse_event(std::string_view text);

SecurityModel load_model(const std::filesystem::path& path);
void save_model(const SecurityModel& model, const std::filesystem::path& path);
DisclosureEvent load_event(const std::filesystem::path& path);

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Parses JSON text, translating syntax errors to ParseError(line, column).
Json parse_json(std::string_view text);

}  // namespace tara::io
