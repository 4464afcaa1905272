#pragma once

#include "app/config.hpp"

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace dks::app {

using Json = nlohmann::ordered_json;
using Cell = std::variant<double, long long, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// A command's output: metadata plus either a table or a free-form JSON body
/// (tables are also emitted as JSON arrays of row objects).
struct Artifact {
    Json meta = Json::object();
    Table table;
    std::optional<Json> json_data;  ///< overrides the table in JSON output
};

/// Fills meta with tool name, version, command, embedded config text and
/// kernel backend. Called by every command before adding its own entries.
Json base_meta(const RunConfig& cfg);

/// CSV: "# key: value" lines (values as compact JSON), header row, LF endings,
/// numbers with 17 significant digits (shortest round-trip).
std::string to_csv(const Artifact& a);

/// {"meta": ..., "data": ...}, two-space indentation, trailing newline.
std::string to_json(const Artifact& a);

std::string render(const Artifact& a, Format f);

/// Human-readable table with 6 significant digits.
std::string to_text(const Table& t);

/// Recovers the embedded config text from a CSV or JSON artifact.
std::string embedded_config(const std::string& artifact_text);

void write_file(const std::string& path, const std::string& content);

} // namespace dks::app
