#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace eeguide {

using Json = nlohmann::ordered_json;

// Reads one JSON value per non-blank line. Parse failures name the line.
std::vector<Json> read_jsonl(const std::string& path);

// Writes compact JSON, one value per line, LF endings, UTF-8.
void write_jsonl(const std::string& path, const std::vector<Json>& rows);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& value, int indent = 2);

}  // namespace eeguide
