#include "eeguide/jsonl.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "eeguide/error.hpp"
#include "eeguide/text.hpp"

namespace eeguide {

std::vector<Json> read_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, fmt::format("cannot open '{}' for reading", path));
  std::vector<Json> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      rows.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      fail(ErrorKind::kValidation, fmt::format("{}:{}: invalid JSON: {}", path, line_no, e.what()));
    }
  }
  return rows;
}

void write_jsonl(const std::string& path, const std::vector<Json>& rows) {
  std::string out;
  for (const auto& row : rows) {
    out += row.dump(-1, ' ', false, Json::error_handler_t::replace);
    out.push_back('\n');
  }
  write_text_file(path, out);
}

Json read_json_file(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::kValidation, fmt::format("{}: invalid JSON: {}", path, e.what()));
  }
}

void write_json_file(const std::string& path, const Json& value, int indent) {
  write_text_file(path, value.dump(indent, ' ', false, Json::error_handler_t::replace) + "\n");
}

}  // namespace eeguide
