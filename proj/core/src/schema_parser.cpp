#include <fmt/format.h>

#include "eeguide/codefmt.hpp"
#include "eeguide/error.hpp"
#include "eeguide/text.hpp"

namespace eeguide {

namespace {

[[noreturn]] void schema_error(std::size_t line, const std::string& what) {
  fail(ErrorKind::kValidation, fmt::format("schema line {}: {}", line + 1, what));
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (lines.size() > 1 && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

ParsedSchema parse_schema(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.size() < 3) schema_error(0, "block is too short");
  if (lines[0] != "@dataclass") schema_error(0, "expected '@dataclass'");

  ParsedSchema out;
  std::string_view header = lines[1];
  if (!header.starts_with("class ") || !header.ends_with("):")) schema_error(1, "expected 'class NAME(NAME):'");
  header = header.substr(6, header.size() - 8);
  auto open = header.find('(');
  if (open == std::string_view::npos) schema_error(1, "expected '(' in class header");
  out.class_name = std::string(header.substr(0, open));
  out.parent = std::string(header.substr(open + 1));
  if (!is_identifier(out.class_name) || !is_identifier(out.parent)) schema_error(1, "class or parent is not a NAME");

  std::size_t i = 2;
  constexpr std::string_view kIndent = "    ";
  if (lines[i].starts_with("    \"\"\"")) {
    // Docstring may span lines; it ends at the first unescaped triple quote.
    std::string body;
    std::string_view rest = lines[i].substr(7);
    bool closed = false;
    while (true) {
      for (std::size_t k = 0; k < rest.size(); ++k) {
        if (rest[k] == '\\' && k + 1 < rest.size()) {
          char next = rest[k + 1];
          if (next == '\\' || next == '"') {
            body.push_back(next);
          } else {
            body.push_back('\\');
            body.push_back(next);
          }
          ++k;
          continue;
        }
        if (rest.substr(k).starts_with("\"\"\"")) {
          if (!trim(rest.substr(k + 3)).empty()) schema_error(i, "text after closing docstring quotes");
          closed = true;
          break;
        }
        body.push_back(rest[k]);
      }
      if (closed) break;
      if (++i >= lines.size()) schema_error(i - 1, "unterminated docstring");
      body.push_back('\n');
      rest = lines[i];
    }
    out.docstring = std::move(body);
    ++i;
  }

  for (; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.starts_with(kIndent)) schema_error(i, "field lines are indented by four spaces");
    line.remove_prefix(kIndent.size());
    ParsedField field;
    auto hash = line.find('#');
    if (hash != std::string_view::npos) {
      std::string_view comment = line.substr(hash + 1);
      if (comment.starts_with(' ')) comment.remove_prefix(1);
      field.comment = std::string(comment);
      line = line.substr(0, hash);
    }
    line = trim(line);
    auto colon = line.find(':');
    if (colon == std::string_view::npos) schema_error(i, "expected 'NAME: TYPE'");
    field.name = std::string(trim(line.substr(0, colon)));
    field.type = std::string(trim(line.substr(colon + 1)));
    if (!is_identifier(field.name)) schema_error(i, fmt::format("field '{}' is not a NAME", field.name));
    bool first = out.fields.empty();
    if (first && (field.name != "mention" || field.type != "str")) {
      schema_error(i, "first field must be 'mention: str'");
    }
    if (!first && (field.name == "mention" || field.type != "List")) {
      schema_error(i, fmt::format("field '{}' must be typed List", field.name));
    }
    for (const auto& f : out.fields) {
      if (f.name == field.name) schema_error(i, fmt::format("duplicate field '{}'", field.name));
    }
    out.fields.push_back(std::move(field));
  }
  if (out.fields.empty()) schema_error(i, "missing 'mention: str' field");
  return out;
}

}  // namespace eeguide
