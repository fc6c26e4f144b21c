#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace eeguide {

// Collapses every run of ASCII whitespace to a single space and trims both
// ends. Span strings are compared in this form.
std::string normalize_ws(std::string_view s);

// Python-style identifier restricted to ASCII: [A-Za-z_][A-Za-z0-9_]*.
bool is_identifier(std::string_view s);

// Double-quoted string literal with backslash escapes, e.g. "a \"b\"\n".
std::string quote_literal(std::string_view s);

// Python repr() of a str: single quotes unless the text contains a single
// quote and no double quote.
std::string py_repr(std::string_view s);

// Maps code point offsets onto byte offsets of a UTF-8 string. Invalid
// sequences count as one code point per byte.
class Utf8Index {
 public:
  explicit Utf8Index(std::string_view text);

  std::size_t size() const { return starts_.size() - 1; }
  std::size_t byte_offset(std::size_t codepoint) const { return starts_.at(codepoint); }
  // Code point index of the code point that starts at `byte`, or npos.
  std::size_t codepoint_at(std::size_t byte) const;
  std::string_view slice(std::string_view text, std::size_t begin, std::size_t end) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::size_t> starts_;  // size() + 1 entries, last == text size
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace eeguide
