#include "eeguide/text.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "eeguide/error.hpp"

namespace eeguide {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "io";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kLlm: return "llm";
    case ErrorKind::kUsage: return "usage";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::string normalize_ws(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!head(s.front())) return false;
  for (char c : s.substr(1)) {
    if (!head(c) && !(c >= '0' && c <= '9')) return false;
  }
  return true;
}

namespace {

void append_escaped(std::string& out, std::string_view s, char quote) {
  for (unsigned char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c == static_cast<unsigned char>(quote)) {
          out.push_back('\\');
          out.push_back(static_cast<char>(c));
        } else if (c < 0x20 || c == 0x7f) {
          out += fmt::format("\\x{:02x}", c);
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
}

}  // namespace

std::string quote_literal(std::string_view s) {
  std::string out = "\"";
  append_escaped(out, s, '"');
  out.push_back('"');
  return out;
}

std::string py_repr(std::string_view s) {
  bool has_single = s.find('\'') != std::string_view::npos;
  bool has_double = s.find('"') != std::string_view::npos;
  char quote = (has_single && !has_double) ? '"' : '\'';
  std::string out(1, quote);
  append_escaped(out, s, quote);
  out.push_back(quote);
  return out;
}

Utf8Index::Utf8Index(std::string_view text) {
  starts_.reserve(text.size() + 1);
  std::size_t i = 0;
  while (i < text.size()) {
    starts_.push_back(i);
    auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (lead >= 0xF0 && lead <= 0xF4) len = 4;
    else if (lead >= 0xE0) len = 3;
    else if (lead >= 0xC2 && lead < 0xE0) len = 2;
    if (len > 1) {
      bool valid = i + len <= text.size();
      for (std::size_t k = 1; valid && k < len; ++k) {
        valid = (static_cast<unsigned char>(text[i + k]) & 0xC0) == 0x80;
      }
      if (!valid) len = 1;
    }
    i += len;
  }
  starts_.push_back(text.size());
}

std::size_t Utf8Index::codepoint_at(std::size_t byte) const {
  auto it = std::lower_bound(starts_.begin(), starts_.end(), byte);
  if (it == starts_.end() || *it != byte) return npos;
  return static_cast<std::size_t>(it - starts_.begin());
}

std::string_view Utf8Index::slice(std::string_view text, std::size_t begin, std::size_t end) const {
  std::size_t b = byte_offset(begin);
  std::size_t e = byte_offset(end);
  return text.substr(b, e - b);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, fmt::format("cannot open '{}' for reading", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, fmt::format("cannot open '{}' for writing", path));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(ErrorKind::kIo, fmt::format("write to '{}' failed", path));
}

}  // namespace eeguide
