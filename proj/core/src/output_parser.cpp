#include "eeguide/output_parser.hpp"

#include <algorithm>
#include <optional>
#include <variant>

#include <fmt/format.h>

#include "eeguide/error.hpp"
#include "eeguide/parallel.hpp"
#include "eeguide/text.hpp"

namespace eeguide {

std::string_view to_string(ParseStatus s) {
  switch (s) {
    case ParseStatus::kOk: return "ok";
    case ParseStatus::kParseError: return "parse_error";
    case ParseStatus::kValidationError: return "validation_error";
  }
  return "parse_error";
}

ParseStatus parse_status_from_string(std::string_view s) {
  if (s == "ok") return ParseStatus::kOk;
  if (s == "parse_error") return ParseStatus::kParseError;
  if (s == "validation_error") return ParseStatus::kValidationError;
  fail(ErrorKind::kValidation, fmt::format("unknown parse status '{}'", s));
}

std::string_view to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::kGrammar: return "grammar";
    case DiagnosticKind::kUnknownClass: return "unknown_class";
    case DiagnosticKind::kMissingMention: return "missing_mention";
    case DiagnosticKind::kHallucinatedArgument: return "hallucinated_argument";
    case DiagnosticKind::kMissingArgument: return "missing_argument";
    case DiagnosticKind::kNonListValue: return "non_list_value";
    case DiagnosticKind::kNonStringMention: return "non_string_mention";
    case DiagnosticKind::kOffPromptClass: return "off_prompt_class";
  }
  return "grammar";
}

const std::vector<std::string>* PredictedEvent::role(std::string_view name) const {
  for (const auto& [role, values] : arguments) {
    if (role == name) return &values;
  }
  return nullptr;
}

bool PredictedEvent::same_content(const PredictedEvent& other) const {
  return event_type == other.event_type && mention == other.mention && arguments == other.arguments;
}

bool PredictionRecord::has_fatal() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) { return d.fatal; });
}

Json PredictionRecord::to_json() const {
  Json events_json = Json::array();
  for (const auto& ev : events) {
    Json args = Json::object();
    for (const auto& [role, values] : ev.arguments) args[role] = values;
    events_json.push_back({{"event_type", ev.event_type}, {"mention", ev.mention}, {"arguments", args}});
  }
  Json diags = Json::array();
  for (const auto& d : diagnostics) {
    diags.push_back({{"kind", to_string(d.kind)}, {"message", d.message}, {"fatal", d.fatal}});
  }
  return {{"instance_id", instance_id},
          {"prompted_type", prompted_type},
          {"raw_text", raw_text},
          {"status", to_string(status)},
          {"events", events_json},
          {"diagnostics", diags}};
}

namespace {

struct GrammarError {
  std::size_t offset;
  std::string what;
};

using Value = std::variant<std::string, std::vector<std::string>>;

struct Keyword {
  std::string name;
  Value value;
};

struct Call {
  std::string name;
  std::vector<Keyword> keywords;
};

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp >= 0xD800 && cp <= 0xDFFF) cp = 0xFFFD;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Recursive descent over the raw characters; the grammar needs no separate
// token stream.
class OutputGrammar {
 public:
  explicit OutputGrammar(std::string_view text) : text_(text) {}

  std::vector<Call> parse_result() {
    std::vector<Call> calls;
    expect('[');
    skip_ws();
    while (peek() != ']') {
      calls.push_back(parse_call());
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        skip_ws();
        continue;
      }
      if (peek() != ']') error("expected ',' or ']' after constructor call");
    }
    ++pos_;
    skip_ws();
    if (pos_ != text_.size()) error("unexpected text after the result list");
    return calls;
  }

 private:
  [[noreturn]] void error(std::string what) const { throw GrammarError{pos_, std::move(what)}; }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c || at_end()) error(fmt::format("expected '{}'", c));
    ++pos_;
  }

  std::string parse_name() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end()) {
      char c = text_[pos_];
      bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' ||
                (pos_ > start && c >= '0' && c <= '9');
      if (!ok) break;
      ++pos_;
    }
    if (pos_ == start) error("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  Call parse_call() {
    Call call;
    call.name = parse_name();
    expect('(');
    skip_ws();
    while (true) {
      Keyword kw;
      kw.name = parse_name();
      for (const auto& k : call.keywords) {
        if (k.name == kw.name) error(fmt::format("keyword '{}' repeated", kw.name));
      }
      expect('=');
      skip_ws();
      if (peek() == '[') {
        kw.value = parse_list();
      } else {
        kw.value = parse_string();
      }
      call.keywords.push_back(std::move(kw));
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        skip_ws();
        if (peek() == ')') break;
        continue;
      }
      if (peek() == ')') break;
      error("expected ',' or ')' in constructor call");
    }
    ++pos_;
    return call;
  }

  std::vector<std::string> parse_list() {
    std::vector<std::string> items;
    expect('[');
    skip_ws();
    while (peek() != ']' || at_end()) {
      items.push_back(parse_string());
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        skip_ws();
        continue;
      }
      if (peek() != ']' || at_end()) error("expected ',' or ']' in list");
    }
    ++pos_;
    return items;
  }

  std::string parse_string() {
    skip_ws();
    char quote = peek();
    if (at_end() || (quote != '"' && quote != '\'')) error("expected a quoted string");
    ++pos_;
    std::string out;
    while (true) {
      if (at_end()) error("unterminated string");
      char c = text_[pos_++];
      if (c == quote) break;
      if (c == '\n' || c == '\r') error("newline inside string literal");
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (at_end()) error("unterminated escape");
      char e = text_[pos_++];
      switch (e) {
        case '\n': break;  // line continuation
        case '\\': out.push_back('\\'); break;
        case '\'': out.push_back('\''); break;
        case '"': out.push_back('"'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case 'a': out.push_back('\a'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case 'v': out.push_back('\v'); break;
        case 'x': append_utf8(out, read_hex(2)); break;
        case 'u': append_utf8(out, read_hex(4)); break;
        case 'U': {
          std::uint32_t cp = read_hex(8);
          if (cp > 0x10FFFF) error("escape beyond U+10FFFF");
          append_utf8(out, cp);
          break;
        }
        default:
          if (e >= '0' && e <= '7') {
            std::uint32_t v = static_cast<std::uint32_t>(e - '0');
            for (int k = 0; k < 2 && peek() >= '0' && peek() <= '7' && !at_end(); ++k) {
              v = v * 8 + static_cast<std::uint32_t>(text_[pos_++] - '0');
            }
            append_utf8(out, v);
          } else {
            // Unknown escapes keep the backslash.
            out.push_back('\\');
            out.push_back(e);
          }
      }
    }
    return out;
  }

  std::uint32_t read_hex(int digits) {
    std::uint32_t v = 0;
    for (int k = 0; k < digits; ++k) {
      int h = at_end() ? -1 : hex_value(text_[pos_]);
      if (h < 0) error("truncated hex escape");
      v = v * 16 + static_cast<std::uint32_t>(h);
      ++pos_;
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string_view trim_ws(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view strip_wrappers(std::string_view s) {
  s = trim_ws(s);
  if (s.starts_with("```")) {
    auto nl = s.find('\n');
    s = nl == std::string_view::npos ? std::string_view{} : s.substr(nl + 1);
    s = trim_ws(s);
    if (s.ends_with("```")) s.remove_suffix(3);
    s = trim_ws(s);
  }
  if (s.starts_with("result")) {
    auto rest = trim_ws(s.substr(6));
    if (rest.starts_with('=')) s = trim_ws(rest.substr(1));
  }
  return s;
}

void validate_calls(std::vector<Call>& calls, const Ontology& ontology, PredictionRecord& rec) {
  for (auto& call : calls) {
    const EventTypeDef* type = ontology.find(call.name);
    if (type == nullptr) {
      rec.diagnostics.push_back(
          {DiagnosticKind::kUnknownClass, fmt::format("unknown class '{}'", call.name), true});
      continue;
    }
    if (!rec.prompted_type.empty() && call.name != rec.prompted_type) {
      rec.diagnostics.push_back({DiagnosticKind::kOffPromptClass,
                                 fmt::format("class '{}' differs from prompted type '{}'", call.name,
                                             rec.prompted_type),
                                 false});
    }
    PredictedEvent ev;
    ev.event_type = type->name;
    ev.instance_id = rec.instance_id;
    ev.prompted_type = rec.prompted_type;
    for (const auto& role : type->roles) ev.arguments.emplace_back(role.name, std::vector<std::string>{});

    bool has_mention = false;
    std::vector<bool> seen(type->roles.size(), false);
    for (auto& kw : call.keywords) {
      if (kw.name == "mention") {
        if (auto* s = std::get_if<std::string>(&kw.value)) {
          ev.mention = std::move(*s);
          has_mention = true;
        } else if (auto& list = std::get<std::vector<std::string>>(kw.value); list.size() == 1) {
          ev.mention = std::move(list.front());
          has_mention = true;
          rec.diagnostics.push_back({DiagnosticKind::kNonStringMention,
                                     fmt::format("{}: mention given as a list, unwrapped", call.name), false});
        }
        continue;
      }
      auto it = std::find_if(type->roles.begin(), type->roles.end(),
                             [&](const RoleDef& r) { return r.name == kw.name; });
      if (it == type->roles.end()) {
        rec.diagnostics.push_back({DiagnosticKind::kHallucinatedArgument,
                                   fmt::format("{}: hallucinated argument '{}'", call.name, kw.name), false});
        continue;
      }
      auto idx = static_cast<std::size_t>(it - type->roles.begin());
      seen[idx] = true;
      if (auto* s = std::get_if<std::string>(&kw.value)) {
        rec.diagnostics.push_back({DiagnosticKind::kNonListValue,
                                   fmt::format("{}: argument '{}' is not a list, coerced", call.name, kw.name),
                                   false});
        ev.arguments[idx].second.push_back(std::move(*s));
      } else {
        ev.arguments[idx].second = std::move(std::get<std::vector<std::string>>(kw.value));
      }
    }
    if (!has_mention) {
      rec.diagnostics.push_back(
          {DiagnosticKind::kMissingMention, fmt::format("{}: missing mention, event dropped", call.name), true});
      continue;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) {
        rec.diagnostics.push_back({DiagnosticKind::kMissingArgument,
                                   fmt::format("{}: missing argument '{}'", call.name, type->roles[i].name),
                                   false});
      }
    }
    rec.events.push_back(std::move(ev));
  }
}

}  // namespace

PredictionRecord parse_output(std::string_view raw, const Ontology& ontology, std::string_view instance_id,
                              std::string_view prompted_type) {
  PredictionRecord rec;
  rec.instance_id = std::string(instance_id);
  rec.prompted_type = std::string(prompted_type);
  rec.raw_text = std::string(raw);
  try {
    OutputGrammar grammar(strip_wrappers(raw));
    auto calls = grammar.parse_result();
    validate_calls(calls, ontology, rec);
    rec.status = rec.has_fatal() ? ParseStatus::kValidationError : ParseStatus::kOk;
  } catch (const GrammarError& e) {
    rec.status = ParseStatus::kParseError;
    rec.events.clear();
    rec.diagnostics.push_back(
        {DiagnosticKind::kGrammar, fmt::format("offset {}: {}", e.offset, e.what), true});
  } catch (const std::exception& e) {
    rec.status = ParseStatus::kParseError;
    rec.events.clear();
    rec.diagnostics.push_back({DiagnosticKind::kGrammar, e.what(), true});
  }
  return rec;
}

std::vector<PredictionRecord> parse_prediction_file(const std::string& path, const Ontology& ontology,
                                                    std::size_t workers) {
  auto rows = read_jsonl(path);
  std::vector<PredictionRecord> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    for (const char* key : {"instance_id", "prompted_type", "raw_text"}) {
      if (!r.contains(key) || !r[key].is_string()) {
        fail(ErrorKind::kValidation, fmt::format("{}: prediction {} lacks string field '{}'", path, i + 1, key));
      }
    }
  }
  parallel_for(
      rows.size(),
      [&](std::size_t i) {
        const auto& r = rows[i];
        out[i] = parse_output(r["raw_text"].get<std::string>(), ontology, r["instance_id"].get<std::string>(),
                              r["prompted_type"].get<std::string>());
      },
      workers);
  return out;
}

AggregatedPredictions aggregate(std::span<const PredictionRecord> records) {
  AggregatedPredictions out;
  for (const auto& rec : records) {
    auto& events = out[rec.instance_id];
    for (const auto& ev : rec.events) {
      bool duplicate = std::any_of(events.begin(), events.end(),
                                   [&](const PredictedEvent& other) { return other.same_content(ev); });
      if (!duplicate) events.push_back(ev);
    }
  }
  return out;
}

}  // namespace eeguide
