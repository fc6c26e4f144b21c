#include "eeguide/codefmt.hpp"

#include <fmt/format.h>

#include "eeguide/error.hpp"
#include "eeguide/text.hpp"

namespace eeguide {

namespace {

constexpr std::string_view kSchemaHeader = "# The following lines describe the task definition\n\n";
constexpr std::string_view kTextHeader = "\n\n# This is the text to analyze\ntext = ";
constexpr std::string_view kResultHeader =
    "\n\n# The list called result should contain the instances for the following events according to the "
    "guidelines above:\n";

std::string docstring_body(std::string_view definition) {
  std::string out;
  out.reserve(definition.size());
  for (char c : definition) {
    if (c == '\\' || c == '"') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string comment_body(std::string_view definition) {
  std::string out(definition);
  for (auto& c : out) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

}  // namespace

SchemaRendering render_schema(const EventTypeDef& type, GuidelineVariant variant, const GuidelineSet* guidelines,
                              std::optional<std::size_t> index) {
  SchemaRendering r;
  r.event_type = type.name;
  r.variant = variant;
  std::string& out = r.text;
  out = fmt::format("@dataclass\nclass {}({}):\n", type.name, type.parent);

  if (variant == GuidelineVariant::kNoGuideline) {
    out += "    mention: str\n";
    for (const auto& role : type.roles) out += fmt::format("    {}: List\n", role.name);
    out.pop_back();
    return r;
  }

  if (guidelines == nullptr) {
    fail(ErrorKind::kValidation, fmt::format("no {} guidelines for event type '{}'", to_string(variant), type.name));
  }
  const std::size_t per_item = definitions_per_item(variant);
  std::size_t k = index.value_or(0);
  if (per_item > 1 && !index) {
    fail(ErrorKind::kValidation,
         fmt::format("variant {} needs a guideline index for '{}'", to_string(variant), type.name));
  }
  if (k >= guidelines->event_definitions.size()) {
    fail(ErrorKind::kValidation, fmt::format("guideline index {} out of range for '{}' ({} definitions)", k,
                                             type.name, guidelines->event_definitions.size()));
  }
  r.guideline_index = k;
  out += fmt::format("    \"\"\"{}\"\"\"\n", docstring_body(guidelines->event_definitions[k]));
  out += fmt::format("    mention: str  # {}\n", kMentionDescription);
  for (const auto& role : type.roles) {
    const auto* defs = guidelines->role(role.name);
    if (defs == nullptr || k >= defs->size()) {
      fail(ErrorKind::kValidation,
           fmt::format("missing guideline for role '{}' of event type '{}'", role.name, type.name));
    }
    out += fmt::format("    {}: List  # {}\n", role.name, comment_body((*defs)[k]));
  }
  out.pop_back();
  return r;
}

std::string render_output(std::span<const GoldEvent> events, const Ontology& ontology) {
  if (events.empty()) return "[]";
  std::string out = "[";
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& ev = events[i];
    if (ev.event_type != events.front().event_type) {
      fail(ErrorKind::kValidation, fmt::format("render_output mixes event types '{}' and '{}'",
                                               events.front().event_type, ev.event_type));
    }
    const auto& type = ontology.at(ev.event_type);
    for (const auto& a : ev.arguments) {
      if (!type.has_role(a.role)) {
        fail(ErrorKind::kValidation,
             fmt::format("role '{}' is not defined for event type '{}'", a.role, ev.event_type));
      }
    }
    if (i > 0) out += ", ";
    out += fmt::format("{}(mention={}", type.name, quote_literal(ev.trigger_text));
    for (const auto& role : type.roles) {
      out += fmt::format(", {}=[", role.name);
      bool first = true;
      for (const auto& a : ev.arguments) {
        if (a.role != role.name) continue;
        if (!first) out += ", ";
        out += quote_literal(a.text);
        first = false;
      }
      out += "]";
    }
    out += ")";
  }
  out += "]";
  return out;
}

std::string render_input(std::string_view schema_text, std::string_view sentence) {
  std::string out;
  out.reserve(schema_text.size() + sentence.size() + 256);
  out += kSchemaHeader;
  out += schema_text;
  out += kTextHeader;
  out += quote_literal(sentence);
  out += kResultHeader;
  out += kResultStub;
  return out;
}

std::string schema_from_input(std::string_view input) {
  if (!input.starts_with(kSchemaHeader)) fail(ErrorKind::kValidation, "prompt input lacks the schema header");
  auto rest = input.substr(kSchemaHeader.size());
  auto end = rest.find(kTextHeader);
  if (end == std::string_view::npos) fail(ErrorKind::kValidation, "prompt input lacks the text block");
  return std::string(rest.substr(0, end));
}

Json PromptRecord::to_json() const {
  Json j = {{"doc_id", doc_id},
            {"wnd_id", wnd_id},
            {"instance_id", instance_id},
            {"dataset_name", dataset_name},
            {"task_type", task_type},
            {"is_auth", is_auth},
            {"instruction", instruction},
            {"input", input}};
  if (output) j["output"] = *output;
  return j;
}

PromptRecord PromptRecord::from_json(const Json& j) {
  auto str = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_string()) {
      fail(ErrorKind::kValidation, fmt::format("prompt record lacks string field '{}'", key));
    }
    return j[key].get<std::string>();
  };
  PromptRecord r;
  r.doc_id = str("doc_id");
  r.wnd_id = str("wnd_id");
  r.instance_id = str("instance_id");
  r.dataset_name = str("dataset_name");
  r.task_type = str("task_type");
  r.is_auth = str("is_auth");
  r.instruction = str("instruction");
  r.input = str("input");
  if (j.contains("output")) r.output = str("output");
  r.event_type = parse_schema(schema_from_input(r.input)).class_name;
  return r;
}

PromptRecord build_prompt(const SentenceInstance& instance, std::string_view event_type, const PromptContext& ctx,
                          std::optional<std::size_t> guideline_index, bool with_output) {
  if (ctx.ontology == nullptr) fail(ErrorKind::kUsage, "prompt context has no ontology");
  const auto& type = ctx.ontology->at(event_type);
  const GuidelineSet* set = nullptr;
  if (ctx.variant != GuidelineVariant::kNoGuideline) {
    if (ctx.guidelines == nullptr) {
      fail(ErrorKind::kValidation, fmt::format("variant {} needs a guideline store", to_string(ctx.variant)));
    }
    set = ctx.guidelines->find(type.name);
    if (definitions_per_item(ctx.variant) == 1 && !guideline_index) guideline_index = 0;
  } else {
    guideline_index.reset();
  }
  auto schema = render_schema(type, ctx.variant, set, guideline_index);

  PromptRecord r;
  r.doc_id = instance.doc_id;
  r.wnd_id = instance.wnd_id;
  r.instance_id = instance.instance_id;
  r.dataset_name = ctx.dataset_name.empty() ? ctx.ontology->name() : ctx.dataset_name;
  r.instruction = std::string(kTaskInstruction);
  r.input = render_input(schema.text, instance.text);
  r.event_type = type.name;
  r.guideline_index = schema.guideline_index;
  if (with_output) {
    std::vector<GoldEvent> events;
    for (const auto& ev : instance.events) {
      if (ev.event_type == type.name) events.push_back(ev);
    }
    r.output = render_output(events, *ctx.ontology);
  }
  return r;
}

PromptRecord build_prompt(const SentenceInstance& instance, std::string_view event_type, const PromptContext& ctx,
                          Rng& rng, bool with_output) {
  std::optional<std::size_t> index;
  if (definitions_per_item(ctx.variant) > 1) {
    std::size_t available = definitions_per_item(ctx.variant);
    if (ctx.guidelines != nullptr) {
      if (const auto* set = ctx.guidelines->find(event_type)) available = set->size();
    }
    index = rng.uniform(available);
  }
  return build_prompt(instance, event_type, ctx, index, with_output);
}

std::size_t export_jsonl(std::span<const PromptRecord> records, const std::string& path) {
  std::vector<Json> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(r.to_json());
  write_jsonl(path, rows);
  return rows.size();
}

std::vector<PromptRecord> read_prompt_jsonl(const std::string& path) {
  std::vector<PromptRecord> out;
  for (const auto& row : read_jsonl(path)) out.push_back(PromptRecord::from_json(row));
  return out;
}

}  // namespace eeguide
