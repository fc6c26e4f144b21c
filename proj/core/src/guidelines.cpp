#include "eeguide/guidelines.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <mutex>
#include <set>

#include <fmt/format.h>

#include "eeguide/codefmt.hpp"
#include "eeguide/parallel.hpp"
#include "eeguide/rng.hpp"
#include "eeguide/text.hpp"
#include "guideline_prompts.hpp"

namespace eeguide {

namespace fs = std::filesystem;

namespace {

constexpr const char* kEventDefinitionKey = "Event Definition";
constexpr const char* kArgumentsKey = "Arguments Definitions";

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// A definition entry may be a list of strings or, for single-definition
// variants, a bare string.
std::vector<std::string> definition_list(const Json& v, const std::string& where) {
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array()) fail(ErrorKind::kValidation, fmt::format("{}: expected a list of strings", where));
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) fail(ErrorKind::kValidation, fmt::format("{}: expected a list of strings", where));
    out.push_back(item.get<std::string>());
  }
  return out;
}

Json definitions_json(const std::vector<std::string>& defs) {
  Json arr = Json::array();
  for (const auto& d : defs) arr.push_back(d);
  return arr;
}

}  // namespace

// ---- variants ---------------------------------------------------------------

std::string_view to_string(GuidelineVariant v) {
  switch (v) {
    case GuidelineVariant::kNoGuideline: return "noguide";
    case GuidelineVariant::kHuman: return "h";
    case GuidelineVariant::kPositive: return "p";
    case GuidelineVariant::kPosNeg: return "pn";
    case GuidelineVariant::kPosSib: return "ps";
    case GuidelineVariant::kPosNegInt: return "pn-int";
    case GuidelineVariant::kPosSibInt: return "ps-int";
  }
  return "?";
}

GuidelineVariant parse_variant(std::string_view s) {
  const std::string key = lower(s);
  for (auto v : {GuidelineVariant::kNoGuideline, GuidelineVariant::kHuman, GuidelineVariant::kPositive,
                 GuidelineVariant::kPosNeg, GuidelineVariant::kPosSib, GuidelineVariant::kPosNegInt,
                 GuidelineVariant::kPosSibInt}) {
    if (key == to_string(v) || key == lower(variant_label(v))) return v;
  }
  fail(ErrorKind::kUsage,
       fmt::format("unknown guideline variant '{}' (expected noguide, h, p, pn, ps, pn-int or ps-int)", s));
}

std::string variant_label(GuidelineVariant v) {
  switch (v) {
    case GuidelineVariant::kNoGuideline: return "NoGuideline";
    case GuidelineVariant::kHuman: return "Guideline-H";
    case GuidelineVariant::kPositive: return "Guideline-P";
    case GuidelineVariant::kPosNeg: return "Guideline-PN";
    case GuidelineVariant::kPosSib: return "Guideline-PS";
    case GuidelineVariant::kPosNegInt: return "Guideline-PN-Int";
    case GuidelineVariant::kPosSibInt: return "Guideline-PS-Int";
  }
  return "?";
}

std::size_t definitions_per_item(GuidelineVariant v) {
  switch (v) {
    case GuidelineVariant::kNoGuideline: return 0;
    case GuidelineVariant::kPositive:
    case GuidelineVariant::kPosNeg:
    case GuidelineVariant::kPosSib: return 5;
    default: return 1;
  }
}

std::string_view to_string(NegativeMode m) {
  switch (m) {
    case NegativeMode::kNone: return "none";
    case NegativeMode::kRandom: return "random";
    case NegativeMode::kSibling: return "sibling";
  }
  return "?";
}

NegativeMode negative_mode_for(GuidelineVariant v) {
  switch (v) {
    case GuidelineVariant::kPositive: return NegativeMode::kNone;
    case GuidelineVariant::kPosNeg: return NegativeMode::kRandom;
    case GuidelineVariant::kPosSib: return NegativeMode::kSibling;
    default:
      fail(ErrorKind::kUsage,
           fmt::format("variant {} is not generated from exemplars (use p, pn or ps)", variant_label(v)));
  }
}

GuidelineVariant consolidated_variant(GuidelineVariant v) {
  switch (v) {
    case GuidelineVariant::kPosNeg: return GuidelineVariant::kPosNegInt;
    case GuidelineVariant::kPosSib: return GuidelineVariant::kPosSibInt;
    default:
      fail(ErrorKind::kUsage, fmt::format("only PN and PS guidelines can be consolidated, got {}", variant_label(v)));
  }
}

// ---- GuidelineSet / GuidelineStore -----------------------------------------

const std::vector<std::string>* GuidelineSet::role(std::string_view name) const {
  for (const auto& [r, defs] : role_definitions) {
    if (r == name) return &defs;
  }
  return nullptr;
}

void GuidelineSet::validate(const EventTypeDef& type) const {
  const std::size_t want = definitions_per_item(variant);
  if (event_type != type.name) {
    fail(ErrorKind::kValidation, fmt::format("guideline set for '{}' used for '{}'", event_type, type.name));
  }
  if (event_definitions.size() != want) {
    fail(ErrorKind::kValidation, fmt::format("{}: \"{}\" has {} definitions, expected {}", event_type,
                                             kEventDefinitionKey, event_definitions.size(), want));
  }
  for (const auto& r : type.roles) {
    const auto* defs = role(r.name);
    if (defs == nullptr) {
      fail(ErrorKind::kValidation, fmt::format("{}: missing definitions for role '{}'", event_type, r.name));
    }
    if (defs->size() != want) {
      fail(ErrorKind::kValidation, fmt::format("{}: role '{}' has {} definitions, expected {}", event_type,
                                               r.name, defs->size(), want));
    }
  }
  for (const auto& [r, defs] : role_definitions) {
    if (!type.has_role(r)) {
      fail(ErrorKind::kValidation, fmt::format("{}: definitions for undefined role '{}'", event_type, r));
    }
  }
}

void GuidelineStore::put(GuidelineSet set) {
  set.variant = variant_;
  auto key = set.event_type;
  sets_.insert_or_assign(std::move(key), std::move(set));
}

const GuidelineSet* GuidelineStore::find(std::string_view event_type) const {
  auto it = sets_.find(std::string(event_type));
  return it == sets_.end() ? nullptr : &it->second;
}

const GuidelineSet& GuidelineStore::at(std::string_view event_type) const {
  const auto* s = find(event_type);
  if (s == nullptr) {
    fail(ErrorKind::kValidation,
         fmt::format("no {} guidelines for event type '{}'", variant_label(variant_), event_type));
  }
  return *s;
}

void GuidelineStore::validate(const Ontology& ontology, bool require_all) const {
  for (const auto& [name, set] : sets_) set.validate(ontology.at(name));
  if (!require_all) return;
  for (const auto& t : ontology.event_types()) {
    if (find(t.name) == nullptr) {
      fail(ErrorKind::kValidation,
           fmt::format("{} guidelines lack event type '{}'", variant_label(variant_), t.name));
    }
  }
}

Json GuidelineStore::to_json(const Ontology& ontology) const {
  Json out = Json::object();
  auto emit = [&](const GuidelineSet& set, const EventTypeDef* type) {
    Json args = Json::object();
    if (type != nullptr) {
      for (const auto& r : type->roles) {
        if (const auto* defs = set.role(r.name)) args[r.name] = definitions_json(*defs);
      }
    } else {
      for (const auto& [r, defs] : set.role_definitions) args[r] = definitions_json(defs);
    }
    out[set.event_type] = {{kEventDefinitionKey, definitions_json(set.event_definitions)}, {kArgumentsKey, args}};
  };
  // Ontology order first so files diff cleanly.
  for (const auto& t : ontology.event_types()) {
    if (const auto* s = find(t.name)) emit(*s, &t);
  }
  for (const auto& [name, set] : sets_) {
    if (ontology.find(name) == nullptr) emit(set, nullptr);
  }
  return out;
}

Json GuidelineStore::provenance_json(const Ontology& ontology) const {
  Json out = Json::object();
  for (const auto& t : ontology.event_types()) {
    const auto* s = find(t.name);
    if (s == nullptr || s->provenance.empty()) continue;
    out[t.name] = {{"model", s->provenance.model},
                   {"timestamp", s->provenance.timestamp},
                   {"prompt_hash", s->provenance.prompt_hash}};
  }
  return out;
}

GuidelineStore GuidelineStore::from_json(const Json& j, GuidelineVariant variant, const Ontology& ontology) {
  if (!j.is_object()) fail(ErrorKind::kValidation, "guideline store must be a JSON object keyed by event type");
  GuidelineStore store(variant);
  for (const auto& [name, entry] : j.items()) {
    const auto& type = ontology.at(name);
    if (!entry.is_object() || !entry.contains(kEventDefinitionKey)) {
      fail(ErrorKind::kValidation, fmt::format("{}: missing \"{}\"", name, kEventDefinitionKey));
    }
    GuidelineSet set;
    set.event_type = name;
    set.variant = variant;
    set.event_definitions = definition_list(entry.at(kEventDefinitionKey), name + "." + std::string(kEventDefinitionKey));
    Json args = entry.value(kArgumentsKey, Json::object());
    if (!args.is_object()) fail(ErrorKind::kValidation, fmt::format("{}: \"{}\" must be an object", name, kArgumentsKey));
    for (const auto& r : type.roles) {
      if (args.contains(r.name)) set.role_definitions.emplace_back(r.name, definition_list(args.at(r.name), name + "." + r.name));
    }
    for (const auto& [role, value] : args.items()) {
      if (role != "mention" && !type.has_role(role)) {
        fail(ErrorKind::kValidation, fmt::format("{}: definitions for undefined role '{}'", name, role));
      }
    }
    set.validate(type);
    store.sets_.emplace(name, std::move(set));
  }
  return store;
}

void GuidelineStore::save(const std::string& path, const Ontology& ontology) const {
  write_json_file(path, to_json(ontology));
  Json prov = provenance_json(ontology);
  if (!prov.empty()) write_json_file(path + ".provenance.json", prov);
}

GuidelineStore GuidelineStore::load(const std::string& path, GuidelineVariant variant, const Ontology& ontology) {
  GuidelineStore store;
  try {
    store = from_json(read_json_file(path), variant, ontology);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIo) throw;
    fail(e.kind(), fmt::format("{}: {}", path, e.what()));
  }
  std::error_code ec;
  const auto prov_path = path + ".provenance.json";
  if (fs::exists(prov_path, ec)) {
    Json prov = read_json_file(prov_path);
    for (auto& [name, set] : store.sets_) {
      if (!prov.contains(name)) continue;
      const auto& p = prov.at(name);
      set.provenance = {p.value("model", ""), p.value("timestamp", ""), p.value("prompt_hash", "")};
    }
  }
  return store;
}

// ---- exemplars --------------------------------------------------------------

ExemplarBundle select_exemplars(const CorpusSplit& split, const Ontology& ontology, std::string_view event_type,
                                NegativeMode mode, std::uint64_t seed, const ExemplarOptions& options) {
  const auto& type = ontology.at(event_type);
  ExemplarBundle bundle;
  bundle.event_type = type.name;
  bundle.mode = mode;
  Rng rng(stream_seed(seed, "exemplars:" + type.name));

  std::vector<const SentenceInstance*> positives;
  std::vector<const SentenceInstance*> random_pool;
  std::vector<const SentenceInstance*> sibling_pool;
  std::set<std::string> sibling_names;
  for (const auto* s : ontology.siblings(type.name)) sibling_names.insert(s->name);
  for (const auto& inst : split.instances) {
    if (inst.has_type(type.name)) {
      positives.push_back(&inst);
      continue;
    }
    if (inst.events.empty()) continue;
    random_pool.push_back(&inst);
    for (const auto& ev : inst.events) {
      if (sibling_names.contains(ev.event_type)) {
        sibling_pool.push_back(&inst);
        break;
      }
    }
  }
  if (positives.empty()) {
    fail(ErrorKind::kValidation, fmt::format("event type '{}' has no positive instances in split '{}'", type.name, split.name));
  }

  rng.shuffle(std::span(positives));
  std::stable_sort(positives.begin(), positives.end(), [&](const auto* a, const auto* b) {
    return role_coverage(*a, type.name) > role_coverage(*b, type.name);
  });
  if (positives.size() < options.positives) {
    bundle.notes.push_back(fmt::format("{}: only {} positive exemplars available (wanted {})", type.name,
                                       positives.size(), options.positives));
  }
  positives.resize(std::min(positives.size(), options.positives));
  for (const auto* p : positives) bundle.positives.push_back(*p);

  if (mode == NegativeMode::kNone || options.negatives == 0) return bundle;

  auto draw = [&](const std::vector<const SentenceInstance*>& pool, std::size_t k) {
    std::vector<const SentenceInstance*> out;
    for (auto i : sample_without_replacement(rng, pool.size(), std::min(k, pool.size()))) out.push_back(pool[i]);
    return out;
  };

  std::vector<const SentenceInstance*> negatives;
  if (mode == NegativeMode::kSibling) {
    negatives = draw(sibling_pool, options.negatives);
    if (negatives.size() < options.negatives) {
      std::set<const SentenceInstance*> taken(negatives.begin(), negatives.end());
      std::vector<const SentenceInstance*> rest;
      for (const auto* inst : random_pool) {
        if (!taken.contains(inst)) rest.push_back(inst);
      }
      auto extra = draw(rest, options.negatives - negatives.size());
      bundle.notes.push_back(fmt::format("{}: sibling pool has {} instances, {} random negatives added", type.name,
                                         sibling_pool.size(), extra.size()));
      negatives.insert(negatives.end(), extra.begin(), extra.end());
    }
  } else {
    negatives = draw(random_pool, options.negatives);
  }
  if (negatives.size() < options.negatives) {
    bundle.notes.push_back(fmt::format("{}: only {} negative exemplars available (wanted {})", type.name,
                                       negatives.size(), options.negatives));
  }
  for (const auto* n : negatives) bundle.negatives.push_back(*n);
  return bundle;
}

// ---- prompts ----------------------------------------------------------------

namespace {

std::string span_list(const std::vector<std::string>& spans) {
  std::string out = "[";
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (i > 0) out += ", ";
    out += py_repr(spans[i]);
  }
  return out + "]";
}

void append_positive(std::string& out, const SentenceInstance& inst, const std::string& type) {
  std::vector<std::string> triggers;
  std::vector<std::pair<std::string, std::vector<std::string>>> args;  // annotation order
  for (const auto& ev : inst.events) {
    if (ev.event_type != type) continue;
    triggers.push_back(ev.trigger_text);
    for (const auto& a : ev.arguments) {
      auto it = std::find_if(args.begin(), args.end(), [&](const auto& p) { return p.first == a.role; });
      if (it == args.end()) {
        args.emplace_back(a.role, std::vector<std::string>{});
        it = std::prev(args.end());
      }
      it->second.push_back(a.text);
    }
  }
  out += "### Event Trigger ###\n";
  for (const auto& t : triggers) out += t + "\n";
  out += "### Event Arguments ###\n";
  if (args.empty()) out += "None\n";
  for (const auto& [role, spans] : args) {
    out += fmt::format("For argument \"{}\" extracted spans {}\n", role, span_list(spans));
  }
}

}  // namespace

std::string build_generation_prompt(const EventTypeDef& type, const ExemplarBundle& bundle) {
  const std::string header = fmt::format("{} which is a child event type of super class {}", type.name, type.parent);
  std::string out;
  out += prompts::kGenerationIntro;
  out += header + ".\n";
  out += prompts::kGenerationBody;
  out += "Event Schema:\n" + header + "\nArguments:\n";
  if (type.roles.empty()) out += "None\n";
  for (std::size_t i = 0; i < type.roles.size(); ++i) {
    out += fmt::format("Argument {} -> {}\n", i + 1, type.roles[i].name);
  }
  std::size_t n = 0;
  for (const auto& inst : bundle.positives) {
    out += fmt::format("\nExample {}\n### Input Text ###\n{}\n", ++n, inst.text);
    append_positive(out, inst, type.name);
  }
  for (const auto& inst : bundle.negatives) {
    out += fmt::format("\nExample {}\n### Input Text ###\n{}\n", ++n, inst.text);
    out += fmt::format("### Event Trigger ###\nNone (this text does not express {})\n", type.name);
    out += "### Event Arguments ###\nNone\n";
  }
  return out;
}

std::string build_consolidation_prompt(const EventTypeDef& type, const GuidelineSet& set5) {
  set5.validate(type);
  const std::string key = fmt::format("{}({})", type.name, type.parent);
  Json attributes = Json::object();
  attributes["mention"] = std::string(kMentionDescription);
  for (const auto& r : type.roles) attributes[r.name] = definitions_json(*set5.role(r.name));
  Json body = Json::object();
  body[key] = {{"description", definitions_json(set5.event_definitions)}};
  body["attributes"] = attributes;

  std::string out(prompts::kConsolidationBody);
  out += fmt::format("Event Type: prompt_{}\n```json\n{}\n```\n", key, body.dump(4));
  return out;
}

// ---- responses --------------------------------------------------------------

namespace {

// Drops a ',' whose next significant character closes an object or array.
// String literals and comments are skipped.
std::string strip_trailing_commas(std::string_view s) {
  auto skip_insignificant = [&](std::size_t i) {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      } else if (s.compare(i, 2, "//") == 0) {
        i = s.find('\n', i);
        if (i == std::string_view::npos) return s.size();
      } else if (s.compare(i, 2, "/*") == 0) {
        i = s.find("*/", i + 2);
        if (i == std::string_view::npos) return s.size();
        i += 2;
      } else {
        break;
      }
    }
    return i;
  };
  std::string out;
  out.reserve(s.size());
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (in_string) {
      out.push_back(c);
      if (c == '\\' && i + 1 < s.size()) {
        out.push_back(s[++i]);
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') in_string = true;
    if (c == ',') {
      auto next = skip_insignificant(i + 1);
      if (next < s.size() && (s[next] == '}' || s[next] == ']')) continue;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::optional<Json> extract_json(std::string_view text) {
  auto try_parse = [](std::string_view s) -> std::optional<Json> {
    // Comments and trailing commas are tolerated because the requested formats contain both.
    Json j = Json::parse(s.begin(), s.end(), nullptr, false, true);
    if (j.is_discarded()) {
      auto cleaned = strip_trailing_commas(s);
      j = Json::parse(cleaned.begin(), cleaned.end(), nullptr, false, true);
    }
    if (j.is_discarded()) return std::nullopt;
    return j;
  };
  constexpr std::string_view kFence = "```json";
  if (auto open = text.find(kFence); open != std::string_view::npos) {
    auto start = open + kFence.size();
    auto close = text.find("```", start);
    if (close != std::string_view::npos) {
      if (auto j = try_parse(text.substr(start, close - start))) return j;
    }
  }
  auto first = text.find('{');
  auto last = text.rfind('}');
  if (first == std::string_view::npos || last == std::string_view::npos || last < first) return std::nullopt;
  return try_parse(text.substr(first, last - first + 1));
}

GuidelineSet guideline_set_from_answer(const Json& answer, const EventTypeDef& type, GuidelineVariant variant) {
  if (!answer.is_object()) fail(ErrorKind::kValidation, "answer is not a JSON object");
  // Some answers wrap the payload under the event name.
  const Json* root = &answer;
  if (!answer.contains(kEventDefinitionKey) && answer.size() == 1 && answer.begin()->is_object()) {
    root = &*answer.begin();
  }
  if (!root->contains(kEventDefinitionKey)) {
    fail(ErrorKind::kValidation, fmt::format("answer lacks \"{}\"", kEventDefinitionKey));
  }
  GuidelineSet set;
  set.event_type = type.name;
  set.variant = variant;
  set.event_definitions = definition_list(root->at(kEventDefinitionKey), std::string(kEventDefinitionKey));
  Json args = root->value(kArgumentsKey, Json::object());
  if (!args.is_object()) fail(ErrorKind::kValidation, fmt::format("\"{}\" must be an object", kArgumentsKey));
  for (const auto& r : type.roles) {
    const Json* value = nullptr;
    if (args.contains(r.name)) {
      value = &args.at(r.name);
    } else {
      for (const auto& [k, v] : args.items()) {
        if (lower(k) == r.name) {
          value = &v;
          break;
        }
      }
    }
    if (value == nullptr) fail(ErrorKind::kValidation, fmt::format("answer lacks definitions for role '{}'", r.name));
    set.role_definitions.emplace_back(r.name, definition_list(*value, "role '" + r.name + "'"));
  }
  set.validate(type);
  return set;
}

namespace {

GuidelineSet ask(const std::string& prompt, const EventTypeDef& type, GuidelineVariant variant, ChatClient& client,
                 double temperature, int max_attempts) {
  ChatRequest request;
  request.temperature = temperature;
  request.messages.push_back({"user", prompt});
  std::string last_text;
  std::string last_problem;
  ErrorKind last_kind = ErrorKind::kLlm;
  const int attempts = std::max(1, max_attempts);
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    ChatResponse response = client.complete(request);
    last_text = response.text;
    auto answer = extract_json(response.text);
    if (!answer) {
      last_kind = ErrorKind::kLlm;
      last_problem = "no parsable JSON object in the answer";
    } else {
      try {
        GuidelineSet set = guideline_set_from_answer(*answer, type, variant);
        set.provenance = {client.model_name(), response.timestamp,
                          response.request_hash.empty() ? sha256_hex(prompt) : response.request_hash};
        return set;
      } catch (const Error& e) {
        last_kind = e.kind();
        last_problem = e.what();
      }
    }
    request.messages.push_back({"assistant", response.text});
    request.messages.push_back(
        {"user", fmt::format("The previous answer could not be used: {}. Answer again and strictly follow the "
                             "output format.",
                             last_problem)});
  }
  throw GenerationError(last_kind,
                        fmt::format("{}: guideline generation failed after {} attempts: {}", type.name, attempts,
                                    last_problem),
                        last_text);
}

}  // namespace

GuidelineSet generate(const EventTypeDef& type, const ExemplarBundle& bundle, GuidelineVariant variant,
                      ChatClient& client, const GenerationOptions& options) {
  if (definitions_per_item(variant) != 5) {
    fail(ErrorKind::kUsage, fmt::format("{} guidelines are not generated from exemplars", variant_label(variant)));
  }
  return ask(build_generation_prompt(type, bundle), type, variant, client, options.temperature,
             options.max_attempts);
}

GuidelineSet consolidate(const EventTypeDef& type, const GuidelineSet& set5, ChatClient& client,
                         const GenerationOptions& options) {
  const auto target = consolidated_variant(set5.variant);
  return ask(build_consolidation_prompt(type, set5), type, target, client, options.consolidation_temperature,
             options.max_attempts);
}

StoreGeneration generate_store(const CorpusSplit& split, const Ontology& ontology, GuidelineVariant variant,
                               ChatClient& client, std::uint64_t seed, const GenerationOptions& options,
                               std::size_t workers) {
  const auto mode = negative_mode_for(variant);
  const auto& types = ontology.event_types();
  std::vector<std::optional<GuidelineSet>> sets(types.size());
  std::vector<std::vector<std::string>> notes(types.size());
  parallel_for(
      types.size(),
      [&](std::size_t i) {
        bool any = std::any_of(split.instances.begin(), split.instances.end(),
                               [&](const auto& inst) { return inst.has_type(types[i].name); });
        if (!any) return;
        auto bundle = select_exemplars(split, ontology, types[i].name, mode, seed);
        notes[i] = bundle.notes;
        sets[i] = generate(types[i], bundle, variant, client, options);
      },
      workers);
  StoreGeneration out{GuidelineStore(variant), {}, {}};
  for (std::size_t i = 0; i < types.size(); ++i) {
    out.notes.insert(out.notes.end(), notes[i].begin(), notes[i].end());
    if (sets[i]) {
      out.store.put(std::move(*sets[i]));
    } else {
      out.skipped.push_back(types[i].name);
    }
  }
  return out;
}

GuidelineStore consolidate_store(const GuidelineStore& store, const Ontology& ontology, ChatClient& client,
                                 const GenerationOptions& options, std::size_t workers) {
  const auto target = consolidated_variant(store.variant());
  std::vector<const GuidelineSet*> inputs;
  for (const auto& t : ontology.event_types()) {
    if (const auto* s = store.find(t.name)) inputs.push_back(s);
  }
  std::vector<std::optional<GuidelineSet>> outputs(inputs.size());
  parallel_for(
      inputs.size(),
      [&](std::size_t i) { outputs[i] = consolidate(ontology.at(inputs[i]->event_type), *inputs[i], client, options); },
      workers);
  GuidelineStore out(target);
  for (auto& s : outputs) out.put(std::move(*s));
  return out;
}

GuidelineStore load_human(const std::string& path, const Ontology& ontology) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    fail(ErrorKind::kIo, fmt::format("no human-written guidelines available for '{}': {} not found", ontology.name(), path));
  }
  return GuidelineStore::load(path, GuidelineVariant::kHuman, ontology);
}

}  // namespace eeguide
