#include "eeguide/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

#include "eeguide/error.hpp"
#include "eeguide/parallel.hpp"
#include "eeguide/rng.hpp"
#include "eeguide/text.hpp"

namespace eeguide {

bool SentenceInstance::has_type(std::string_view event_type) const {
  return std::any_of(events.begin(), events.end(),
                     [&](const GoldEvent& e) { return e.event_type == event_type; });
}

std::vector<std::string> SentenceInstance::gold_types() const {
  std::vector<std::string> out;
  for (const auto& e : events) {
    if (std::find(out.begin(), out.end(), e.event_type) == out.end()) out.push_back(e.event_type);
  }
  return out;
}

const SentenceInstance* CorpusSplit::find(std::string_view instance_id) const {
  for (const auto& inst : instances) {
    if (inst.instance_id == instance_id) return &inst;
  }
  return nullptr;
}

namespace {

// "Justice:Arrest-Jail" -> "ArrestJail".
std::string class_name_from_label(std::string_view label) {
  if (auto colon = label.rfind(':'); colon != std::string_view::npos) label = label.substr(colon + 1);
  std::string out;
  bool upper_next = true;
  for (char c : label) {
    if (c == '-' || c == '_' || c == ' ' || c == '.') {
      upper_next = true;
      continue;
    }
    if (upper_next && c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    upper_next = false;
    out.push_back(c);
  }
  return out;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

const EventTypeDef* resolve_type(const Ontology& ont, std::string_view label) {
  if (const auto* t = ont.find(label)) return t;
  return ont.find(class_name_from_label(label));
}

std::optional<std::string> resolve_role(const EventTypeDef& type, std::string_view label) {
  if (type.has_role(label)) return std::string(label);
  std::string lower = lowercase(label);
  for (const auto& r : type.roles) {
    if (lowercase(r.name) == lower) return r.name;
  }
  return std::nullopt;
}

std::string string_field(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  const auto& v = j[key];
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return {};
}

std::size_t offset_field(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0) {
    throw std::invalid_argument(fmt::format("{}: missing or negative offset '{}'", where, key));
  }
  return static_cast<std::size_t>(j[key].get<long long>());
}

// Token spans in code point offsets, found by scanning the text left to right.
struct TokenMap {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
};

TokenMap align_tokens(const std::string& text, const Utf8Index& index, const std::vector<std::string>& tokens,
                      const std::string& where) {
  TokenMap map;
  std::size_t cursor = 0;
  for (const auto& tok : tokens) {
    std::size_t at = text.find(tok, cursor);
    if (tok.empty() || at == std::string::npos) {
      throw std::invalid_argument(fmt::format("{}: token '{}' not found in text", where, tok));
    }
    std::size_t b = index.codepoint_at(at);
    std::size_t e = index.codepoint_at(at + tok.size());
    if (b == Utf8Index::npos || e == Utf8Index::npos) {
      throw std::invalid_argument(fmt::format("{}: token '{}' splits a UTF-8 sequence", where, tok));
    }
    map.spans.emplace_back(b, e);
    cursor = at + tok.size();
  }
  return map;
}

bool same_ignoring_ws(std::string_view a, std::string_view b) {
  auto strip = [](std::string_view s) {
    std::string out;
    for (char c : s) {
      if (c != ' ' && c != '\t' && c != '\n' && c != '\r') out.push_back(c);
    }
    return out;
  };
  return strip(a) == strip(b);
}

struct SpanResult {
  std::size_t start;
  std::size_t end;
  std::string text;
};

SpanResult resolve_span(const Json& j, const std::string& text, const Utf8Index& index,
                        const std::optional<TokenMap>& tokens, const std::string& where) {
  std::size_t start = offset_field(j, "start", where);
  std::size_t end = offset_field(j, "end", where);
  std::string declared = string_field(j, "text");
  if (tokens) {
    if (start >= end || end > tokens->spans.size()) {
      throw std::invalid_argument(fmt::format("{}: token span [{}, {}) out of range", where, start, end));
    }
    std::size_t cb = tokens->spans[start].first;
    std::size_t ce = tokens->spans[end - 1].second;
    std::string surface(index.slice(text, cb, ce));
    if (!same_ignoring_ws(surface, declared)) {
      throw std::invalid_argument(
          fmt::format("{}: text '{}' does not match tokens [{}, {}) = '{}'", where, declared, start, end, surface));
    }
    return {cb, ce, surface};
  }
  if (start >= end || end > index.size()) {
    throw std::invalid_argument(fmt::format("{}: span [{}, {}) out of range", where, start, end));
  }
  std::string surface(index.slice(text, start, end));
  if (surface != declared) {
    throw std::invalid_argument(
        fmt::format("{}: text '{}' does not match offsets [{}, {}) = '{}'", where, declared, start, end, surface));
  }
  return {start, end, surface};
}

SentenceInstance parse_record(const Json& rec, std::size_t line_index, const Ontology& ont) {
  if (!rec.is_object()) throw std::invalid_argument(fmt::format("record {} is not an object", line_index + 1));
  SentenceInstance inst;
  inst.doc_id = string_field(rec, "doc_id");
  inst.wnd_id = string_field(rec, "wnd_id");
  inst.instance_id = string_field(rec, "instance_id");
  if (inst.instance_id.empty()) inst.instance_id = inst.wnd_id;
  if (inst.instance_id.empty()) inst.instance_id = std::to_string(line_index);
  const std::string where = fmt::format("instance '{}'", inst.instance_id);

  std::optional<std::vector<std::string>> tokens;
  if (rec.contains("tokens") && rec["tokens"].is_array()) {
    tokens.emplace();
    for (const auto& t : rec["tokens"]) {
      if (!t.is_string()) throw std::invalid_argument(fmt::format("{}: non-string token", where));
      tokens->push_back(t.get<std::string>());
    }
  }
  if (rec.contains("text") && rec["text"].is_string()) {
    inst.text = rec["text"].get<std::string>();
  } else if (tokens) {
    for (std::size_t i = 0; i < tokens->size(); ++i) {
      if (i > 0) inst.text.push_back(' ');
      inst.text += (*tokens)[i];
    }
  } else {
    throw std::invalid_argument(fmt::format("{}: missing 'text'", where));
  }

  Utf8Index index(inst.text);
  std::optional<TokenMap> token_map;
  if (tokens) token_map = align_tokens(inst.text, index, *tokens, where);

  if (rec.contains("event_mentions")) {
    if (!rec["event_mentions"].is_array()) {
      throw std::invalid_argument(fmt::format("{}: 'event_mentions' must be an array", where));
    }
    for (const auto& em : rec["event_mentions"]) {
      std::string label = string_field(em, "event_type");
      const EventTypeDef* type = resolve_type(ont, label);
      if (type == nullptr) throw std::invalid_argument(fmt::format("{}: unknown event type '{}'", where, label));
      if (!em.contains("trigger") || !em["trigger"].is_object()) {
        throw std::invalid_argument(fmt::format("{}: event '{}' has no trigger", where, label));
      }
      GoldEvent ev;
      ev.event_type = type->name;
      auto trig = resolve_span(em["trigger"], inst.text, index, token_map, where + " trigger");
      ev.trigger_start = trig.start;
      ev.trigger_end = trig.end;
      ev.trigger_text = std::move(trig.text);
      if (em.contains("arguments")) {
        for (const auto& ja : em["arguments"]) {
          std::string role_label = string_field(ja, "role");
          auto role = resolve_role(*type, role_label);
          if (!role) {
            throw std::invalid_argument(
                fmt::format("{}: unknown role '{}' for event type '{}'", where, role_label, type->name));
          }
          auto span = resolve_span(ja, inst.text, index, token_map, fmt::format("{} argument '{}'", where, *role));
          ev.arguments.push_back({*role, std::move(span.text), span.start, span.end});
        }
      }
      inst.events.push_back(std::move(ev));
    }
  }
  return inst;
}

}  // namespace

IngestResult ingest_records(const std::vector<Json>& records, const Ontology& ontology, const IngestOptions& options) {
  struct Slot {
    std::optional<SentenceInstance> instance;
    std::string problem;
  };
  std::vector<Slot> slots(records.size());
  parallel_for(
      records.size(),
      [&](std::size_t i) {
        try {
          slots[i].instance = parse_record(records[i], i, ontology);
        } catch (const std::invalid_argument& e) {
          slots[i].problem = e.what();
        }
      },
      options.workers);

  IngestResult result;
  result.split.name = options.split_name;
  std::unordered_set<std::string> ids;
  for (auto& slot : slots) {
    if (slot.instance && !ids.insert(slot.instance->instance_id).second) {
      slot.problem = fmt::format("duplicate instance_id '{}'", slot.instance->instance_id);
      slot.instance.reset();
    }
    if (!slot.instance) {
      if (options.strict) fail(ErrorKind::kValidation, slot.problem);
      ++result.skipped;
      result.problems.push_back(std::move(slot.problem));
      continue;
    }
    result.split.instances.push_back(std::move(*slot.instance));
  }
  if (result.split.instances.empty()) {
    fail(ErrorKind::kValidation, fmt::format("split '{}' has no valid instances", options.split_name));
  }
  return result;
}

IngestResult ingest(const std::string& path, const Ontology& ontology, const IngestOptions& options) {
  return ingest_records(read_jsonl(path), ontology, options);
}

Json to_json(const SentenceInstance& inst) {
  Json events = Json::array();
  for (const auto& ev : inst.events) {
    Json args = Json::array();
    for (const auto& a : ev.arguments) {
      args.push_back({{"role", a.role}, {"text", a.text}, {"start", a.start}, {"end", a.end}});
    }
    events.push_back({{"event_type", ev.event_type},
                      {"trigger", {{"text", ev.trigger_text}, {"start", ev.trigger_start}, {"end", ev.trigger_end}}},
                      {"arguments", args}});
  }
  return {{"doc_id", inst.doc_id},
          {"wnd_id", inst.wnd_id},
          {"instance_id", inst.instance_id},
          {"text", inst.text},
          {"event_mentions", events}};
}

void write_split(const CorpusSplit& split, const std::string& path) {
  std::vector<Json> rows;
  rows.reserve(split.instances.size());
  for (const auto& inst : split.instances) rows.push_back(to_json(inst));
  write_jsonl(path, rows);
}

std::size_t role_coverage(const SentenceInstance& instance, std::string_view event_type) {
  std::set<std::string_view> roles;
  for (const auto& ev : instance.events) {
    if (ev.event_type != event_type) continue;
    for (const auto& a : ev.arguments) roles.insert(a.role);
  }
  return roles.size();
}

std::size_t role_coverage(const SentenceInstance& instance) {
  std::set<std::pair<std::string_view, std::string_view>> pairs;
  for (const auto& ev : instance.events) {
    for (const auto& a : ev.arguments) pairs.emplace(ev.event_type, a.role);
  }
  return pairs.size();
}

namespace {

// Event types present in the split, in ontology order.
std::vector<std::string> types_present(const CorpusSplit& split, const Ontology& ont) {
  std::set<std::string> present;
  for (const auto& inst : split.instances) {
    for (const auto& ev : inst.events) present.insert(ev.event_type);
  }
  std::vector<std::string> out;
  for (const auto& t : ont.event_types()) {
    if (present.contains(t.name)) out.push_back(t.name);
  }
  return out;
}

CorpusSplit gather(const CorpusSplit& split, std::vector<std::size_t> indices, std::string name) {
  std::sort(indices.begin(), indices.end());
  CorpusSplit out;
  out.name = std::move(name);
  out.instances.reserve(indices.size());
  for (auto i : indices) out.instances.push_back(split.instances[i]);
  return out;
}

}  // namespace

CorpusSplit select_dev(const CorpusSplit& split, const Ontology& ontology, std::size_t n, std::uint64_t seed) {
  const auto types = types_present(split, ontology);
  if (n < 2 * types.size()) {
    fail(ErrorKind::kValidation,
         fmt::format("dev size {} is below 2 x {} event types present in split '{}'", n, types.size(), split.name));
  }
  const auto& insts = split.instances;
  std::vector<bool> chosen(insts.size(), false);
  std::vector<std::size_t> picked;
  for (const auto& type : types) {
    std::vector<std::size_t> candidates;
    std::size_t have = 0;
    for (std::size_t i = 0; i < insts.size(); ++i) {
      if (!insts[i].has_type(type)) continue;
      if (chosen[i]) ++have;
      else candidates.push_back(i);
    }
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      auto ca = role_coverage(insts[a], type);
      auto cb = role_coverage(insts[b], type);
      if (ca != cb) return ca > cb;
      return insts[a].instance_id < insts[b].instance_id;
    });
    for (std::size_t k = 0; k < candidates.size() && have < 2; ++k, ++have) {
      chosen[candidates[k]] = true;
      picked.push_back(candidates[k]);
    }
  }
  std::vector<std::size_t> fillers;
  for (std::size_t i = 0; i < insts.size(); ++i) {
    if (!chosen[i] && insts[i].events.empty()) fillers.push_back(i);
  }
  std::size_t slots = n - picked.size();
  Rng rng(seed);
  for (auto k : sample_without_replacement(rng, fillers.size(), std::min(slots, fillers.size()))) {
    picked.push_back(fillers[k]);
  }
  return gather(split, std::move(picked), split.name + "-dev");
}

CorpusSplit subset_uniform(const CorpusSplit& split, std::size_t n, std::uint64_t seed) {
  if (n > split.instances.size()) {
    fail(ErrorKind::kValidation,
         fmt::format("cannot sample {} instances from split '{}' of size {}", n, split.name, split.instances.size()));
  }
  Rng rng(seed);
  return gather(split, sample_without_replacement(rng, split.instances.size(), n), split.name + "-uniform");
}

CorpusSplit subset_covered(const CorpusSplit& split, const Ontology& ontology, std::size_t n, std::uint64_t seed) {
  auto types = types_present(split, ontology);
  if (n < types.size()) {
    fail(ErrorKind::kValidation,
         fmt::format("subset size {} cannot cover {} event types present in split '{}'", n, types.size(), split.name));
  }
  const auto& insts = split.instances;
  const auto st = stats(split);
  // Rarest types first so their few candidates are not consumed elsewhere.
  std::stable_sort(types.begin(), types.end(), [&](const std::string& a, const std::string& b) {
    auto fa = st.frequency_of(a);
    auto fb = st.frequency_of(b);
    return fa != fb ? fa < fb : a < b;
  });

  Rng rng(seed);
  std::vector<bool> chosen(insts.size(), false);
  std::vector<std::size_t> picked;
  for (const auto& type : types) {
    bool covered = false;
    std::vector<std::size_t> candidates;
    std::vector<double> weights;
    for (std::size_t i = 0; i < insts.size(); ++i) {
      if (!insts[i].has_type(type)) continue;
      if (chosen[i]) {
        covered = true;
        break;
      }
      candidates.push_back(i);
      weights.push_back(1.0 + static_cast<double>(role_coverage(insts[i], type)));
    }
    if (covered) continue;
    auto pick = candidates[weighted_sample(rng, weights, 1).front()];
    chosen[pick] = true;
    picked.push_back(pick);
  }

  std::vector<std::size_t> rest;
  std::vector<double> weights;
  for (std::size_t i = 0; i < insts.size(); ++i) {
    if (chosen[i]) continue;
    rest.push_back(i);
    weights.push_back(1.0 + static_cast<double>(role_coverage(insts[i])));
  }
  std::size_t slots = std::min(n, insts.size()) - picked.size();
  for (auto k : weighted_sample(rng, weights, slots)) picked.push_back(rest[k]);
  return gather(split, std::move(picked), fmt::format("{}-covered-{}", split.name, seed));
}

std::size_t SplitStats::frequency_of(std::string_view event_type) const {
  for (const auto& [name, count] : type_frequency) {
    if (name == event_type) return count;
  }
  return 0;
}

SplitStats stats(const CorpusSplit& split) {
  if (split.instances.empty()) fail(ErrorKind::kValidation, fmt::format("split '{}' is empty", split.name));
  SplitStats s;
  std::map<std::string, std::size_t> freq;
  s.instances = split.instances.size();
  for (const auto& inst : split.instances) {
    if (inst.events.empty()) ++s.no_event_instances;
    for (const auto& ev : inst.events) {
      ++s.event_mentions;
      ++freq[ev.event_type];
      for (const auto& a : ev.arguments) {
        ++s.argument_mentions;
        ++s.role_fills[a.role];
      }
    }
  }
  s.type_frequency.assign(freq.begin(), freq.end());
  std::stable_sort(s.type_frequency.begin(), s.type_frequency.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return s;
}

Json to_json(const SplitStats& s) {
  Json freq = Json::array();
  for (const auto& [name, count] : s.type_frequency) freq.push_back({{"event_type", name}, {"count", count}});
  Json roles = Json::object();
  for (const auto& [role, count] : s.role_fills) roles[role] = count;
  return {{"instances", s.instances},
          {"event_mentions", s.event_mentions},
          {"no_event_instances", s.no_event_instances},
          {"argument_mentions", s.argument_mentions},
          {"event_types_present", s.type_frequency.size()},
          {"type_frequency", freq},
          {"role_fills", roles}};
}

SplitStats stats_from_json(const Json& j) {
  SplitStats s;
  s.instances = j.at("instances").get<std::size_t>();
  s.event_mentions = j.at("event_mentions").get<std::size_t>();
  s.no_event_instances = j.at("no_event_instances").get<std::size_t>();
  s.argument_mentions = j.at("argument_mentions").get<std::size_t>();
  for (const auto& row : j.at("type_frequency")) {
    s.type_frequency.emplace_back(row.at("event_type").get<std::string>(), row.at("count").get<std::size_t>());
  }
  for (const auto& [role, count] : j.at("role_fills").items()) s.role_fills[role] = count.get<std::size_t>();
  return s;
}

}  // namespace eeguide
