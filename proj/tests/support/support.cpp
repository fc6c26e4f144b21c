#include "support.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <unistd.h>

#include <fmt/format.h>

#include "eeguide/jsonl.hpp"
#include "eeguide/text.hpp"

namespace eeguide::testing {

namespace fs = std::filesystem;

std::string fixture(const std::string& name) { return (fs::path(EEGUIDE_FIXTURE_DIR) / name).string(); }

Ontology ace05_ontology() { return load_ontology(fixture("ace05_ontology.json")); }

SentenceInstance extradite_instance() {
  auto res = ingest(fixture("extradite_sentence.jsonl"), ace05_ontology());
  return res.split.instances.at(0);
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  Rng rng(stream_seed(static_cast<std::uint64_t>(std::hash<std::string>{}(fs::current_path().string())),
                      std::to_string(counter++) + ":" + std::to_string(::getpid())));
  path_ = fs::temp_directory_path() / fmt::format("eeguide-test-{:016x}", rng.next());
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// ---- synthetic data -----------------------------------------------------

Ontology synthetic_ontology(Rng& rng, std::size_t types, std::size_t parents, std::size_t max_roles) {
  static const std::vector<std::string> kRoles = {"agent",  "person", "place",  "target",    "victim",
                                                  "origin", "entity", "artifact", "recipient", "instrument"};
  std::vector<EventTypeDef> defs;
  for (std::size_t i = 0; i < types; ++i) {
    EventTypeDef t;
    t.name = fmt::format("Event{}", i);
    t.parent = fmt::format("Group{}Event", rng.uniform(std::max<std::size_t>(parents, 1)));
    std::size_t k = rng.uniform(std::min(max_roles, kRoles.size()) + 1);
    for (auto r : sample_without_replacement(rng, kRoles.size(), k)) t.roles.push_back({kRoles[r]});
    defs.push_back(std::move(t));
  }
  return Ontology("synthetic", std::move(defs));
}

namespace {

const std::vector<std::string> kPlainWords = {"the", "army", "met", "in", "Paris", "after", "talks", "with",
                                              "officials", "who", "were", "arrested", "by", "police", "on",
                                              "Monday", "court", "fined", "company", "bank"};
const std::vector<std::string> kTrickyWords = {"O'Brien", "\"quoted\"", "back\\slash", "naïve", "東京",
                                               "line\nbreak", "it's", "a'b\"c", "tab\there", "€5"};

std::size_t cp_len(const std::string& s) { return Utf8Index(s).size(); }

}  // namespace

SentenceInstance synthetic_instance(Rng& rng, const Ontology& ontology, const std::string& id,
                                    const InstanceShape& shape) {
  SentenceInstance inst;
  inst.doc_id = "DOC_" + id;
  inst.wnd_id = inst.doc_id + "-0";
  inst.instance_id = id;

  const std::size_t n_tokens = 6 + rng.uniform(14);
  std::vector<std::string> tokens;
  std::vector<std::size_t> starts;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n_tokens; ++i) {
    bool tricky = shape.tricky_text && rng.unit() < 0.2;
    const auto& pool = tricky ? kTrickyWords : kPlainWords;
    tokens.push_back(pool[rng.uniform(pool.size())]);
    if (i > 0) {
      inst.text += ' ';
      ++pos;
    }
    starts.push_back(pos);
    inst.text += tokens.back();
    pos += cp_len(tokens.back());
  }
  auto span = [&](std::size_t first, std::size_t count) {
    std::string text;
    for (std::size_t k = 0; k < count; ++k) text += (k > 0 ? " " : "") + tokens[first + k];
    std::size_t start = starts[first];
    return std::tuple{text, start, start + cp_len(text)};
  };
  auto random_span = [&] {
    std::size_t count = 1 + rng.uniform(2);
    std::size_t first = rng.uniform(n_tokens - count + 1);
    return span(first, count);
  };

  if (rng.unit() < shape.no_event_rate || shape.max_events == 0) return inst;
  std::size_t n_events = 1 + rng.uniform(shape.max_events);
  for (std::size_t e = 0; e < n_events; ++e) {
    const auto& type = ontology.event_types()[rng.uniform(ontology.size())];
    GoldEvent ev;
    ev.event_type = type.name;
    std::tie(ev.trigger_text, ev.trigger_start, ev.trigger_end) = random_span();
    if (!type.roles.empty()) {
      std::size_t n_args = rng.uniform(shape.max_args + 1);
      for (std::size_t a = 0; a < n_args; ++a) {
        ArgumentMention m;
        m.role = type.roles[rng.uniform(type.roles.size())].name;
        std::tie(m.text, m.start, m.end) = random_span();
        ev.arguments.push_back(std::move(m));
      }
    }
    inst.events.push_back(std::move(ev));
  }
  return inst;
}

CorpusSplit synthetic_corpus(const Ontology& ontology, std::size_t n, std::uint64_t seed, const InstanceShape& shape) {
  Rng rng(seed);
  CorpusSplit split;
  split.name = "synthetic";
  for (std::size_t i = 0; i < n; ++i) {
    split.instances.push_back(synthetic_instance(rng, ontology, fmt::format("s{:05}", i), shape));
  }
  return split;
}

std::vector<PredictedEvent> gold_as_predictions(const SentenceInstance& inst, const Ontology& ontology) {
  std::vector<PredictedEvent> out;
  for (const auto& ev : inst.events) {
    PredictedEvent p;
    p.event_type = ev.event_type;
    p.mention = ev.trigger_text;
    p.instance_id = inst.instance_id;
    p.prompted_type = ev.event_type;
    for (const auto& r : ontology.at(ev.event_type).roles) {
      std::vector<std::string> values;
      for (const auto& a : ev.arguments) {
        if (a.role == r.name) values.push_back(a.text);
      }
      p.arguments.emplace_back(r.name, std::move(values));
    }
    out.push_back(std::move(p));
  }
  return out;
}

// ---- brute-force matching oracle ---------------------------------------

std::vector<PredictedEvent> perturbed_predictions(Rng& rng, const SentenceInstance& inst, const Ontology& ontology) {
  auto events = gold_as_predictions(inst, ontology);
  const auto& types = ontology.event_types();
  std::vector<std::string> words;
  {
    std::istringstream in(inst.text);
    for (std::string w; in >> w;) words.push_back(w);
  }
  auto any_word = [&]() -> std::string { return words.empty() ? "x" : words[rng.uniform(words.size())]; };
  std::vector<PredictedEvent> out;
  for (auto ev : events) {
    double roll = rng.unit();
    if (roll < 0.15) continue;
    if (roll < 0.25) {
      const auto& t = types[rng.uniform(types.size())];
      PredictedEvent moved;
      moved.event_type = t.name;
      moved.mention = ev.mention;
      for (const auto& r : t.roles) moved.arguments.emplace_back(r.name, ev.role(r.name) ? *ev.role(r.name) : std::vector<std::string>{});
      ev = std::move(moved);
    }
    if (rng.unit() < 0.15) ev.mention = any_word();
    if (rng.unit() < 0.15) ev.mention = "  " + ev.mention + "\t";
    for (auto& [role, values] : ev.arguments) {
      for (auto& v : values) {
        double r = rng.unit();
        if (r < 0.1) v = any_word();
        else if (r < 0.2) v = " " + v + "  ";
      }
      if (!values.empty() && rng.unit() < 0.1) values.erase(values.begin());
      if (rng.unit() < 0.1) values.push_back(any_word());
    }
    if (ev.arguments.size() >= 2 && rng.unit() < 0.15) {
      std::swap(ev.arguments[0].second, ev.arguments[1].second);
    }
    out.push_back(ev);
    if (rng.unit() < 0.1) out.push_back(ev);
  }
  std::size_t spurious = rng.uniform(3);
  for (std::size_t k = 0; k < spurious; ++k) {
    const auto& t = types[rng.uniform(types.size())];
    PredictedEvent ev;
    ev.event_type = t.name;
    ev.mention = any_word();
    for (const auto& r : t.roles) {
      std::vector<std::string> values;
      if (rng.unit() < 0.3) values.push_back(any_word());
      ev.arguments.emplace_back(r.name, values);
    }
    out.push_back(ev);
  }
  rng.shuffle(std::span(out));
  return out;
}

std::size_t exhaustive_matches(const std::vector<std::string>& predicted, const std::vector<std::string>& gold) {
  if (gold.size() > 63) throw std::invalid_argument("oracle supports at most 63 gold items");
  std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::uint64_t)> best = [&](std::size_t i, std::uint64_t used) {
    if (i == predicted.size()) return std::size_t{0};
    auto key = std::pair{i, used};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t result = best(i + 1, used);  // leave predicted[i] unmatched
    for (std::size_t g = 0; g < gold.size(); ++g) {
      if ((used >> g) & 1U) continue;
      if (predicted[i] != gold[g]) continue;
      result = std::max(result, 1 + best(i + 1, used | (std::uint64_t{1} << g)));
    }
    memo[key] = result;
    return result;
  };
  return best(0, 0);
}

namespace {

std::string squash(const std::string& s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending = !out.empty();
      continue;
    }
    if (pending) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

}  // namespace

OracleCounts oracle_counts(const std::vector<PredictedEvent>& predicted, const SentenceInstance& gold) {
  std::vector<std::string> p[4];
  std::vector<std::string> g[4];
  const std::string sep = "\x1f";
  for (const auto& ev : predicted) {
    p[0].push_back(squash(ev.mention));
    p[1].push_back(ev.event_type + sep + squash(ev.mention));
    for (const auto& [role, values] : ev.arguments) {
      for (const auto& v : values) {
        p[2].push_back(ev.event_type + sep + squash(v));
        p[3].push_back(ev.event_type + sep + role + sep + squash(v));
      }
    }
  }
  for (const auto& ev : gold.events) {
    g[0].push_back(squash(ev.trigger_text));
    g[1].push_back(ev.event_type + sep + squash(ev.trigger_text));
    for (const auto& a : ev.arguments) {
      g[2].push_back(ev.event_type + sep + squash(a.text));
      g[3].push_back(ev.event_type + sep + a.role + sep + squash(a.text));
    }
  }
  OracleCounts c;
  for (int m = 0; m < 4; ++m) {
    c.predicted[m] = p[m].size();
    c.gold[m] = g[m].size();
    c.matched[m] = exhaustive_matches(p[m], g[m]);
  }
  return c;
}

// ---- planted error fixture --------------------------------------------------

PlantedErrors planted_errors(const Ontology& ace05) {
  PlantedErrors f;
  f.split.name = "planted";
  auto add = [&](const std::string& id, std::string text, std::vector<GoldEvent> events,
                 std::vector<std::pair<std::string, std::string>> outputs, std::set<ErrorCategory> labels) {
    f.split.instances.push_back({"PLANT", "PLANT-" + id, id, std::move(text), std::move(events)});
    for (auto& [type, raw] : outputs) f.records.push_back(parse_output(raw, ace05, id, type));
    f.expected[id] = std::move(labels);
  };
  const GoldEvent attack{"Attack", "fired", 7, 12, {{"attacker", "troops", 0, 6}, {"target", "village", 20, 27}}};
  const std::string attack_text = "troops fired on the village";
  const std::string attack_ok = R"([Attack(mention="fired", attacker=["troops"], instrument=[], place=[], target=["village"])])";

  add("clean-1", attack_text, {attack}, {{"Attack", attack_ok}, {"Die", "[]"}}, {});
  add("clean-2", "nothing happened", {}, {{"Attack", "[]"}, {"Die", "[]"}}, {});
  add("pe", attack_text, {attack}, {{"Attack", attack_ok}, {"Die", R"([Die(mention="fired", victim=["village"])"}}, {ErrorCategory::kPE});
  add("tte-type", attack_text, {attack},
      {{"Attack", "[]"}, {"Die", R"([Die(mention="fired", agent=[], instrument=[], place=[], victim=[])])"}},
      {ErrorCategory::kTTE});
  add("tte-spurious", "nothing happened", {},
      {{"Attack", R"([Attack(mention="happened", attacker=[], instrument=[], place=[], target=[])])"}},
      {ErrorCategory::kTTE});
  add("ae-role", attack_text, {attack},
      {{"Attack", R"([Attack(mention="fired", attacker=["village"], instrument=[], place=[], target=["village"])])"}},
      {ErrorCategory::kAE});
  add("ae-span", attack_text, {attack},
      {{"Attack", R"([Attack(mention="fired", attacker=["troops"], instrument=[], place=[], target=["the village"])])"}},
      {ErrorCategory::kAE});
  add("mae-arg", attack_text, {attack},
      {{"Attack", R"([Attack(mention="fired", attacker=["troops"], instrument=[], place=[], target=[])])"}},
      {ErrorCategory::kMAE});
  add("mae-event", "troops fired and a man died",
      {{"Attack", "fired", 7, 12, {{"attacker", "troops", 0, 6}}}, {"Die", "died", 23, 27, {{"victim", "man", 19, 22}}}},
      {{"Attack", R"([Attack(mention="fired", attacker=["troops"], instrument=[], place=[], target=[])])"}, {"Die", "[]"}},
      {ErrorCategory::kMAE});
  add("clean-3", "troops fired and a man died",
      {{"Attack", "fired", 7, 12, {{"attacker", "troops", 0, 6}}}, {"Die", "died", 23, 27, {{"victim", "man", 19, 22}}}},
      {{"Attack", R"([Attack(mention="fired", attacker=["troops"], instrument=[], place=[], target=[])])"},
       {"Die", R"([Die(mention="died", agent=[], instrument=[], place=[], victim=["man"])])"}},
      {});
  return f;
}

// ---- chat stubs -----------------------------------------------------------

ChatResponse ScriptedClient::complete(const ChatRequest& request) {
  std::lock_guard lock(mu_);
  requests_.push_back(request);
  std::string reply = replies_.empty() ? std::string{} : replies_.front();
  if (replies_.size() > 1) replies_.pop_front();
  return {reply, fmt::format("stub-{}", requests_.size()), "2024-01-01T00:00:00Z"};
}

std::vector<ChatRequest> ScriptedClient::requests() const {
  std::lock_guard lock(mu_);
  return requests_;
}

std::string generation_answer(const EventTypeDef& type, std::size_t n, bool fenced, const std::string& prose) {
  auto defs = [&](const std::string& what) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < n; ++i) arr.push_back(fmt::format("{} definition {}", what, i + 1));
    return arr;
  };
  Json args = Json::object();
  for (const auto& r : type.roles) args[r.name] = defs(r.name);
  Json body = {{"Event Definition", defs(type.name)}, {"Arguments Definitions", args}};
  std::string text = body.dump(2);
  return prose + (fenced ? "```json\n" + text + "\n```\n" : text);
}

std::string consolidation_answer(const EventTypeDef& type) {
  Json args = Json::object();
  args["mention"] = "Whatever the model says about mentions.";
  for (const auto& r : type.roles) args[r.name] = "Integrated " + r.name + " definition.";
  Json body = {{"Event Definition", "Integrated " + type.name + " definition."}, {"Arguments Definitions", args}};
  return "```json\n" + body.dump(2) + "\n```";
}

}  // namespace eeguide::testing
