#include "eeguide/ontology.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

#include "eeguide/error.hpp"
#include "eeguide/text.hpp"

namespace eeguide {

bool EventTypeDef::has_role(std::string_view role) const {
  return std::any_of(roles.begin(), roles.end(), [&](const RoleDef& r) { return r.name == role; });
}

Ontology::Ontology(std::string name, std::vector<EventTypeDef> event_types)
    : name_(std::move(name)), types_(std::move(event_types)) {
  if (types_.empty()) fail(ErrorKind::kValidation, fmt::format("ontology '{}' has no event types", name_));
  for (std::size_t i = 0; i < types_.size(); ++i) {
    const auto& t = types_[i];
    if (!is_identifier(t.name)) {
      fail(ErrorKind::kValidation, fmt::format("event type name '{}' is not an identifier", t.name));
    }
    if (t.parent.empty()) {
      fail(ErrorKind::kValidation, fmt::format("event type '{}' has an empty parent", t.name));
    }
    if (!is_identifier(t.parent)) {
      fail(ErrorKind::kValidation,
           fmt::format("parent '{}' of event type '{}' is not an identifier", t.parent, t.name));
    }
    if (!index_.emplace(t.name, i).second) {
      fail(ErrorKind::kValidation, fmt::format("duplicate event type '{}'", t.name));
    }
    std::unordered_set<std::string> seen;
    for (const auto& role : t.roles) {
      if (role.name.empty()) {
        fail(ErrorKind::kValidation, fmt::format("event type '{}' has an empty role name", t.name));
      }
      if (!is_identifier(role.name)) {
        fail(ErrorKind::kValidation,
             fmt::format("role '{}' of event type '{}' is not an identifier", role.name, t.name));
      }
      if (role.name == "mention") {
        fail(ErrorKind::kValidation,
             fmt::format("event type '{}' uses the reserved role name 'mention'", t.name));
      }
      if (!seen.insert(role.name).second) {
        fail(ErrorKind::kValidation,
             fmt::format("duplicate role '{}' in event type '{}'", role.name, t.name));
      }
    }
  }
  for (const auto& t : types_) {
    if (index_.contains(t.parent)) {
      fail(ErrorKind::kValidation,
           fmt::format("event type '{}' has parent '{}', which is itself an event type; "
                       "only one level of hierarchy is supported",
                       t.name, t.parent));
    }
  }
}

Ontology Ontology::from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::kValidation, "ontology must be a JSON object");
  if (!j.contains("name") || !j["name"].is_string()) {
    fail(ErrorKind::kValidation, "ontology field 'name' must be a string");
  }
  if (!j.contains("event_types") || !j["event_types"].is_array()) {
    fail(ErrorKind::kValidation, "ontology field 'event_types' must be an array");
  }
  std::vector<EventTypeDef> types;
  for (const auto& jt : j["event_types"]) {
    if (!jt.is_object() || !jt.contains("name") || !jt["name"].is_string()) {
      fail(ErrorKind::kValidation, "every event type needs a string 'name'");
    }
    EventTypeDef t;
    t.name = jt["name"].get<std::string>();
    if (!jt.contains("parent") || !jt["parent"].is_string()) {
      fail(ErrorKind::kValidation, fmt::format("event type '{}' needs a string 'parent'", t.name));
    }
    t.parent = jt["parent"].get<std::string>();
    if (jt.contains("roles")) {
      if (!jt["roles"].is_array()) {
        fail(ErrorKind::kValidation, fmt::format("roles of event type '{}' must be an array", t.name));
      }
      for (const auto& r : jt["roles"]) {
        if (!r.is_string()) {
          fail(ErrorKind::kValidation, fmt::format("role of event type '{}' must be a string", t.name));
        }
        t.roles.push_back({r.get<std::string>()});
      }
    }
    types.push_back(std::move(t));
  }
  return Ontology(j["name"].get<std::string>(), std::move(types));
}

Json Ontology::to_json() const {
  Json types = Json::array();
  for (const auto& t : types_) {
    Json roles = Json::array();
    for (const auto& r : t.roles) roles.push_back(r.name);
    types.push_back({{"name", t.name}, {"parent", t.parent}, {"roles", roles}});
  }
  return {{"name", name_}, {"event_types", types}};
}

const EventTypeDef* Ontology::find(std::string_view event_type) const {
  auto it = index_.find(std::string(event_type));
  return it == index_.end() ? nullptr : &types_[it->second];
}

const EventTypeDef& Ontology::at(std::string_view event_type) const {
  const auto* t = find(event_type);
  if (t == nullptr) {
    fail(ErrorKind::kValidation, fmt::format("unknown event type '{}' in ontology '{}'", event_type, name_));
  }
  return *t;
}

std::size_t Ontology::index_of(std::string_view event_type) const {
  return static_cast<std::size_t>(&at(event_type) - types_.data());
}

std::vector<const EventTypeDef*> Ontology::siblings(std::string_view event_type) const {
  const auto& self = at(event_type);
  std::vector<const EventTypeDef*> out;
  for (const auto& t : types_) {
    if (t.parent == self.parent && t.name != self.name) out.push_back(&t);
  }
  return out;
}

std::size_t Ontology::distinct_role_count() const {
  std::set<std::string> names;
  for (const auto& t : types_) {
    for (const auto& r : t.roles) names.insert(r.name);
  }
  return names.size();
}

Ontology load_ontology(const std::string& path) {
  Json j = read_json_file(path);
  try {
    return Ontology::from_json(j);
  } catch (const Error& e) {
    fail(e.kind(), fmt::format("{}: {}", path, e.what()));
  }
}

void save_ontology(const Ontology& ontology, const std::string& path) {
  write_json_file(path, ontology.to_json());
}

}  // namespace eeguide
