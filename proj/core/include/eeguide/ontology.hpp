#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eeguide/jsonl.hpp"

namespace eeguide {

// Every role is list-valued in the code format, so only the name is stored.
struct RoleDef {
  std::string name;

  bool operator==(const RoleDef&) const = default;
};

struct EventTypeDef {
  std::string name;    // class name, e.g. "Extradite"
  std::string parent;  // super-type, e.g. "JusticeEvent"
  std::vector<RoleDef> roles;

  bool has_role(std::string_view role) const;
  bool operator==(const EventTypeDef&) const = default;
};

/// The schema set: event types with their parent and ordered roles.
///
/// Immutable after construction. Role order is preserved exactly as given
/// because schema and output rendering are order-sensitive. The hierarchy is
/// one level deep: a parent name may not itself be an event type.
class Ontology {
 public:
  Ontology(std::string name, std::vector<EventTypeDef> event_types);

  static Ontology from_json(const Json& j);
  Json to_json() const;

  const std::string& name() const { return name_; }
  const std::vector<EventTypeDef>& event_types() const { return types_; }
  std::size_t size() const { return types_.size(); }

  const EventTypeDef* find(std::string_view event_type) const;
  // Throws a validation error for unknown names.
  const EventTypeDef& at(std::string_view event_type) const;
  std::size_t index_of(std::string_view event_type) const;

  // Other types sharing the parent of `event_type`, in file order.
  std::vector<const EventTypeDef*> siblings(std::string_view event_type) const;

  // Number of distinct role names across all types.
  std::size_t distinct_role_count() const;

  bool operator==(const Ontology& other) const {
    return name_ == other.name_ && types_ == other.types_;
  }

 private:
  std::string name_;
  std::vector<EventTypeDef> types_;
  std::unordered_map<std::string, std::size_t> index_;
};

Ontology load_ontology(const std::string& path);
void save_ontology(const Ontology& ontology, const std::string& path);

}  // namespace eeguide
