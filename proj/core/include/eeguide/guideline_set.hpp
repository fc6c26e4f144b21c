#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eeguide/jsonl.hpp"
#include "eeguide/ontology.hpp"

namespace eeguide {

enum class GuidelineVariant {
  kNoGuideline,
  kHuman,      // H
  kPositive,   // P
  kPosNeg,     // PN
  kPosSib,     // PS
  kPosNegInt,  // PN-Int
  kPosSibInt,  // PS-Int
};

// CLI spelling: noguide, h, p, pn, ps, pn-int, ps-int.
std::string_view to_string(GuidelineVariant v);
GuidelineVariant parse_variant(std::string_view s);
// Display label used in tables: NoGuideline, Guideline-H, Guideline-PN-Int...
std::string variant_label(GuidelineVariant v);

// P, PN and PS carry five sampled definitions per item; H and the
// consolidated variants carry one; NoGuideline carries none.
std::size_t definitions_per_item(GuidelineVariant v);

struct Provenance {
  std::string model;
  std::string timestamp;
  std::string prompt_hash;

  bool empty() const { return model.empty() && timestamp.empty() && prompt_hash.empty(); }
  bool operator==(const Provenance&) const = default;
};

struct GuidelineSet {
  std::string event_type;
  GuidelineVariant variant = GuidelineVariant::kPositive;
  std::vector<std::string> event_definitions;
  // Role order follows the ontology.
  std::vector<std::pair<std::string, std::vector<std::string>>> role_definitions;
  Provenance provenance;

  const std::vector<std::string>* role(std::string_view name) const;
  std::size_t size() const { return event_definitions.size(); }

  // Throws a validation error naming the first missing role or short list.
  void validate(const EventTypeDef& type) const;

  bool operator==(const GuidelineSet&) const = default;
};

/// All guideline sets of one (dataset, variant), keyed by event type.
///
/// On disk: `{event_type: {"Event Definition": [...], "Arguments Definitions":
/// {role: [...]}}}`. Provenance lives in a `<file>.provenance.json` sidecar so
/// the store keeps the exact generation-output schema.
class GuidelineStore {
 public:
  GuidelineStore() = default;
  explicit GuidelineStore(GuidelineVariant variant) : variant_(variant) {}

  GuidelineVariant variant() const { return variant_; }
  void put(GuidelineSet set);
  const GuidelineSet* find(std::string_view event_type) const;
  const GuidelineSet& at(std::string_view event_type) const;
  const std::map<std::string, GuidelineSet>& sets() const { return sets_; }
  bool empty() const { return sets_.empty(); }

  // Validates every ontology type that has an entry; with `require_all`,
  // every ontology type must have one.
  void validate(const Ontology& ontology, bool require_all) const;

  Json to_json(const Ontology& ontology) const;
  Json provenance_json(const Ontology& ontology) const;
  static GuidelineStore from_json(const Json& j, GuidelineVariant variant, const Ontology& ontology);

  void save(const std::string& path, const Ontology& ontology) const;
  static GuidelineStore load(const std::string& path, GuidelineVariant variant, const Ontology& ontology);

 private:
  GuidelineVariant variant_ = GuidelineVariant::kPositive;
  std::map<std::string, GuidelineSet> sets_;
};

}  // namespace eeguide
