#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "eeguide/guideline_set.hpp"
#include "eeguide/guidelines.hpp"
#include "eeguide/jsonl.hpp"
#include "eeguide/llmgate.hpp"

namespace eeguide::cli {

struct Seeds {
  std::uint64_t subset = 0;
  std::uint64_t exemplars = 0;
  std::uint64_t build = 0;
};

/// Run configuration. Every stage seed falls back to `seed`; flags override
/// the file; relative paths resolve against `workspace`, which defaults to
/// the directory holding the config file.
struct Config {
  std::filesystem::path workspace = ".";
  std::string ontology;
  std::string dataset_name;
  std::uint64_t seed = 0;
  Seeds seeds;
  bool strict = true;
  std::size_t workers = 0;
  GuidelineVariant variant = GuidelineVariant::kNoGuideline;
  std::string guidelines;
  bool with_ns = false;
  std::size_t ns_count = 15;
  EndpointConfig endpoint;
  GenerationOptions generation;

  std::string resolve(const std::string& path) const;
  Json to_json() const;
};

// Reads and validates a JSON config; one error lists every offending key.
Config load_config(const std::string& path);
Config config_from_json(const Json& j, const std::filesystem::path& base_dir);

}  // namespace eeguide::cli
