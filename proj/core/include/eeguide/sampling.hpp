#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eeguide/codefmt.hpp"
#include "eeguide/corpus.hpp"
#include "eeguide/guideline_set.hpp"
#include "eeguide/ontology.hpp"

namespace eeguide {

struct TrainPlan {
  GuidelineVariant variant = GuidelineVariant::kNoGuideline;
  bool with_ns = false;
  std::size_t ns_count = 15;
  std::uint64_t seed = 0;
};

struct BuildOptions {
  std::string dataset_name;  // defaults to the ontology name
  std::size_t workers = 0;
};

/// Training records, instance by instance in split order.
///
/// An instance with events yields one record per gold type (first-appearance
/// order), each followed by `ns_count` negatives when `with_ns` is set: distinct
/// non-gold types with output `[]`. A no-event instance yields one record with
/// a random type and output `[]`. Every draw comes from a stream keyed by
/// (seed, instance_id), so the result does not depend on worker count.
std::vector<PromptRecord> build_training(const CorpusSplit& split, const Ontology& ontology,
                                         const GuidelineStore* guidelines, const TrainPlan& plan,
                                         const BuildOptions& options = {});

// |split| x |ontology| records without outputs, types in ontology order.
std::vector<PromptRecord> build_inference(const CorpusSplit& split, const Ontology& ontology,
                                          const GuidelineStore* guidelines, GuidelineVariant variant,
                                          std::uint64_t seed, const BuildOptions& options = {});

}  // namespace eeguide
