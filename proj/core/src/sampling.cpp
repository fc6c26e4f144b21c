#include "eeguide/sampling.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "eeguide/error.hpp"
#include "eeguide/parallel.hpp"
#include "eeguide/rng.hpp"

namespace eeguide {

namespace {

PromptContext make_context(const Ontology& ontology, const GuidelineStore* guidelines, GuidelineVariant variant,
                           const BuildOptions& options) {
  if (variant != GuidelineVariant::kNoGuideline) {
    if (guidelines == nullptr) {
      fail(ErrorKind::kConfig, fmt::format("variant {} needs a guideline file", variant_label(variant)));
    }
    if (guidelines->variant() != variant) {
      fail(ErrorKind::kConfig, fmt::format("guideline file holds {} sets but the run asks for {}",
                                           variant_label(guidelines->variant()), variant_label(variant)));
    }
    guidelines->validate(ontology, true);
  }
  return {&ontology, variant, variant == GuidelineVariant::kNoGuideline ? nullptr : guidelines,
          options.dataset_name};
}

template <typename PerInstance>
std::vector<PromptRecord> flatten(std::size_t n, std::size_t workers, PerInstance&& per_instance) {
  std::vector<std::vector<PromptRecord>> chunks(n);
  parallel_for(n, [&](std::size_t i) { chunks[i] = per_instance(i); }, workers);
  std::size_t total = 0;
  for (const auto& c : chunks) total += c.size();
  std::vector<PromptRecord> out;
  out.reserve(total);
  for (auto& c : chunks) std::move(c.begin(), c.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<PromptRecord> build_training(const CorpusSplit& split, const Ontology& ontology,
                                         const GuidelineStore* guidelines, const TrainPlan& plan,
                                         const BuildOptions& options) {
  const auto ctx = make_context(ontology, guidelines, plan.variant, options);
  const auto& types = ontology.event_types();
  return flatten(split.instances.size(), options.workers, [&](std::size_t i) {
    const auto& inst = split.instances[i];
    Rng rng(stream_seed(plan.seed, inst.instance_id));
    std::vector<PromptRecord> out;
    const auto gold = inst.gold_types();
    if (gold.empty()) {
      const auto& type = types[rng.uniform(types.size())];
      out.push_back(build_prompt(inst, type.name, ctx, rng, true));
      return out;
    }
    std::vector<std::size_t> negative_pool;
    if (plan.with_ns) {
      const std::set<std::string> gold_set(gold.begin(), gold.end());
      for (std::size_t t = 0; t < types.size(); ++t) {
        if (!gold_set.contains(types[t].name)) negative_pool.push_back(t);
      }
      if (plan.ns_count > negative_pool.size()) {
        fail(ErrorKind::kValidation,
             fmt::format("instance {}: {} negative types requested but only {} non-gold types exist",
                         inst.instance_id, plan.ns_count, negative_pool.size()));
      }
    }
    for (const auto& type : gold) {
      out.push_back(build_prompt(inst, type, ctx, rng, true));
      if (!plan.with_ns) continue;
      for (auto k : sample_without_replacement(rng, negative_pool.size(), plan.ns_count)) {
        out.push_back(build_prompt(inst, types[negative_pool[k]].name, ctx, rng, true));
      }
    }
    return out;
  });
}

std::vector<PromptRecord> build_inference(const CorpusSplit& split, const Ontology& ontology,
                                          const GuidelineStore* guidelines, GuidelineVariant variant,
                                          std::uint64_t seed, const BuildOptions& options) {
  const auto ctx = make_context(ontology, guidelines, variant, options);
  return flatten(split.instances.size(), options.workers, [&](std::size_t i) {
    const auto& inst = split.instances[i];
    Rng rng(stream_seed(seed, inst.instance_id));
    std::vector<PromptRecord> out;
    out.reserve(ontology.size());
    for (const auto& type : ontology.event_types()) out.push_back(build_prompt(inst, type.name, ctx, rng, false));
    return out;
  });
}

}  // namespace eeguide
