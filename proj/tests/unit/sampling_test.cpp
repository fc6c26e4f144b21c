#include <gtest/gtest.h>

#include <map>
#include <set>

#include "eeguide/error.hpp"
#include "eeguide/sampling.hpp"
#include "support.hpp"

namespace eeguide {
namespace {

using testing::ace05_ontology;

CorpusSplit one_event_split() {
  CorpusSplit split;
  split.name = "train";
  split.instances.push_back(testing::extradite_instance());
  return split;
}

GuidelineStore full_store(const Ontology& ont, GuidelineVariant v) {
  GuidelineStore store(v);
  for (const auto& t : ont.event_types()) {
    GuidelineSet set;
    set.event_type = t.name;
    set.variant = v;
    auto n = definitions_per_item(v);
    for (std::size_t i = 0; i < n; ++i) set.event_definitions.push_back(t.name + " def " + std::to_string(i));
    for (const auto& r : t.roles) {
      std::vector<std::string> defs;
      for (std::size_t i = 0; i < n; ++i) defs.push_back(r.name + " def " + std::to_string(i));
      set.role_definitions.emplace_back(r.name, defs);
    }
    store.put(set);
  }
  return store;
}

TEST(Training, OneEventWithNegativeSamplingGivesSixteen) {
  auto ont = ace05_ontology();
  auto recs = build_training(one_event_split(), ont, nullptr, {.with_ns = true, .seed = 1});
  ASSERT_EQ(recs.size(), 16u);
  EXPECT_EQ(recs[0].event_type, "Extradite");
  EXPECT_NE(*recs[0].output, "[]");
  std::set<std::string> negatives;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    EXPECT_EQ(*recs[i].output, "[]");
    EXPECT_NE(recs[i].event_type, "Extradite");
    EXPECT_TRUE(ont.find(recs[i].event_type));
    negatives.insert(recs[i].event_type);
  }
  EXPECT_EQ(negatives.size(), 15u);
}

TEST(Training, WithoutNegativeSamplingOnlyGoldTypes) {
  auto recs = build_training(one_event_split(), ace05_ontology(), nullptr, {.with_ns = false});
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].event_type, "Extradite");
}

TEST(Training, NoEventInstanceGivesOneEmptyRecord) {
  auto ont = ace05_ontology();
  CorpusSplit split{"train", {{"D", "D-1", "i1", "Nothing happened here .", {}}}};
  for (bool ns : {false, true}) {
    auto recs = build_training(split, ont, nullptr, {.with_ns = ns, .seed = 3});
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(*recs[0].output, "[]");
    EXPECT_TRUE(ont.find(recs[0].event_type));
  }
}

TEST(Training, TwoGoldTypesGiveTwoPositives) {
  auto ont = ace05_ontology();
  CorpusSplit split{"train",
                    {{"D", "D-1", "i1", "He was arrested and jailed .",
                      {{"ArrestJail", "arrested", 7, 15, {}}, {"Attack", "jailed", 20, 26, {}}}}}};
  auto plain = build_training(split, ont, nullptr, {.with_ns = false});
  ASSERT_EQ(plain.size(), 2u);
  EXPECT_EQ(plain[0].event_type, "ArrestJail");
  EXPECT_EQ(plain[1].event_type, "Attack");
  auto ns = build_training(split, ont, nullptr, {.with_ns = true, .seed = 4});
  ASSERT_EQ(ns.size(), 32u);
  for (std::size_t block = 0; block < 2; ++block) {
    for (std::size_t k = 1; k <= 15; ++k) {
      const auto& r = ns[block * 16 + k];
      EXPECT_NE(r.event_type, "ArrestJail");
      EXPECT_NE(r.event_type, "Attack");
    }
  }
}

TEST(Training, NegativesNeverGoldOnSyntheticCorpus) {
  auto ont = ace05_ontology();
  auto split = testing::synthetic_corpus(ont, 300, 21);
  auto recs = build_training(split, ont, nullptr, {.with_ns = true, .seed = 21});
  std::size_t positives = 0;
  std::size_t expected = 0;
  for (const auto& inst : split.instances) expected += inst.events.empty() ? 1 : 16 * inst.gold_types().size();
  EXPECT_EQ(recs.size(), expected);
  for (const auto& r : recs) {
    const auto* inst = split.find(r.instance_id);
    ASSERT_NE(inst, nullptr);
    bool gold = inst->has_type(r.event_type);
    if (gold) ++positives;
    EXPECT_EQ(gold, *r.output != "[]") << r.instance_id << " " << r.event_type;
  }
  EXPECT_GT(positives, 0u);
}

TEST(Training, TooManyNegativesRequested) {
  auto ont = ace05_ontology();
  auto split = one_event_split();
  EXPECT_NO_THROW(build_training(split, ont, nullptr, {.with_ns = true, .ns_count = 32}));
  try {
    build_training(split, ont, nullptr, {.with_ns = true, .ns_count = 33});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
  }
}

TEST(Training, DeterministicAndWorkerIndependent) {
  auto ont = ace05_ontology();
  auto split = testing::synthetic_corpus(ont, 200, 5);
  auto store = full_store(ont, GuidelineVariant::kPosNeg);
  TrainPlan plan{GuidelineVariant::kPosNeg, true, 15, 99};
  auto a = build_training(split, ont, &store, plan, {.workers = 1});
  auto b = build_training(split, ont, &store, plan, {.workers = 4});
  EXPECT_EQ(a, b);
  plan.seed = 100;
  auto c = build_training(split, ont, &store, plan, {.workers = 1});
  EXPECT_NE(a, c);
}

TEST(Training, SampledGuidelineIndexCoversAllFive) {
  auto ont = ace05_ontology();
  auto split = testing::synthetic_corpus(ont, 200, 8);
  auto store = full_store(ont, GuidelineVariant::kPositive);
  auto recs = build_training(split, ont, &store, {GuidelineVariant::kPositive, false, 15, 8});
  std::set<std::size_t> seen;
  for (const auto& r : recs) {
    ASSERT_TRUE(r.guideline_index);
    EXPECT_LT(*r.guideline_index, 5u);
    seen.insert(*r.guideline_index);
    EXPECT_NE(r.input.find(r.event_type + " def " + std::to_string(*r.guideline_index)), std::string::npos);
  }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(Training, VariantNeedsMatchingStore) {
  auto ont = ace05_ontology();
  auto store = full_store(ont, GuidelineVariant::kPositive);
  EXPECT_THROW(build_training(one_event_split(), ont, nullptr, {GuidelineVariant::kPositive}), Error);
  EXPECT_THROW(build_training(one_event_split(), ont, &store, {GuidelineVariant::kPosNeg}), Error);
  GuidelineStore partial(GuidelineVariant::kPositive);
  partial.put(store.at("Extradite"));
  EXPECT_THROW(build_training(one_event_split(), ont, &partial, {GuidelineVariant::kPositive}), Error);
}

TEST(Inference, EveryTypeForEveryInstance) {
  auto ont = ace05_ontology();
  auto split = testing::synthetic_corpus(ont, 7, 2);
  auto recs = build_inference(split, ont, nullptr, GuidelineVariant::kNoGuideline, 0);
  ASSERT_EQ(recs.size(), 7u * 33u);
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t t = 0; t < 33; ++t) {
      const auto& r = recs[i * 33 + t];
      EXPECT_EQ(r.instance_id, split.instances[i].instance_id);
      EXPECT_EQ(r.event_type, ont.event_types()[t].name);
      EXPECT_FALSE(r.output);
    }
  }
}

TEST(Inference, DatasetNameDefaultsToOntology) {
  auto ont = ace05_ontology();
  auto recs = build_inference(one_event_split(), ont, nullptr, GuidelineVariant::kNoGuideline, 0);
  EXPECT_EQ(recs[0].dataset_name, "ace05-en");
  auto named = build_inference(one_event_split(), ont, nullptr, GuidelineVariant::kNoGuideline, 0,
                               {.dataset_name = "ace05-en_mini"});
  EXPECT_EQ(named[0].dataset_name, "ace05-en_mini");
}

}  // namespace
}  // namespace eeguide
