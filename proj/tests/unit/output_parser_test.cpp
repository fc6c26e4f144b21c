#include <gtest/gtest.h>

#include <algorithm>

#include "eeguide/codefmt.hpp"
#include "eeguide/error.hpp"
#include "eeguide/output_parser.hpp"
#include "support.hpp"

namespace eeguide {
namespace {

using testing::ace05_ontology;

bool has_diag(const PredictionRecord& r, DiagnosticKind k) {
  return std::any_of(r.diagnostics.begin(), r.diagnostics.end(), [&](const Diagnostic& d) { return d.kind == k; });
}

TEST(ParseOutput, ExtraditeOutput) {
  auto ont = ace05_ontology();
  auto rec = parse_output(
      R"([Extradite(mention="extradited", agent=["government"], destination=["Hague"], origin=[], person=["him"])])",
      ont, "i1", "Extradite");
  ASSERT_EQ(rec.status, ParseStatus::kOk);
  ASSERT_EQ(rec.events.size(), 1u);
  const auto& ev = rec.events[0];
  EXPECT_EQ(ev.event_type, "Extradite");
  EXPECT_EQ(ev.mention, "extradited");
  EXPECT_EQ(*ev.role("agent"), std::vector<std::string>{"government"});
  EXPECT_EQ(*ev.role("destination"), std::vector<std::string>{"Hague"});
  EXPECT_TRUE(ev.role("origin")->empty());
  EXPECT_EQ(*ev.role("person"), std::vector<std::string>{"him"});
  EXPECT_TRUE(rec.diagnostics.empty());
  EXPECT_EQ(ev.instance_id, "i1");
}

TEST(ParseOutput, EmptyList) {
  auto rec = parse_output("[]", ace05_ontology());
  EXPECT_EQ(rec.status, ParseStatus::kOk);
  EXPECT_TRUE(rec.events.empty());
  EXPECT_TRUE(rec.diagnostics.empty());
}

TEST(ParseOutput, HallucinatedArgumentDropped) {
  auto rec = parse_output(R"([Extradite(mention="sent", judge=["Smith"], person=["him"])])", ace05_ontology());
  EXPECT_EQ(rec.status, ParseStatus::kOk);
  ASSERT_EQ(rec.events.size(), 1u);
  EXPECT_EQ(rec.events[0].role("judge"), nullptr);
  EXPECT_TRUE(has_diag(rec, DiagnosticKind::kHallucinatedArgument));
  EXPECT_TRUE(has_diag(rec, DiagnosticKind::kMissingArgument));
  EXPECT_FALSE(rec.has_fatal());
}

TEST(ParseOutput, UnknownClassIsValidationError) {
  auto rec = parse_output(R"([Kidnap(mention="took")])", ace05_ontology());
  EXPECT_EQ(rec.status, ParseStatus::kValidationError);
  EXPECT_TRUE(rec.events.empty());
  EXPECT_TRUE(has_diag(rec, DiagnosticKind::kUnknownClass));
}

TEST(ParseOutput, MissingMentionDropsEvent) {
  auto rec = parse_output(R"([Acquit(defendant=["Smith"]), Acquit(mention="cleared", defendant=[], adjudicator=[])])",
                          ace05_ontology());
  EXPECT_EQ(rec.status, ParseStatus::kValidationError);
  ASSERT_EQ(rec.events.size(), 1u);
  EXPECT_EQ(rec.events[0].mention, "cleared");
  EXPECT_TRUE(has_diag(rec, DiagnosticKind::kMissingMention));
}

TEST(ParseOutput, CoercionsAreNonFatal) {
  auto rec = parse_output(R"([Acquit(mention=["cleared"], defendant="Smith", adjudicator=[])])", ace05_ontology());
  EXPECT_EQ(rec.status, ParseStatus::kOk);
  ASSERT_EQ(rec.events.size(), 1u);
  EXPECT_EQ(rec.events[0].mention, "cleared");
  EXPECT_EQ(*rec.events[0].role("defendant"), std::vector<std::string>{"Smith"});
  EXPECT_TRUE(has_diag(rec, DiagnosticKind::kNonStringMention));
  EXPECT_TRUE(has_diag(rec, DiagnosticKind::kNonListValue));
}

TEST(ParseOutput, OffPromptClassKept) {
  auto rec = parse_output(R"([Attack(mention="shot")])", ace05_ontology(), "i", "Die");
  EXPECT_EQ(rec.status, ParseStatus::kOk);
  EXPECT_EQ(rec.events.size(), 1u);
  EXPECT_TRUE(has_diag(rec, DiagnosticKind::kOffPromptClass));
}

TEST(ParseOutput, FencesAndResultPrefix) {
  auto ont = ace05_ontology();
  for (const char* raw : {"```python\nresult = [Attack(mention=\"shot\")]\n```", "result = [Attack(mention='shot')]",
                          "  [Attack(mention=\"shot\")]\n\n", "```\n[Attack(mention=\"shot\")]\n```"}) {
    auto rec = parse_output(raw, ont);
    EXPECT_EQ(rec.status, ParseStatus::kOk) << raw;
    ASSERT_EQ(rec.events.size(), 1u) << raw;
    EXPECT_EQ(rec.events[0].mention, "shot");
  }
}

TEST(ParseOutput, TrailingCommasAndSingleQuotes) {
  auto rec = parse_output("[Attack(mention='shot', target=['a', \"b\",], ),]", ace05_ontology());
  EXPECT_EQ(rec.status, ParseStatus::kOk);
  ASSERT_EQ(rec.events.size(), 1u);
  EXPECT_EQ(*rec.events[0].role("target"), (std::vector<std::string>{"a", "b"}));
}

TEST(ParseOutput, EscapesDecoded) {
  auto rec = parse_output(R"([Attack(mention="say \"hi\"\\now", target=['it\'s', "café"])])", ace05_ontology());
  ASSERT_EQ(rec.status, ParseStatus::kOk);
  EXPECT_EQ(rec.events[0].mention, "say \"hi\"\\now");
  EXPECT_EQ(*rec.events[0].role("target"), (std::vector<std::string>{"it's", "caf\xc3\xa9"}));
}

TEST(ParseOutput, MalformedIsParseError) {
  auto ont = ace05_ontology();
  for (const char* raw : {"", "[Attack(mention=\"shot\"", "Attack(mention=\"shot\")", "[Attack(mention=shot)]",
                          "[Attack(mention=\"a\", mention=\"b\")]", "[Attack(mention=\"a\")] trailing",
                          "I think the answer is []", "[Attack(mention=\"unterminated)]"}) {
    auto rec = parse_output(raw, ont);
    EXPECT_EQ(rec.status, ParseStatus::kParseError) << raw;
    EXPECT_TRUE(rec.events.empty());
    EXPECT_TRUE(has_diag(rec, DiagnosticKind::kGrammar));
    EXPECT_EQ(rec.raw_text, raw);
  }
}

TEST(ParseOutput, RoundTripsRenderedGold) {
  auto ont = ace05_ontology();
  auto split = testing::synthetic_corpus(ont, 300, 31);
  for (const auto& inst : split.instances) {
    auto expected = testing::gold_as_predictions(inst, ont);
    for (const auto& type : inst.gold_types()) {
      std::vector<GoldEvent> events;
      for (const auto& ev : inst.events) {
        if (ev.event_type == type) events.push_back(ev);
      }
      auto rec = parse_output(render_output(events, ont), ont, inst.instance_id, type);
      ASSERT_EQ(rec.status, ParseStatus::kOk) << inst.instance_id;
      EXPECT_TRUE(rec.diagnostics.empty());
      std::vector<PredictedEvent> want;
      for (const auto& ev : expected) {
        if (ev.event_type == type) want.push_back(ev);
      }
      ASSERT_EQ(rec.events.size(), want.size());
      for (std::size_t i = 0; i < want.size(); ++i) EXPECT_TRUE(rec.events[i].same_content(want[i]));
    }
  }
}

TEST(Aggregate, DuplicatesAcrossPromptsKeptOnce) {
  auto ont = ace05_ontology();
  std::vector<PredictionRecord> recs = {
      parse_output(R"([Attack(mention="shot")])", ont, "i1", "Attack"),
      parse_output(R"([Attack(mention="shot"), Die(mention="killed")])", ont, "i1", "Die"),
      parse_output(R"([Attack(mention="shot")])", ont, "i2", "Attack"),
  };
  auto agg = aggregate(recs);
  ASSERT_EQ(agg.size(), 2u);
  EXPECT_EQ(agg["i1"].size(), 2u);
  EXPECT_EQ(agg["i2"].size(), 1u);
}

TEST(Aggregate, NoRecords) { EXPECT_TRUE(aggregate(std::span<const PredictionRecord>{}).empty()); }

TEST(ParseFile, RowsAndMissingFields) {
  auto ont = ace05_ontology();
  testing::TempDir dir;
  write_jsonl(dir.file("p.jsonl"),
              {Json::parse(R"({"instance_id": "a", "prompted_type": "Attack", "raw_text": "[]"})"),
               Json::parse(R"({"instance_id": "b", "prompted_type": "Attack", "raw_text": "[oops"})")});
  auto recs = parse_prediction_file(dir.file("p.jsonl"), ont, 2);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].status, ParseStatus::kOk);
  EXPECT_EQ(recs[1].status, ParseStatus::kParseError);
  write_jsonl(dir.file("bad.jsonl"), {Json::parse(R"({"instance_id": "a", "raw_text": "[]"})")});
  EXPECT_THROW(parse_prediction_file(dir.file("bad.jsonl"), ont), Error);
}

TEST(PredictionRecord, JsonShape) {
  auto rec = parse_output(R"([Acquit(mention="cleared", defendant=["Smith"])])", ace05_ontology(), "i", "Acquit");
  auto j = rec.to_json();
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["events"][0]["arguments"]["defendant"][0], "Smith");
  EXPECT_EQ(j["diagnostics"][0]["kind"], "missing_argument");
}

}  // namespace
}  // namespace eeguide
