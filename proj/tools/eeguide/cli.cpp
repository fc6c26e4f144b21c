#include "cli.hpp"

#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "config.hpp"
#include "eeguide/codefmt.hpp"
#include "eeguide/conformance.hpp"
#include "eeguide/corpus.hpp"
#include "eeguide/error.hpp"
#include "eeguide/error_taxonomy.hpp"
#include "eeguide/guidelines.hpp"
#include "eeguide/llmgate.hpp"
#include "eeguide/ontology.hpp"
#include "eeguide/output_parser.hpp"
#include "eeguide/report.hpp"
#include "eeguide/sampling.hpp"
#include "eeguide/scoring.hpp"
#include "eeguide/text.hpp"

namespace eeguide::cli {

namespace fs = std::filesystem;

namespace {

std::shared_ptr<spdlog::logger> logger() {
  if (auto l = spdlog::get("eeguide")) return l;
  auto l = spdlog::stderr_color_mt("eeguide");
  l->set_pattern("[%l] %v");
  return l;
}

struct Flags {
  std::string config;
  std::string ontology;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> variant;
  bool with_ns = false;
  CLI::Option* with_ns_opt = nullptr;
  std::optional<std::size_t> ns_count;
  bool strict = true;
  CLI::Option* strict_opt = nullptr;
  std::optional<std::string> cache_dir;
  std::optional<std::string> endpoint;
  bool offline = false;
  std::string out;
  std::string guidelines;
  std::optional<std::size_t> workers;
  std::string log_level = "info";
};

// Positional and per-command options.
struct Args {
  std::string input;
  std::string second;
  std::string gold;
  std::string split_name = "train";
  std::string stats_out;
  std::string subset_kind;
  std::optional<std::size_t> n;
  std::string tsv;
  std::string csv;
  std::string manual;
  std::string train_stats;
  std::string labels;
  std::vector<std::string> runs;
  std::string command;
  std::string work_dir = "oracle_work";
};

class Context {
 public:
  Context(Flags flags, Args args) : flags_(std::move(flags)), args_(std::move(args)) {
    if (!flags_.config.empty()) cfg_ = load_config(flags_.config);
    if (flags_.seed) {
      cfg_.seed = *flags_.seed;
      cfg_.seeds = {*flags_.seed, *flags_.seed, *flags_.seed};
    }
    if (flags_.variant) cfg_.variant = parse_variant(*flags_.variant);
    if (flags_.with_ns_opt != nullptr && flags_.with_ns_opt->count() > 0) cfg_.with_ns = flags_.with_ns;
    if (flags_.ns_count) cfg_.ns_count = *flags_.ns_count;
    if (flags_.strict_opt != nullptr && flags_.strict_opt->count() > 0) cfg_.strict = flags_.strict;
    if (flags_.cache_dir) cfg_.endpoint.cache_dir = *flags_.cache_dir;
    else cfg_.endpoint.cache_dir = cfg_.resolve(cfg_.endpoint.cache_dir);
    if (flags_.endpoint) cfg_.endpoint.base_url = *flags_.endpoint;
    if (flags_.offline) cfg_.endpoint.offline = true;
    if (flags_.workers) cfg_.workers = *flags_.workers;
    if (!flags_.ontology.empty()) cfg_.ontology = flags_.ontology;
    else cfg_.ontology = cfg_.resolve(cfg_.ontology);
    if (!flags_.guidelines.empty()) cfg_.guidelines = flags_.guidelines;
    else cfg_.guidelines = cfg_.resolve(cfg_.guidelines);
    logger()->info("resolved config: {}", cfg_.to_json().dump());
  }

  const Config& cfg() const { return cfg_; }
  const Args& args() const { return args_; }

  const Ontology& ontology() {
    if (!ontology_) {
      if (cfg_.ontology.empty()) fail(ErrorKind::kConfig, "no ontology given (set \"ontology\" or pass --ontology)");
      ontology_ = load_ontology(cfg_.ontology);
      logger()->info("ontology {}: {} event types, {} roles", ontology_->name(), ontology_->size(),
                     ontology_->distinct_role_count());
    }
    return *ontology_;
  }

  std::string dataset_name() { return cfg_.dataset_name.empty() ? ontology().name() : cfg_.dataset_name; }

  const std::string& out() const {
    if (flags_.out.empty()) fail(ErrorKind::kUsage, "--out is required for this command");
    return flags_.out;
  }

  CorpusSplit read_split(const std::string& path, const std::string& name = "split") {
    IngestOptions opts;
    opts.strict = cfg_.strict;
    opts.split_name = name;
    opts.workers = cfg_.workers;
    auto res = ingest(path, ontology(), opts);
    if (res.skipped > 0) {
      logger()->warn("{}: skipped {} invalid records", path, res.skipped);
      for (const auto& p : res.problems) logger()->warn("  {}", p);
    }
    return std::move(res.split);
  }

  std::optional<GuidelineStore> guidelines() {
    if (cfg_.variant == GuidelineVariant::kNoGuideline) return std::nullopt;
    if (cfg_.guidelines.empty()) {
      fail(ErrorKind::kConfig, fmt::format("variant {} needs --guidelines", variant_label(cfg_.variant)));
    }
    return GuidelineStore::load(cfg_.guidelines, cfg_.variant, ontology());
  }

  std::unique_ptr<LlmGateway> gateway() {
    auto gw = std::make_unique<LlmGateway>(cfg_.endpoint);
    logger()->info("cache {}: {} entries, offline={}", gw->cache().dir(), gw->cache().entry_count(),
                   cfg_.endpoint.offline);
    return gw;
  }

  static void log_traffic(const LlmGateway& gw) {
    logger()->info("llm traffic: {} network calls, {} cache hits", gw.network_calls(), gw.cache_hits());
  }

 private:
  Flags flags_;
  Args args_;
  Config cfg_;
  std::optional<Ontology> ontology_;
};

std::vector<PredictionRecord> read_predictions(Context& ctx, const std::string& path) {
  auto records = parse_prediction_file(path, ctx.ontology(), ctx.cfg().workers);
  std::map<ParseStatus, std::size_t> counts;
  for (const auto& r : records) ++counts[r.status];
  logger()->info("{}: {} records ({} ok, {} parse_error, {} validation_error)", path, records.size(),
                 counts[ParseStatus::kOk], counts[ParseStatus::kParseError], counts[ParseStatus::kValidationError]);
  return records;
}

// ---- commands ---------------------------------------------------------------

void cmd_ingest(Context& ctx) {
  auto split = ctx.read_split(ctx.args().input, ctx.args().split_name);
  write_split(split, ctx.out());
  auto s = stats(split);
  logger()->info("{} instances, {} event mentions, {} argument mentions", s.instances, s.event_mentions,
                 s.argument_mentions);
  if (!ctx.args().stats_out.empty()) write_json_file(ctx.args().stats_out, to_json(s));
}

void cmd_stats(Context& ctx) {
  auto split = ctx.read_split(ctx.args().input);
  auto s = stats(split);
  write_json_file(ctx.out(), to_json(s));
  std::cout << fmt::format("instances\t{}\nevent_mentions\t{}\nno_event_instances\t{}\nevent_types\t{}\n",
                           s.instances, s.event_mentions, s.no_event_instances, s.type_frequency.size());
}

void cmd_subset(Context& ctx) {
  const auto& kind = ctx.args().subset_kind;
  auto split = ctx.read_split(ctx.args().input);
  const auto seed = ctx.cfg().seeds.subset;
  CorpusSplit out;
  if (kind == "dev") {
    out = select_dev(split, ctx.ontology(), ctx.args().n.value_or(100), seed);
    out.name = "dev";
  } else if (kind == "2k") {
    out = subset_uniform(split, ctx.args().n.value_or(2000), seed);
    out.name = "train2k";
  } else {
    out = subset_covered(split, ctx.ontology(), ctx.args().n.value_or(100), seed);
    out.name = "train100";
  }
  logger()->info("subset {} with seed {}: {} of {} instances", kind, seed, out.instances.size(),
                 split.instances.size());
  write_split(out, ctx.out());
}

void cmd_guidelines_gen(Context& ctx) {
  auto split = ctx.read_split(ctx.args().input, "train");
  auto gw_ptr = ctx.gateway();
  auto& gw = *gw_ptr;
  const auto seed = ctx.cfg().seeds.exemplars;
  logger()->info("generating {} guidelines, exemplar seed {}", variant_label(ctx.cfg().variant), seed);
  auto gen = generate_store(split, ctx.ontology(), ctx.cfg().variant, gw, seed, ctx.cfg().generation,
                            ctx.cfg().endpoint.max_in_flight);
  for (const auto& n : gen.notes) logger()->warn("{}", n);
  for (const auto& t : gen.skipped) logger()->warn("{}: no positive instances, no guidelines generated", t);
  gen.store.save(ctx.out(), ctx.ontology());
  Context::log_traffic(gw);
}

void cmd_guidelines_consolidate(Context& ctx) {
  auto store = GuidelineStore::load(ctx.args().input, ctx.cfg().variant, ctx.ontology());
  auto gw_ptr = ctx.gateway();
  auto& gw = *gw_ptr;
  auto out = consolidate_store(store, ctx.ontology(), gw, ctx.cfg().generation, ctx.cfg().endpoint.max_in_flight);
  out.save(ctx.out(), ctx.ontology());
  logger()->info("{} -> {}: {} event types", variant_label(store.variant()), variant_label(out.variant()),
                 out.sets().size());
  Context::log_traffic(gw);
}

void cmd_guidelines_import(Context& ctx) {
  auto store = load_human(ctx.args().input, ctx.ontology());
  store.save(ctx.out(), ctx.ontology());
  logger()->info("imported human guidelines for {} event types", store.sets().size());
}

void cmd_build_train(Context& ctx) {
  auto split = ctx.read_split(ctx.args().input, "train");
  auto store = ctx.guidelines();
  TrainPlan plan{ctx.cfg().variant, ctx.cfg().with_ns, ctx.cfg().ns_count, ctx.cfg().seeds.build};
  BuildOptions opts{ctx.dataset_name(), ctx.cfg().workers};
  auto records = build_training(split, ctx.ontology(), store ? &*store : nullptr, plan, opts);
  auto n = export_jsonl(records, ctx.out());
  logger()->info("wrote {} training records ({}, ns={}, ns_count={}, seed {})", n, variant_label(plan.variant),
                 plan.with_ns, plan.ns_count, plan.seed);
}

void cmd_build_infer(Context& ctx) {
  auto split = ctx.read_split(ctx.args().input, "test");
  auto store = ctx.guidelines();
  BuildOptions opts{ctx.dataset_name(), ctx.cfg().workers};
  auto records = build_inference(split, ctx.ontology(), store ? &*store : nullptr, ctx.cfg().variant,
                                 ctx.cfg().seeds.build, opts);
  auto n = export_jsonl(records, ctx.out());
  logger()->info("wrote {} inference records ({} x {})", n, split.instances.size(), ctx.ontology().size());
}

// Prediction rows whose raw text is the gold rendering, one per (instance, type).
void cmd_build_gold(Context& ctx) {
  auto split = ctx.read_split(ctx.args().input, "gold");
  std::vector<Json> rows;
  for (const auto& inst : split.instances) {
    for (const auto& type : ctx.ontology().event_types()) {
      std::vector<GoldEvent> events;
      for (const auto& ev : inst.events) {
        if (ev.event_type == type.name) events.push_back(ev);
      }
      rows.push_back({{"instance_id", inst.instance_id},
                      {"prompted_type", type.name},
                      {"raw_text", render_output(events, ctx.ontology())}});
    }
  }
  write_jsonl(ctx.out(), rows);
  logger()->info("wrote {} gold prediction rows", rows.size());
}

void cmd_parse(Context& ctx) {
  auto records = read_predictions(ctx, ctx.args().input);
  std::vector<Json> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(r.to_json());
  write_jsonl(ctx.out(), rows);
}

void cmd_score(Context& ctx) {
  auto records = read_predictions(ctx, ctx.args().input);
  auto gold = ctx.read_split(ctx.args().gold, "gold");
  auto agg = aggregate(records);
  auto report = score(agg, gold, ctx.ontology());
  report.errors = categorize_errors(agg, gold, records).summary();
  write_json_file(ctx.out(), report.to_json());
  const auto tsv = report.f1_tsv();
  if (!ctx.args().tsv.empty()) write_text_file(ctx.args().tsv, tsv);
  std::cout << tsv;
}

void cmd_errors(Context& ctx) {
  auto records = read_predictions(ctx, ctx.args().input);
  auto gold = ctx.read_split(ctx.args().gold, "gold");
  std::optional<ManualLabels> manual;
  if (!ctx.args().manual.empty()) manual = load_manual_labels(ctx.args().manual);
  auto report = categorize_errors(aggregate(records), gold, records, manual ? &*manual : nullptr);
  write_json_file(ctx.out(), report.to_json());
  auto table = to_plot_table(report);
  if (!ctx.args().csv.empty()) emit_plot_data(table, ctx.args().csv);
  for (const auto& row : table.rows) std::cout << fmt::format("{}\t{}\t{}\n", row[0], row[1], row[2]);
}

SplitStats load_train_stats(Context& ctx, const std::string& path) {
  if (fs::path(path).extension() == ".jsonl") return stats(ctx.read_split(path, "train"));
  return stats_from_json(read_json_file(path));
}

void cmd_report_delta(Context& ctx) {
  if (ctx.args().train_stats.empty()) fail(ErrorKind::kUsage, "--train-stats is required");
  auto a = ScoreReport::from_json(read_json_file(ctx.args().input));
  auto b = ScoreReport::from_json(read_json_file(ctx.args().second));
  std::string la = "a";
  std::string lb = "b";
  if (auto comma = ctx.args().labels.find(','); comma != std::string::npos) {
    la = ctx.args().labels.substr(0, comma);
    lb = ctx.args().labels.substr(comma + 1);
  }
  auto table = frequency_delta(a, b, load_train_stats(ctx, ctx.args().train_stats), la, lb);
  write_text_file(ctx.out(), table.to_tsv());
  if (!ctx.args().csv.empty()) emit_plot_data(to_plot_table(table), ctx.args().csv);
  std::cout << table.to_text();
}

void cmd_report_compare(Context& ctx) {
  std::vector<std::pair<std::string, ScoreReport>> reports;
  for (const auto& run : ctx.args().runs) {
    auto eq = run.find('=');
    if (eq == std::string::npos || eq == 0) {
      fail(ErrorKind::kUsage, fmt::format("expected LABEL=REPORT.json, got '{}'", run));
    }
    reports.emplace_back(run.substr(0, eq), ScoreReport::from_json(read_json_file(run.substr(eq + 1))));
  }
  auto table = comparison_table(reports);
  write_text_file(ctx.out(), table.to_tsv());
  if (!ctx.args().csv.empty()) emit_plot_data(to_plot_table(table), ctx.args().csv);
  std::cout << table.to_text();
}

void cmd_oracle_export(Context& ctx) {
  auto prompts = read_prompt_jsonl(ctx.args().input);
  auto cases = conformance_cases(prompts);
  std::vector<Json> rows;
  for (const auto& c : cases) rows.push_back(to_request(c));
  write_jsonl(ctx.out(), rows);
  logger()->info("wrote {} oracle requests", rows.size());
}

void report_conformance(const ConformanceSummary& s, const std::string& out) {
  write_json_file(out, s.to_json());
  std::cout << fmt::format("cases\t{}\nclean_ok\t{}\nclean_ok_agree\t{}\nprimary_failed\t{}\nboth_failed\t{}\n",
                           s.cases, s.clean_ok, s.clean_ok_agree, s.primary_failed, s.both_failed);
  if (!s.passed()) {
    for (const auto& m : s.mismatches) logger()->error("{}: {}", m.id, m.reason);
    fail(ErrorKind::kValidation, fmt::format("{} oracle mismatches", s.mismatches.size()));
  }
}

std::vector<ConformanceCase> cases_from_requests(const std::string& path) {
  std::vector<ConformanceCase> cases;
  for (const auto& row : read_jsonl(path)) {
    cases.push_back({row.at("id").get<std::string>(), row.at("schema").get<std::string>(),
                     row.at("output").get<std::string>()});
  }
  return cases;
}

void cmd_oracle_compare(Context& ctx) {
  auto cases = cases_from_requests(ctx.args().input);
  auto responses = read_jsonl(ctx.args().second);
  report_conformance(compare_with_oracle(cases, responses, ctx.ontology()), ctx.out());
}

void cmd_oracle_run(Context& ctx) {
  if (ctx.args().command.empty()) fail(ErrorKind::kUsage, "--command is required");
  auto prompts = read_prompt_jsonl(ctx.args().input);
  auto cases = conformance_cases(prompts);
  auto responses = run_oracle(ctx.args().command, cases, ctx.args().work_dir);
  report_conformance(compare_with_oracle(cases, responses, ctx.ontology()), ctx.out());
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::kUsage:
    case ErrorKind::kConfig: return kExitUsage;
    case ErrorKind::kIo: return kExitIo;
    case ErrorKind::kValidation: return kExitValidation;
    case ErrorKind::kLlm: return kExitLlm;
  }
  return kExitInternal;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Code-format event extraction toolkit", "eeguide"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  Args args;
  using Command = void (*)(Context&);
  Command command = nullptr;

  app.add_option("--config", flags.config, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--ontology", flags.ontology, "Ontology JSON (overrides the config)");
  app.add_option("--seed", flags.seed, "Seed for every stage (overrides the config)");
  app.add_option("--variant", flags.variant, "noguide, h, p, pn, ps, pn-int or ps-int");
  flags.with_ns_opt = app.add_flag("--with-ns,!--no-ns", flags.with_ns, "Add negative samples to training");
  app.add_option("--ns-count", flags.ns_count, "Negative samples per positive record (default 15)");
  flags.strict_opt = app.add_flag("--strict,!--lenient", flags.strict, "Abort on the first invalid record");
  app.add_option("--cache-dir", flags.cache_dir, "LLM record-replay cache directory");
  app.add_option("--endpoint", flags.endpoint, "Chat-completion base URL");
  app.add_flag("--offline", flags.offline, "Serve LLM calls from the cache only");
  app.add_option("--out", flags.out, "Output file");
  app.add_option("--guidelines", flags.guidelines, "Guideline store for the selected variant");
  app.add_option("--workers", flags.workers, "Worker threads (0 = all cores)");
  app.add_option("--log-level", flags.log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  auto on = [&](CLI::App* sub, Command fn) { sub->callback([&command, fn] { command = fn; }); };

  auto* ingest_cmd = app.add_subcommand("ingest", "Validate a TextEE-style file and write the canonical split");
  ingest_cmd->add_option("input", args.input)->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--split-name", args.split_name);
  ingest_cmd->add_option("--stats", args.stats_out, "Also write split statistics here");
  on(ingest_cmd, cmd_ingest);

  auto* stats_cmd = app.add_subcommand("stats", "Split statistics");
  stats_cmd->add_option("input", args.input)->required()->check(CLI::ExistingFile);
  on(stats_cmd, cmd_stats);

  auto* subset_cmd = app.add_subcommand("subset", "Dev-100, Train2k and Train100 subsets");
  subset_cmd->add_option("kind", args.subset_kind)->required()->check(CLI::IsMember({"dev", "2k", "100"}));
  subset_cmd->add_option("input", args.input)->required()->check(CLI::ExistingFile);
  subset_cmd->add_option("--n", args.n, "Subset size (defaults 100, 2000, 100)");
  on(subset_cmd, cmd_subset);

  auto* gl_cmd = app.add_subcommand("guidelines", "Generate, consolidate or import guidelines");
  gl_cmd->require_subcommand(1);
  auto* gen_cmd = gl_cmd->add_subcommand("gen", "Generate P/PN/PS guidelines from a training split");
  gen_cmd->add_option("train", args.input)->required()->check(CLI::ExistingFile);
  on(gen_cmd, cmd_guidelines_gen);
  auto* cons_cmd = gl_cmd->add_subcommand("consolidate", "PN/PS store to PN-Int/PS-Int");
  cons_cmd->add_option("store", args.input)->required()->check(CLI::ExistingFile);
  on(cons_cmd, cmd_guidelines_consolidate);
  auto* human_cmd = gl_cmd->add_subcommand("import-human", "Validate and import human-written guidelines");
  human_cmd->add_option("file", args.input)->required();
  on(human_cmd, cmd_guidelines_import);

  auto* build_cmd = app.add_subcommand("build", "Build prompt JSONL files");
  build_cmd->require_subcommand(1);
  auto* train_cmd = build_cmd->add_subcommand("train", "Training records");
  train_cmd->add_option("split", args.input)->required()->check(CLI::ExistingFile);
  on(train_cmd, cmd_build_train);
  auto* infer_cmd = build_cmd->add_subcommand("infer", "Inference records, every instance x every type");
  infer_cmd->add_option("split", args.input)->required()->check(CLI::ExistingFile);
  on(infer_cmd, cmd_build_infer);
  auto* gold_cmd = build_cmd->add_subcommand("gold", "Prediction file holding the gold outputs");
  gold_cmd->add_option("split", args.input)->required()->check(CLI::ExistingFile);
  on(gold_cmd, cmd_build_gold);

  auto* parse_cmd = app.add_subcommand("parse", "Parse and validate model generations");
  parse_cmd->add_option("predictions", args.input)->required()->check(CLI::ExistingFile);
  on(parse_cmd, cmd_parse);

  auto* score_cmd = app.add_subcommand("score", "TI/TC/AI/AC micro-F1");
  score_cmd->add_option("predictions", args.input)->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--gold", args.gold)->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--tsv", args.tsv, "Also write the four F1 values as TSV");
  on(score_cmd, cmd_score);

  auto* errors_cmd = app.add_subcommand("errors", "Error taxonomy");
  errors_cmd->add_option("predictions", args.input)->required()->check(CLI::ExistingFile);
  errors_cmd->add_option("--gold", args.gold)->required()->check(CLI::ExistingFile);
  errors_cmd->add_option("--manual", args.manual, "CA/LN relabels {instance_id: category}")
      ->check(CLI::ExistingFile);
  errors_cmd->add_option("--csv", args.csv, "Plot data");
  on(errors_cmd, cmd_errors);

  auto* report_cmd = app.add_subcommand("report", "Analysis tables");
  report_cmd->require_subcommand(1);
  auto* delta_cmd = report_cmd->add_subcommand("delta", "Per-type AC delta by training frequency");
  delta_cmd->add_option("report_a", args.input)->required()->check(CLI::ExistingFile);
  delta_cmd->add_option("report_b", args.second)->required()->check(CLI::ExistingFile);
  delta_cmd->add_option("--train-stats", args.train_stats, "Stats JSON or canonical training split")
      ->check(CLI::ExistingFile);
  delta_cmd->add_option("--labels", args.labels, "Column labels as A,B");
  delta_cmd->add_option("--csv", args.csv, "Plot data");
  on(delta_cmd, cmd_report_delta);
  auto* compare_cmd = report_cmd->add_subcommand("compare", "Variant comparison table");
  compare_cmd->add_option("runs", args.runs, "LABEL=REPORT.json ...")->required();
  compare_cmd->add_option("--csv", args.csv, "Plot data");
  on(compare_cmd, cmd_report_compare);

  auto* oracle_cmd = app.add_subcommand("oracle", "Conformance against the interpreter-backed oracle");
  oracle_cmd->require_subcommand(1);
  auto* export_cmd = oracle_cmd->add_subcommand("export", "Oracle requests from prompt records");
  export_cmd->add_option("prompts", args.input)->required()->check(CLI::ExistingFile);
  on(export_cmd, cmd_oracle_export);
  auto* ocompare_cmd = oracle_cmd->add_subcommand("compare", "Compare oracle responses with the parser");
  ocompare_cmd->add_option("requests", args.input)->required()->check(CLI::ExistingFile);
  ocompare_cmd->add_option("responses", args.second)->required()->check(CLI::ExistingFile);
  on(ocompare_cmd, cmd_oracle_compare);
  auto* orun_cmd = oracle_cmd->add_subcommand("run", "Export, run the oracle command and compare");
  orun_cmd->add_option("prompts", args.input)->required()->check(CLI::ExistingFile);
  orun_cmd->add_option("--command", args.command, "Oracle filter command")->required();
  orun_cmd->add_option("--work-dir", args.work_dir);
  on(orun_cmd, cmd_oracle_run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  logger()->set_level(spdlog::level::from_str(flags.log_level));
  try {
    Context ctx(std::move(flags), std::move(args));
    command(ctx);
    return kExitOk;
  } catch (const Error& e) {
    logger()->error("{} error: {}", to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    logger()->error("internal error: {}", e.what());
    return kExitInternal;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace eeguide::cli
