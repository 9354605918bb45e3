// Copyright 2026 The reviewkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reviewkit/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "reviewkit/agents.hpp"
#include "reviewkit/arena.hpp"
#include "reviewkit/corpus.hpp"
#include "reviewkit/dataset_builder.hpp"
#include "reviewkit/reporting.hpp"
#include "reviewkit/retrieval.hpp"
#include "reviewkit/sentiment.hpp"
#include "reviewkit/text.hpp"

namespace reviewkit {

using nlohmann::json;
namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  fs::path tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::kIo, "cannot write " + tmp.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw Error(ErrorKind::kIo, "write failed for " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorKind::kIo, "cannot replace " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

namespace {

GeneratedReview generated_from_json(const json& j, std::size_t line) {
  if (!j.is_object() || !j.contains("paper_id") || !j["paper_id"].is_string()) {
    throw ParseError(line, "generated review needs a string paper_id");
  }
  GeneratedReview g;
  g.paper_id = j["paper_id"].get<std::string>();
  if (j.contains("meta_review") && j["meta_review"].is_object() &&
      j["meta_review"].contains("text")) {
    g.text = j["meta_review"]["text"].get<std::string>();
  } else if (j.contains("text") && j["text"].is_string()) {
    g.text = j["text"].get<std::string>();
  } else {
    throw ParseError(line, "generated review for " + g.paper_id + " has no text");
  }
  return g;
}

}  // namespace

std::vector<GeneratedReview> parse_generated(std::string_view content) {
  std::vector<GeneratedReview> out;
  try {
    auto whole = json::parse(content);
    if (whole.is_array()) {
      for (const auto& j : whole) out.push_back(generated_from_json(j, 0));
    } else {
      out.push_back(generated_from_json(whole, 1));
    }
    return out;
  } catch (const json::parse_error&) {
    // not a single document; read as JSONL below
  }
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    auto line = trim(content.substr(pos, nl - pos));
    ++line_no;
    pos = nl + 1;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    out.push_back(generated_from_json(j, line_no));
  }
  return out;
}

std::map<std::string, std::string> human_references(std::span<const PaperRecord> corpus) {
  std::map<std::string, std::string> out;
  for (const auto& p : corpus) {
    if (p.meta_review && !trim(*p.meta_review).empty()) {
      out[p.id] = *p.meta_review;
    } else if (!p.reviews.empty()) {
      out[p.id] = p.reviews.front().text;
    }
  }
  return out;
}

namespace {

// Model-sentiment column when no classifier endpoint is configured.
class LexiconFallback final : public SentimentProvider {
 public:
  std::string name() const override { return "lexicon-fallback"; }
  SentimentPolarity polarity(std::string_view text) override {
    auto p = lexicon_.polarity(text);
    p.provider = name();
    return p;
  }

 private:
  LexiconSentiment lexicon_;
};

struct Context {
  Settings settings = Settings::with_defaults();
  EnvLookup env;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
  bool verbose = false;
  std::string audit_path;
  std::shared_ptr<AuditLog> audit;
  std::shared_ptr<HttpTransport> transport;
  std::optional<json> mock_script;

  std::uint64_t seed() const {
    auto v = settings.get_int("seed");
    if (v < 0) throw Error(ErrorKind::kUsage, "seed must be non-negative");
    return static_cast<std::uint64_t>(v);
  }
  std::size_t jobs() const {
    auto v = settings.get_int("jobs");
    if (v < 1) throw Error(ErrorKind::kUsage, "jobs must be >= 1");
    return static_cast<std::size_t>(v);
  }

  std::shared_ptr<HttpTransport> http() {
    if (!transport) transport = make_http_transport();
    return transport;
  }

  std::unique_ptr<LlmGateway> gateway(const std::string& profile_key) {
    auto profile = resolve_profile(settings, settings.get(profile_key), env);
    auto provider = make_provider(profile, mock_script, profile.kind == "mock" ? nullptr : http());
    GatewayOptions o;
    o.retry.max_attempts = static_cast<int>(settings.get_int("max_attempts"));
    o.max_in_flight = static_cast<int>(settings.get_int("max_in_flight"));
    if (o.retry.max_attempts < 1 || o.max_in_flight < 1) {
      throw Error(ErrorKind::kUsage, "max_attempts and max_in_flight must be >= 1");
    }
    o.audit = audit;
    return std::make_unique<LlmGateway>(std::move(provider), std::move(o));
  }

  PipelineConfig pipeline_config() {
    PipelineConfig c;
    c.n_reviewers = static_cast<int>(settings.get_int("n_reviewers"));
    if (c.n_reviewers < 1 || c.n_reviewers > kMaxReviewers) {
      throw Error(ErrorKind::kUsage, "n-reviewers must lie in [1, " +
                                         std::to_string(kMaxReviewers) + "]");
    }
    const auto dir = settings.get("templates_dir");
    if (!dir.empty()) c.templates = load_templates(dir);
    c.char_budget = static_cast<std::size_t>(settings.get_int("char_budget"));
    c.max_parse_retries = static_cast<int>(settings.get_int("max_parse_retries"));
    c.seed = seed();
    c.jobs = jobs();
    c.reviewer_model = settings.get("reviewer_profile");
    c.chair_model = settings.get("chair_profile");
    validate_config(c);
    return c;
  }

  // Retrieval stack per the "search" setting; null for "none".
  std::unique_ptr<RelevantPaperFinder> finder(const std::vector<PaperRecord>& corpus) {
    const auto mode = settings.get("search");
    std::shared_ptr<SearchService> search;
    if (mode == "none") return nullptr;
    if (mode == "corpus") {
      search = std::make_shared<CorpusSearchService>(corpus);
    } else if (mode == "http") {
      HttpSearchOptions o;
      o.base_url = settings.get("search_base_url");
      o.api_key = settings.get("search_api_key");
      search = std::make_shared<HttpSearchService>(o, http());
    } else {
      throw Error(ErrorKind::kUsage, "search must be corpus, http or none, got '" + mode + "'");
    }
    std::shared_ptr<Embedder> embedder;
    const auto kind = settings.get("embedder");
    if (kind == "hashing") {
      embedder = std::make_shared<HashingEmbedder>();
    } else if (kind == "http") {
      HttpEmbedderOptions o;
      o.endpoint = settings.get("embedding_endpoint");
      o.model = settings.get("embedding_model");
      if (auto key = env("REVIEWKIT_EMBEDDING_API_KEY")) o.api_key = *key;
      if (o.endpoint.empty()) throw Error(ErrorKind::kUsage, "embedder=http needs embedding_endpoint");
      embedder = std::make_shared<HttpEmbedder>(o, http());
    } else {
      throw Error(ErrorKind::kUsage, "embedder must be hashing or http, got '" + kind + "'");
    }
    RetrievalConfig rc;
    rc.jobs = jobs();
    return std::make_unique<RelevantPaperFinder>(search, embedder, rc);
  }
};

std::set<std::string> load_id_list(const fs::path& path) {
  const auto content = read_file(path);
  std::set<std::string> ids;
  try {
    auto j = json::parse(content);
    for (const auto& id : benchmark_from_json(j).entries) ids.insert(id);
    return ids;
  } catch (const json::parse_error&) {
    // plain list, one id per line
  }
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    auto id = trim(line);
    if (!id.empty() && id[0] != '#') ids.insert(std::string(id));
  }
  return ids;
}

int cmd_ingest(Context& ctx, const std::string& input, const std::string& output, bool annotate,
               std::size_t benchmark_size, const std::string& ratio,
               const std::string& benchmark_out) {
  auto corpus = load_corpus(input);
  if (annotate) {
    auto finder = ctx.finder(corpus);
    if (!finder) throw Error(ErrorKind::kUsage, "--annotate needs a search backend");
    for (auto& p : corpus) p = annotate_relevant(p, *finder);
  }
  std::optional<BenchmarkSet> bench;
  if (benchmark_size > 0) {
    if (benchmark_out.empty()) throw Error(ErrorKind::kUsage, "--benchmark-size needs --benchmark-out");
    bench = split_benchmark(corpus, benchmark_size, parse_rational(ratio), ctx.seed());
  }
  write_file_atomic(output, serialize_corpus(corpus));
  if (bench) write_file_atomic(benchmark_out, to_json(*bench).dump(2) + "\n");
  *ctx.out << "ingested " << corpus.size() << " papers into " << output << "\n";
  if (bench) {
    *ctx.out << "benchmark: " << bench->accept_count << " accepted, " << bench->reject_count
             << " rejected -> " << benchmark_out << "\n";
  }
  return kExitOk;
}

int cmd_build_dataset(Context& ctx, const std::string& corpus_path, const std::string& output,
                      const std::string& kind, const std::string& exclusions_out,
                      const std::string& blocklist_path) {
  auto corpus = load_corpus(corpus_path);
  auto config = ctx.pipeline_config();
  std::set<std::string> blocklist;
  if (!blocklist_path.empty()) blocklist = load_id_list(blocklist_path);

  std::vector<RecordKind> kinds;
  if (kind == "both") {
    kinds = {RecordKind::kReviewer, RecordKind::kChair};
  } else {
    kinds = {parse_record_kind(kind)};
  }
  auto gateway = ctx.gateway("transcribe_profile");
  const auto prepared = prepare_corpus(*gateway, corpus, config,
                                       ctx.settings.get_double("recall_threshold"), ctx.jobs());
  std::string records;
  json reports = json::array();
  for (auto k : kinds) {
    auto e = emit_records(prepared, k, config, blocklist);
    records += serialize_records(e.records);
    reports.push_back(to_json(e.report));
    *ctx.out << to_string(k) << " records: " << e.report.emitted << " emitted, "
             << e.report.excluded() << " excluded\n";
  }
  write_file_atomic(output, records);
  if (!exclusions_out.empty()) write_file_atomic(exclusions_out, reports.dump(2) + "\n");
  return kExitOk;
}

int cmd_review(Context& ctx, const std::string& corpus_path, std::vector<std::string> paper_ids,
               const std::string& benchmark_path, const std::string& output,
               const std::string& label, bool per_reviewer, bool chair_abstract) {
  auto corpus = load_corpus(corpus_path);
  auto config = ctx.pipeline_config();
  config.per_reviewer_retrieval = per_reviewer;
  config.chair_sees_abstract = chair_abstract;

  const bool single = paper_ids.size() == 1 && benchmark_path.empty();
  if (!benchmark_path.empty()) {
    for (const auto& id : load_id_list(benchmark_path)) paper_ids.push_back(id);
  }
  std::vector<const PaperRecord*> targets;
  if (paper_ids.empty()) {
    for (const auto& p : corpus) targets.push_back(&p);
  } else {
    for (const auto& id : paper_ids) {
      auto it = std::find_if(corpus.begin(), corpus.end(),
                             [&](const PaperRecord& p) { return p.id == id; });
      if (it == corpus.end()) throw Error(ErrorKind::kCoverage, "paper '" + id + "' not in corpus");
      targets.push_back(&*it);
    }
  }

  auto finder = ctx.finder(corpus);
  auto reviewer = ctx.gateway("reviewer_profile");
  auto chair = ctx.gateway("chair_profile");
  const std::string model = label.empty() ? ctx.settings.get("reviewer_profile") : label;

  std::string content;
  for (const auto* paper : targets) {
    auto result = run_pipeline(*paper, config, finder.get(), *reviewer, *chair);
    auto j = to_json(result, config.grammar);
    j["model"] = model;
    content += single ? j.dump(2) + "\n" : j.dump() + "\n";
    for (const auto& t : result.transcript) {
      if (!t.warning.empty()) *ctx.err << paper->id << ": " << t.warning << "\n";
    }
  }
  write_file_atomic(output, content);
  *ctx.out << "reviewed " << targets.size() << " paper(s) with " << config.n_reviewers
           << " reviewers -> " << output << "\n";
  return kExitOk;
}

int cmd_evaluate(Context& ctx, const std::string& generated_path, const std::string& corpus_path,
                 const std::string& output, const std::string& label, bool stemming,
                 const std::string& table_out) {
  auto generated = parse_generated(read_file(generated_path));
  auto corpus = load_corpus(corpus_path);
  auto references = human_references(corpus);

  MetricConfig mc;
  mc.stemming = stemming;
  LexiconSentiment lexicon;
  std::unique_ptr<SentimentProvider> model;
  const auto endpoint = ctx.settings.get("sentiment_endpoint");
  if (endpoint.empty()) {
    model = std::make_unique<LexiconFallback>();
  } else {
    ClassifierOptions o;
    o.endpoint = endpoint;
    if (auto key = ctx.env("REVIEWKIT_SENTIMENT_API_KEY")) o.api_key = *key;
    model = std::make_unique<HttpSentimentClassifier>(o, ctx.http());
  }
  auto result = evaluate_reviews(generated, references, mc, *model, lexicon);
  auto j = to_json(result);
  j["label"] = label;
  write_file_atomic(output, j.dump(2) + "\n");

  const std::vector<LabeledReport> rows = {{label, result.report}};
  const auto table = render_table(rows);
  if (!table_out.empty()) write_file_atomic(table_out, table);
  *ctx.out << table;
  return kExitOk;
}

int cmd_arena(Context& ctx, const std::string& entries_dir, const std::string& corpus_path,
              const std::string& output, const std::string& summary_out,
              const std::string& verdicts_out) {
  if (!fs::is_directory(entries_dir)) {
    throw Error(ErrorKind::kIo, "entries directory " + entries_dir + " does not exist");
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(entries_dir)) {
    const auto ext = e.path().extension();
    if (e.is_regular_file() && (ext == ".jsonl" || ext == ".json")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  ModelReviews entries;
  std::set<std::string> papers;
  for (const auto& f : files) {
    auto& reviews = entries[f.stem().string()];
    for (auto& g : parse_generated(read_file(f))) {
      papers.insert(g.paper_id);
      reviews[g.paper_id] = std::move(g.text);
    }
  }
  auto corpus = load_corpus(corpus_path);
  auto references = human_references(corpus);

  TournamentOptions opts;
  opts.jobs = ctx.jobs();
  opts.judge.model = ctx.settings.get("judge_profile");
  const auto dir = ctx.settings.get("templates_dir");
  if (!dir.empty()) opts.judge.templates = load_templates(dir);
  opts.judge.max_parse_retries = static_cast<int>(ctx.settings.get_int("max_parse_retries"));
  auto judge = ctx.gateway("judge_profile");
  const std::vector<std::string> paper_list(papers.begin(), papers.end());
  auto result = tournament(*judge, entries, references, paper_list, opts);

  json j = to_json(result.table);
  j["papers"] = paper_list;
  write_file_atomic(output, j.dump(2) + "\n");
  const auto summary = render_win_rates(result.table);
  if (!summary_out.empty()) write_file_atomic(summary_out, summary);
  if (!verdicts_out.empty()) {
    std::string lines;
    for (const auto& o : result.outcomes) lines += to_json(o).dump() + "\n";
    write_file_atomic(verdicts_out, lines);
  }
  *ctx.out << summary;
  return kExitOk;
}

int report_error(std::ostream& err, const std::string& what, int code) {
  err << "error: " << what << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env) {
  CLI::App app{"Multi-agent peer-review toolkit: ingest, build-dataset, review, evaluate, arena",
               "reviewkit"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Context ctx;
  ctx.env = env;
  ctx.out = &out;
  ctx.err = &err;

  // Settings that may come from flags; only flags actually given override.
  std::map<std::string, std::string> flag_values;
  std::vector<std::pair<std::string, CLI::Option*>> setting_flags;
  auto setting = [&](const std::string& flag, const std::string& key, const std::string& help) {
    setting_flags.emplace_back(key, app.add_option(flag, flag_values[key], help));
  };
  std::string config_path;
  std::string mock_script_path;
  app.add_option("--config", config_path, "key = value config file");
  setting("--seed", "seed", "root seed for sampling and benchmark splits");
  setting("--jobs", "jobs", "parallel tasks (default: logical processors)");
  setting("--reviewer-profile", "reviewer_profile", "provider profile for reviewer agents");
  setting("--chair-profile", "chair_profile", "provider profile for the area chair");
  setting("--judge-profile", "judge_profile", "provider profile for the arena judge");
  setting("--transcribe-profile", "transcribe_profile", "provider profile for transcription");
  setting("--search", "search", "related-work search: corpus, http or none");
  setting("--templates", "templates_dir", "directory overriding prompt templates");
  setting("--max-in-flight", "max_in_flight", "concurrent provider calls per gateway");
  app.add_option("--mock-script", mock_script_path, "JSON script for mock providers");
  app.add_option("--audit-log", ctx.audit_path, "append every provider call to this JSONL file");
  app.add_flag("-v,--verbose", ctx.verbose, "print the resolved configuration");

  auto* ingest = app.add_subcommand("ingest", "validate a corpus, optionally annotate and split it");
  std::string in_input, in_output, in_ratio = "3/10", in_bench_out;
  bool in_annotate = false;
  std::size_t in_bench_size = 0;
  ingest->add_option("--input", in_input, "corpus JSONL")->required();
  ingest->add_option("--output", in_output, "normalized corpus JSONL")->required();
  ingest->add_flag("--annotate", in_annotate, "attach the two most relevant prior papers");
  ingest->add_option("--benchmark-size", in_bench_size, "papers in the benchmark split");
  ingest->add_option("--accept-ratio", in_ratio, "accepted fraction, e.g. 3/10");
  ingest->add_option("--benchmark-out", in_bench_out, "benchmark JSON");

  auto* build = app.add_subcommand("build-dataset", "transcribe reviews and emit training records");
  std::string bd_corpus, bd_output, bd_kind = "both", bd_exclusions, bd_blocklist;
  build->add_option("--corpus", bd_corpus, "corpus JSONL")->required();
  build->add_option("--output", bd_output, "training records JSONL")->required();
  build->add_option("--kind", bd_kind, "reviewer, chair or both");
  build->add_option("--exclusions", bd_exclusions, "exclusion report JSON");
  build->add_option("--blocklist", bd_blocklist, "paper ids to leave out (benchmark JSON or one per line)");
  setting_flags.emplace_back(
      "recall_threshold",
      build->add_option("--recall-threshold", flag_values["recall_threshold"],
                        "content recall a transcription must reach"));

  auto* review = app.add_subcommand("review", "generate reviews and a meta-review per paper");
  std::string rv_corpus, rv_bench, rv_output, rv_label;
  std::vector<std::string> rv_ids;
  bool rv_per_reviewer = false, rv_chair_abstract = false;
  review->add_option("--corpus", rv_corpus, "corpus JSONL")->required();
  review->add_option("--paper-id", rv_ids, "paper to review (repeatable; default all)");
  review->add_option("--benchmark", rv_bench, "review the papers of this benchmark split");
  review->add_option("--output", rv_output, "pipeline output (JSON for one paper, else JSONL)")
      ->required();
  review->add_option("--label", rv_label, "model label recorded in the output");
  review->add_flag("--per-reviewer-retrieval", rv_per_reviewer, "retrieve related work per reviewer");
  review->add_flag("--chair-sees-abstract", rv_chair_abstract, "show title and abstract to the chair");
  setting_flags.emplace_back(
      "n_reviewers", review->add_option("--n-reviewers", flag_values["n_reviewers"],
                                        "reviewer agents per paper (1-8, default 3)"));

  auto* evaluate = app.add_subcommand("evaluate", "score generated reviews against human ones");
  std::string ev_generated, ev_corpus, ev_output, ev_label = "generated", ev_table;
  bool ev_stemming = false;
  evaluate->add_option("--generated", ev_generated, "generated reviews (JSON or JSONL)")->required();
  evaluate->add_option("--corpus", ev_corpus, "corpus with human reviews")->required();
  evaluate->add_option("--output", ev_output, "metric report JSON")->required();
  evaluate->add_option("--label", ev_label, "row label");
  evaluate->add_option("--table-out", ev_table, "text table");
  evaluate->add_flag("--stemming", ev_stemming, "stem tokens before ROUGE");
  setting_flags.emplace_back(
      "sentiment_endpoint",
      evaluate->add_option("--sentiment-endpoint", flag_values["sentiment_endpoint"],
                           "sentiment classifier URL"));

  auto* arena = app.add_subcommand("arena", "pairwise judged tournament between models");
  std::string ar_entries, ar_corpus, ar_output, ar_summary, ar_verdicts;
  arena->add_option("--entries", ar_entries, "directory of <model>.jsonl files")->required();
  arena->add_option("--corpus", ar_corpus, "corpus with human references")->required();
  arena->add_option("--output", ar_output, "win-rate JSON")->required();
  arena->add_option("--summary", ar_summary, "text summary");
  arena->add_option("--verdicts", ar_verdicts, "JSONL audit of every verdict");

  if (args.size() <= 1) {
    err << app.help();
    return kExitUsage;
  }
  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      ctx.settings.apply_file(parse_config_text(read_file(config_path)));
    } else if (auto p = env("REVIEWKIT_CONFIG")) {
      ctx.settings.apply_file(parse_config_text(read_file(*p)));
    }
    for (const auto& [key, opt] : setting_flags) {
      if (opt->count() > 0) ctx.settings.set(key, flag_values[key], SettingSource::kFlag);
    }
    if (!mock_script_path.empty()) ctx.settings.set("mock_script", mock_script_path, SettingSource::kFlag);
    ctx.settings.apply_env(env);
    if (ctx.verbose) err << "configuration:\n" << ctx.settings.describe();

    const auto script = ctx.settings.get("mock_script");
    if (!script.empty()) {
      try {
        ctx.mock_script = json::parse(read_file(script));
      } catch (const json::parse_error& e) {
        throw ParseError(0, "mock script " + script + ": " + e.what());
      }
    }
    if (!ctx.audit_path.empty()) ctx.audit = std::make_shared<AuditLog>(ctx.audit_path);

    if (ingest->parsed()) {
      return cmd_ingest(ctx, in_input, in_output, in_annotate, in_bench_size, in_ratio, in_bench_out);
    }
    if (build->parsed()) {
      return cmd_build_dataset(ctx, bd_corpus, bd_output, bd_kind, bd_exclusions, bd_blocklist);
    }
    if (review->parsed()) {
      return cmd_review(ctx, rv_corpus, rv_ids, rv_bench, rv_output, rv_label, rv_per_reviewer,
                        rv_chair_abstract);
    }
    if (evaluate->parsed()) {
      return cmd_evaluate(ctx, ev_generated, ev_corpus, ev_output, ev_label, ev_stemming, ev_table);
    }
    if (arena->parsed()) {
      return cmd_arena(ctx, ar_entries, ar_corpus, ar_output, ar_summary, ar_verdicts);
    }
    err << app.help();
    return kExitUsage;
  } catch (const ParseError& e) {
    std::string where = e.line() ? "line " + std::to_string(e.line()) + ": " : "";
    return report_error(err, where + e.what(), exit_code_for(e.kind()));
  } catch (const Error& e) {
    return report_error(err, std::string(to_string(e.kind())) + ": " + e.what(),
                        exit_code_for(e.kind()));
  } catch (const json::exception& e) {
    return report_error(err, std::string("malformed data: ") + e.what(), kExitData);
  } catch (const std::exception& e) {
    return report_error(err, e.what(), kExitPipeline);
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace reviewkit
