// dialectkit: corpus construction, QC and evaluation for standard-to-dialect
// translation data. One subcommand per pipeline stage; see --help.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dialectkit/align_stats.hpp"
#include "dialectkit/aligner.hpp"
#include "dialectkit/config.hpp"
#include "dialectkit/corpus.hpp"
#include "dialectkit/embedding.hpp"
#include "dialectkit/generate.hpp"
#include "dialectkit/jsonl.hpp"
#include "dialectkit/judge.hpp"
#include "dialectkit/lexicon.hpp"
#include "dialectkit/manifest.hpp"
#include "dialectkit/metrics.hpp"
#include "dialectkit/prompt.hpp"
#include "dialectkit/provider.hpp"
#include "dialectkit/report.hpp"
#include "dialectkit/similarity.hpp"
#include "dialectkit/symmetrize.hpp"
#include "dialectkit/text.hpp"
#include "dialectkit/vector_index.hpp"

namespace fs = std::filesystem;
using namespace dialectkit;
using nlohmann::json;

namespace {

struct StageContext {
  PipelineConfig config;
  fs::path out_dir;
  RunManifest manifest;
};

std::string sibling_with_suffix(const fs::path& path, const std::string& tag) {
  fs::path p = path;
  const std::string ext = p.extension().string();
  p.replace_extension();
  return p.string() + "." + tag + ext;
}

// Flag wins over the config path; empty both ways is an error.
std::string resolve_input(const std::string& flag, const std::string& config_value,
                          const char* flag_name, const char* config_key) {
  if (!flag.empty()) return flag;
  if (!config_value.empty()) return config_value;
  throw Error(std::string("no input given: pass ") + flag_name + " or set " + config_key +
              " in the config");
}

std::unique_ptr<TextGenerator> make_generator(const PipelineConfig& cfg) {
  if (cfg.provider.kind == "mock") return std::make_unique<MockGenerator>();
  ProviderSettings settings;
  settings.endpoint = cfg.provider.endpoint;
  settings.model = cfg.provider.model;
  settings.embedding_model = cfg.provider.embedding_model;
  settings.api_key_env = cfg.provider.api_key_env;
  return std::make_unique<HttpGenerator>(settings);
}

std::unique_ptr<EmbeddingProvider> make_embedder(const PipelineConfig& cfg) {
  if (cfg.provider.embedder == "local") return std::make_unique<HashedNgramEmbedder>();
  ProviderSettings settings;
  settings.endpoint = cfg.provider.endpoint;
  settings.model = cfg.provider.model;
  settings.embedding_model = cfg.provider.embedding_model;
  settings.api_key_env = cfg.provider.api_key_env;
  return std::make_unique<HttpEmbedder>(settings, 3072);
}

std::vector<std::pair<SentencePair, std::string>> tag_removed(
    const std::vector<SentencePair>& removed, const std::string& reason) {
  std::vector<std::pair<SentencePair, std::string>> out;
  out.reserve(removed.size());
  for (const auto& p : removed) out.push_back({p, reason});
  return out;
}

// ---------------------------------------------------------------------------

struct IngestArgs {
  std::vector<std::string> inputs;
  std::string out;
  std::string rejects;
};

void run_ingest(StageContext& ctx, const IngestArgs& args) {
  const fs::path out = args.out.empty() ? ctx.out_dir / "lexicon.csv" : fs::path(args.out);
  const fs::path rejects_path =
      args.rejects.empty() ? ctx.out_dir / "lexicon.rejects.csv" : fs::path(args.rejects);

  std::vector<LexiconEntry> entries;
  std::vector<RejectedEntry> rejects;
  std::size_t duplicates = 0;
  std::set<std::string> seen;
  for (const auto& input : args.inputs) {
    ctx.manifest.add_input(input);
    const auto result = ingest_lexicon(read_lines(input), default_ingest_config(),
                                       fs::path(input).filename().string());
    duplicates += result.duplicates_dropped;
    for (const auto& e : result.entries) {
      if (seen.insert(e.dialect_form + '\x1F' + e.standard_form).second)
        entries.push_back(e);
      else
        ++duplicates;
    }
    rejects.insert(rejects.end(), result.rejects.begin(), result.rejects.end());
  }
  write_lexicon_csv_file(out, entries);

  std::string rej_csv = "source,line_no,reason,line\n";
  for (const auto& r : rejects)
    rej_csv += csv_escape(r.source_id) + "," + std::to_string(r.line_no) + "," +
               csv_escape(r.reason) + "," + csv_escape(r.line) + "\n";
  atomic_write(rejects_path, rej_csv);

  ctx.manifest.add_output(out);
  ctx.manifest.add_output(rejects_path);
  std::cout << json{{"stage", "ingest"},
                    {"entries", entries.size()},
                    {"rejects", rejects.size()},
                    {"duplicates_dropped", duplicates}}
                   .dump()
            << "\n";
}

struct SimfilterArgs {
  std::string in;
  std::string out;
  std::optional<double> threshold;
};

void run_simfilter(StageContext& ctx, const SimfilterArgs& args) {
  const double threshold = args.threshold.value_or(ctx.config.sim_threshold);
  const fs::path out = args.out.empty() ? ctx.out_dir / "simfiltered.jsonl" : fs::path(args.out);
  const auto in = resolve_input(args.in, ctx.config.paths.corpus, "--in", "paths.corpus");
  ctx.manifest.add_input(in);

  const auto pairs = read_corpus_file(in);
  auto result = filter_by_similarity(pairs, threshold);
  write_corpus_file(out, result.kept);
  const fs::path rejected = sibling_with_suffix(out, "rejected");
  write_rejected_file(rejected, tag_removed(result.removed, "similarity below threshold"));

  ctx.manifest.add_output(out);
  ctx.manifest.add_output(rejected);
  std::cout << json{{"stage", "simfilter"},
                    {"threshold", threshold},
                    {"kept", result.kept.size()},
                    {"removed", result.removed.size()}}
                   .dump()
            << "\n";
}

struct AlignTrainArgs {
  std::string in;
  std::string model;
};

void run_align_train(StageContext& ctx, const AlignTrainArgs& args) {
  const fs::path model_path =
      args.model.empty() ? ctx.out_dir / "align_model.json" : fs::path(args.model);
  const auto in = resolve_input(args.in, ctx.config.paths.corpus, "--in", "paths.corpus");
  ctx.manifest.add_input(in);

  const auto pairs = read_corpus_file(in);
  if (pairs.empty()) throw Error("align-train: corpus is empty");
  std::vector<TokenizedPair> tokenized;
  tokenized.reserve(pairs.size());
  for (const auto& p : pairs) tokenized.push_back(tokenize_pair(p));

  const auto model = BidirectionalModel::train(tokenized, ctx.config.aligner);
  model.save(model_path);

  ctx.manifest.add_output(model_path);
  std::cout << json{{"stage", "align-train"},
                    {"pairs", pairs.size()},
                    {"skipped", model.forward.skipped_pairs()},
                    {"final_loglik_fwd", model.forward.log_likelihoods().back()},
                    {"final_loglik_rev", model.reverse.log_likelihoods().back()}}
                   .dump()
            << "\n";
}

struct AlignScoreArgs {
  std::string in;
  std::string model;
  std::string out;
  std::string stats;
  std::string alignments;
};

void run_align_score(StageContext& ctx, const AlignScoreArgs& args) {
  const fs::path out = args.out.empty() ? ctx.out_dir / "scored.jsonl" : fs::path(args.out);
  const fs::path stats_path =
      args.stats.empty() ? ctx.out_dir / "align_stats.csv" : fs::path(args.stats);
  const fs::path dump_path =
      args.alignments.empty() ? ctx.out_dir / "alignments.txt" : fs::path(args.alignments);
  const auto in = resolve_input(args.in, ctx.config.paths.corpus, "--in", "paths.corpus");
  const fs::path model_path =
      args.model.empty() ? ctx.out_dir / "align_model.json" : fs::path(args.model);
  ctx.manifest.add_input(in);
  ctx.manifest.add_input(model_path);

  const auto model = BidirectionalModel::load(model_path);
  auto pairs = read_corpus_file(in);
  if (pairs.empty()) throw Error("align-score: corpus is empty");

  std::string stats_csv = "id,u_src,u_tgt,x,kept\n";
  std::string dump;
  for (auto& pair : pairs) {
    const auto tokenized = tokenize_pair(pair);
    if (tokenized.src.empty() || tokenized.tgt.empty())
      throw Error("align-score: pair " + pair.id + " has an empty side after tokenization");
    const auto fwd = model.forward.viterbi(tokenized);
    const auto rev = model.reverse.viterbi(tokenized);
    const auto sym = symmetrize(fwd, rev, ctx.config.heuristic);
    const auto stats = alignment_stats(tokenized, sym);
    pair.qc = stats;
    const bool kept = stats.u_src < ctx.config.thresholds.u_src_max &&
                      stats.u_tgt < ctx.config.thresholds.u_tgt_max &&
                      stats.x < ctx.config.thresholds.x_max;
    std::ostringstream row;
    row << pair.id << ',' << stats.u_src << ',' << stats.u_tgt << ',' << stats.x << ','
        << (kept ? 1 : 0) << '\n';
    stats_csv += row.str();
    dump += format_links(sym);
    dump += '\n';
  }
  write_corpus_file(out, pairs);
  atomic_write(stats_path, stats_csv);
  atomic_write(dump_path, dump);

  ctx.manifest.add_output(out);
  ctx.manifest.add_output(stats_path);
  ctx.manifest.add_output(dump_path);
  std::cout << json{{"stage", "align-score"}, {"pairs", pairs.size()}}.dump() << "\n";
}

struct AlignFilterArgs {
  std::string in;
  std::string out;
  std::string removed;
};

void run_align_filter(StageContext& ctx, const AlignFilterArgs& args) {
  const fs::path out = args.out.empty() ? ctx.out_dir / "align_kept.jsonl" : fs::path(args.out);
  const fs::path removed_path =
      args.removed.empty() ? fs::path(sibling_with_suffix(out, "removed"))
                           : fs::path(args.removed);
  const fs::path in = args.in.empty() ? ctx.out_dir / "scored.jsonl" : fs::path(args.in);
  ctx.manifest.add_input(in);

  const auto pairs = read_corpus_file(in);
  std::vector<ScoredPair> scored;
  scored.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (!p.qc) throw Error("align-filter: pair " + p.id + " has no qc stats; run align-score");
    scored.push_back({p, *p.qc});
  }
  const auto result = filter_by_alignment(scored, ctx.config.thresholds);

  std::vector<SentencePair> kept;
  kept.reserve(result.kept.size());
  for (const auto& sp : result.kept) kept.push_back(sp.pair);
  write_corpus_file(out, kept);

  std::vector<std::pair<SentencePair, std::string>> removed;
  for (const auto& r : result.removed) {
    std::string reason = "alignment thresholds exceeded:";
    for (const auto& f : r.fired) reason += " " + f;
    removed.push_back({r.scored.pair, reason});
  }
  write_rejected_file(removed_path, removed);

  ctx.manifest.add_output(out);
  ctx.manifest.add_output(removed_path);
  std::cout << json{{"stage", "align-filter"},
                    {"kept", result.kept.size()},
                    {"removed", result.removed.size()}}
                   .dump()
            << "\n";
}

struct SplitArgs {
  std::string in;
  std::string out_prefix;
};

void run_split(StageContext& ctx, const SplitArgs& args) {
  const std::string prefix =
      args.out_prefix.empty() ? (ctx.out_dir / "corpus").string() : args.out_prefix;
  const auto in = resolve_input(args.in, ctx.config.paths.corpus, "--in", "paths.corpus");
  ctx.manifest.add_input(in);

  const auto pairs = read_corpus_file(in);
  const auto split = split_corpus(pairs, ctx.config.ratios, ctx.config.seed);
  write_corpus_file(prefix + ".train.jsonl", split.train);
  write_corpus_file(prefix + ".val.jsonl", split.validation);
  write_corpus_file(prefix + ".test.jsonl", split.test);

  for (const auto* suffix : {".train.jsonl", ".val.jsonl", ".test.jsonl"})
    ctx.manifest.add_output(prefix + suffix);
  std::cout << json{{"stage", "split"},
                    {"train", split.train.size()},
                    {"val", split.validation.size()},
                    {"test", split.test.size()},
                    {"seed", split.seed}}
                   .dump()
            << "\n";
}

struct IndexArgs {
  std::string sentences;
  std::string out;
};

void run_index(StageContext& ctx, const IndexArgs& args) {
  const fs::path out = args.out.empty() ? ctx.out_dir / "index.json" : fs::path(args.out);
  ctx.manifest.add_input(args.sentences);

  std::vector<std::string> sentences;
  for (auto& line : read_lines(args.sentences)) {
    const auto collapsed = text::collapse_whitespace(line);
    if (!collapsed.empty()) sentences.push_back(collapsed);
  }
  const auto embedder = make_embedder(ctx.config);
  const auto index = VectorIndex::build(sentences, *embedder);
  index.save(out);

  ctx.manifest.add_output(out);
  std::cout << json{{"stage", "index"},
                    {"sentences", index.size()},
                    {"dimension", index.dimension()},
                    {"provider", index.provider_name()}}
                   .dump()
            << "\n";
}

struct GenerateArgs {
  std::string sources;
  std::string index;
  std::string template_file;
  std::optional<int> k;
  std::string out;
  std::string audit;
};

void run_generate(StageContext& ctx, const GenerateArgs& args) {
  const fs::path out = args.out.empty() ? ctx.out_dir / "generated.jsonl" : fs::path(args.out);
  const std::string template_file =
      args.template_file.empty() ? ctx.config.paths.template_file : args.template_file;
  if (template_file.empty()) throw Error("generate: no prompt template configured");
  const auto index_path =
      resolve_input(args.index, ctx.config.paths.index, "--index", "paths.index");
  ctx.manifest.add_input(args.sources);
  ctx.manifest.add_input(index_path);
  ctx.manifest.add_input(template_file);

  std::vector<std::string> sources;
  for (auto& line : read_lines(args.sources)) {
    const auto collapsed = text::collapse_whitespace(line);
    if (!collapsed.empty()) sources.push_back(collapsed);
  }
  const auto index = VectorIndex::load(index_path);
  const auto tmpl = PromptTemplate::load(template_file);
  const auto embedder = make_embedder(ctx.config);
  const auto client = make_generator(ctx.config);

  GenerateOptions options;
  options.k = static_cast<std::size_t>(args.k.value_or(ctx.config.retrieval_k));
  options.retry = {ctx.config.provider.max_retries, 250};
  options.concurrency = ctx.config.provider.concurrency;
  options.audit_log =
      args.audit.empty() ? ctx.out_dir / "generate.audit.jsonl" : fs::path(args.audit);

  const auto results = generate_pairs(*client, sources, index, *embedder, tmpl, options);
  const auto pairs = results_to_pairs(results, client->model_name());
  write_corpus_file(out, pairs);

  std::size_t failures = 0;
  for (const auto& r : results) failures += !r.ok;
  ctx.manifest.add_output(out);
  std::cout << json{{"stage", "generate"},
                    {"sources", sources.size()},
                    {"generated", pairs.size()},
                    {"failures", failures}}
                   .dump()
            << "\n";
}

struct EvaluateArgs {
  std::string hyp;
  std::string ref;
  bool sentence = false;
  std::string out;
  std::string per_sentence;
};

void run_evaluate(StageContext& ctx, const EvaluateArgs& args) {
  ctx.manifest.add_input(args.hyp);
  ctx.manifest.add_input(args.ref);
  const auto hyps = read_lines(args.hyp);
  const auto refs = read_lines(args.ref);
  if (hyps.size() != refs.size())
    throw Error("evaluate: hypothesis and reference line counts differ (" +
                std::to_string(hyps.size()) + " vs " + std::to_string(refs.size()) + ")");

  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(hyps.size());
  for (std::size_t i = 0; i < hyps.size(); ++i) pairs.push_back({hyps[i], refs[i]});
  const auto report = metrics::evaluate_corpus(pairs);

  const json out = {{"bleu", report.bleu},
                    {"chrfpp", report.chrfpp},
                    {"ter", report.ter},
                    {"n_pairs", report.n_pairs}};
  std::cout << out.dump() << "\n";
  if (!args.out.empty()) {
    atomic_write(args.out, out.dump() + "\n");
    ctx.manifest.add_output(args.out);
  }

  if (args.sentence || ctx.config.metrics.per_sentence) {
    const fs::path per_path = args.per_sentence.empty()
                                  ? ctx.out_dir / "evaluate.sentences.csv"
                                  : fs::path(args.per_sentence);
    std::string csv = "line,bleu,chrfpp,ter\n";
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      std::ostringstream row;
      row << (i + 1) << ',' << metrics::bleu_sentence(hyps[i], refs[i]) << ','
          << metrics::chrf_sentence(hyps[i], refs[i]) << ','
          << metrics::ter_sentence(hyps[i], refs[i]) << '\n';
      csv += row.str();
    }
    atomic_write(per_path, csv);
    ctx.manifest.add_output(per_path);
  }
}

struct JudgeArgs {
  std::string src;
  std::string hyp;
  std::string ref;
  std::string out;
};

void run_judge(StageContext& ctx, const JudgeArgs& args) {
  const fs::path out =
      args.out.empty() ? ctx.out_dir / "judge.scores.jsonl" : fs::path(args.out);
  ctx.manifest.add_input(args.src);
  ctx.manifest.add_input(args.hyp);
  ctx.manifest.add_input(args.ref);

  const auto srcs = read_lines(args.src);
  const auto hyps = read_lines(args.hyp);
  const auto refs = read_lines(args.ref);
  if (srcs.size() != hyps.size() || srcs.size() != refs.size())
    throw Error("judge: input files have different line counts");

  std::vector<judge::JudgeTriple> triples;
  triples.reserve(srcs.size());
  for (std::size_t i = 0; i < srcs.size(); ++i) triples.push_back({srcs[i], hyps[i], refs[i]});

  const auto client = make_generator(ctx.config);
  judge::JudgeOptions options;
  options.retry = {ctx.config.provider.max_retries, 250};
  options.concurrency = ctx.config.provider.concurrency;
  const auto outcome = judge::judge_corpus(*client, triples, options);

  std::string lines;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    json j;
    j["id"] = i + 1;
    if (outcome.scores[i]) {
      j["fluency"] = outcome.scores[i]->fluency;
      j["adequacy"] = outcome.scores[i]->adequacy;
      j["dialect"] = outcome.scores[i]->dialect;
    } else {
      j["error"] = "failed";
    }
    lines += j.dump();
    lines += '\n';
  }
  const json aggregate = {{"aggregate", true},
                          {"mean_fluency", outcome.aggregate.mean_fluency},
                          {"mean_adequacy", outcome.aggregate.mean_adequacy},
                          {"mean_dialect", outcome.aggregate.mean_dialect},
                          {"n", outcome.aggregate.n},
                          {"failures", outcome.failures.size()}};
  lines += aggregate.dump();
  lines += '\n';
  atomic_write(out, lines);

  ctx.manifest.add_output(out);
  std::cout << aggregate.dump() << "\n";
}

struct ReportArgs {
  std::vector<std::string> align_rows;  // LABEL=stats.csv
  std::vector<std::string> eval_rows;   // LABEL=metrics.json[,judge.jsonl]
  std::string out_prefix;
};

AlignmentStats mean_stats_from_csv(const fs::path& path) {
  const auto lines = read_lines(path);
  if (lines.size() < 2) throw Error("stats csv has no rows: " + path.string());
  std::vector<AlignmentStats> stats;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = csv_split(lines[i]);
    if (fields.size() < 4) throw Error("bad stats row in " + path.string());
    stats.push_back({std::stod(fields[1]), std::stod(fields[2]), std::stod(fields[3])});
  }
  return corpus_stats(stats);
}

void run_report(StageContext& ctx, const ReportArgs& args) {
  const std::string prefix =
      args.out_prefix.empty() ? (ctx.out_dir / "report").string() : args.out_prefix;
  json summary = {{"stage", "report"}};

  if (!args.align_rows.empty()) {
    std::vector<AlignmentReportRow> rows;
    for (const auto& row_spec : args.align_rows) {
      const auto eq = row_spec.find('=');
      if (eq == std::string::npos)
        throw Error("--align-row expects LABEL=stats.csv, got: " + row_spec);
      const std::string label = row_spec.substr(0, eq);
      const fs::path path = row_spec.substr(eq + 1);
      ctx.manifest.add_input(path);
      rows.push_back({label, mean_stats_from_csv(path)});
    }
    atomic_write(prefix + ".alignment.md", alignment_report_markdown(rows));
    atomic_write(prefix + ".alignment.csv", alignment_report_csv(rows));
    ctx.manifest.add_output(prefix + ".alignment.md");
    ctx.manifest.add_output(prefix + ".alignment.csv");
    summary["alignment_rows"] = rows.size();
  }

  if (!args.eval_rows.empty()) {
    std::vector<EvalReportRow> rows;
    for (const auto& row_spec : args.eval_rows) {
      const auto eq = row_spec.find('=');
      if (eq == std::string::npos)
        throw Error("--eval-row expects LABEL=metrics.json[,judge.jsonl], got: " + row_spec);
      EvalReportRow row;
      row.label = row_spec.substr(0, eq);
      const std::string paths = row_spec.substr(eq + 1);
      const auto comma = paths.find(',');
      const std::string metrics_path = paths.substr(0, comma);
      ctx.manifest.add_input(metrics_path);
      std::ifstream in(metrics_path);
      if (!in) throw Error("cannot open metrics report: " + metrics_path);
      json m;
      in >> m;
      row.metrics = {m.at("bleu").get<double>(), m.at("chrfpp").get<double>(),
                     m.at("ter").get<double>(), m.at("n_pairs").get<std::size_t>()};
      if (comma != std::string::npos) {
        const std::string judge_path = paths.substr(comma + 1);
        ctx.manifest.add_input(judge_path);
        judge::JudgeAggregate agg;
        bool found = false;
        for (const auto& line : read_lines(judge_path)) {
          if (line.empty()) continue;
          const auto j = json::parse(line);
          if (j.contains("aggregate") && j.at("aggregate").get<bool>()) {
            agg.mean_fluency = j.at("mean_fluency").get<double>();
            agg.mean_adequacy = j.at("mean_adequacy").get<double>();
            agg.mean_dialect = j.at("mean_dialect").get<double>();
            agg.n = j.at("n").get<std::size_t>();
            found = true;
          }
        }
        if (!found) throw Error("no aggregate record in " + judge_path);
        row.judge = agg;
      }
      rows.push_back(std::move(row));
    }
    atomic_write(prefix + ".eval.md", eval_report_markdown(rows));
    atomic_write(prefix + ".eval.csv", eval_report_csv(rows));
    ctx.manifest.add_output(prefix + ".eval.md");
    ctx.manifest.add_output(prefix + ".eval.csv");
    summary["eval_rows"] = rows.size();
  }

  std::cout << summary.dump() << "\n";
}

struct ExportArgs {
  std::string in;
  std::string template_file;
  std::string out;
};

void run_export(StageContext& ctx, const ExportArgs& args) {
  const fs::path out = args.out.empty() ? ctx.out_dir / "finetune.jsonl" : fs::path(args.out);
  const auto in = resolve_input(args.in, ctx.config.paths.corpus, "--in", "paths.corpus");
  ctx.manifest.add_input(in);

  std::string tmpl = "Переклади це речення з української мови на гуцульський діалект: {src}";
  if (!args.template_file.empty()) {
    std::ifstream in(args.template_file);
    if (!in) throw Error("cannot open instruction template: " + args.template_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    tmpl = buf.str();
    while (!tmpl.empty() && (tmpl.back() == '\n' || tmpl.back() == '\r')) tmpl.pop_back();
    ctx.manifest.add_input(args.template_file);
  }

  const auto pairs = read_corpus_file(in);
  const auto lines = export_finetune(pairs, tmpl);
  std::string content;
  for (const auto& l : lines) {
    content += l;
    content += '\n';
  }
  atomic_write(out, content);

  ctx.manifest.add_output(out);
  std::cout << json{{"stage", "export-finetune"}, {"records", lines.size()}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"standard-to-dialect corpus construction, QC and evaluation toolkit"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir_flag;
  app.add_option("--config", config_path, "pipeline config file (JSON)");
  app.add_option("--out-dir", out_dir_flag, "output directory (default: config or ./out)");

  struct AlignerFlags {
    std::optional<double> lambda, p0;
    std::optional<int> iters;
    std::optional<std::string> heuristic;
    std::optional<double> u_src_max, u_tgt_max, x_max;
    void attach(CLI::App* cmd) {
      cmd->add_option("--lambda", lambda, "diagonal tension");
      cmd->add_option("--p0", p0, "null-alignment probability");
      cmd->add_option("--iters", iters, "EM iterations");
      cmd->add_option("--heuristic", heuristic,
                      "symmetrization: intersection|union|grow-diag-final-and");
      cmd->add_option("--u-src-max", u_src_max, "max unaligned source proportion");
      cmd->add_option("--u-tgt-max", u_tgt_max, "max unaligned target proportion");
      cmd->add_option("--x-max", x_max, "max crossing proportion");
    }
    void apply(PipelineConfig& cfg) const {
      if (lambda) cfg.aligner.lambda = *lambda;
      if (p0) cfg.aligner.p0 = *p0;
      if (iters) cfg.aligner.iterations = *iters;
      if (heuristic) {
        const auto h = heuristic_from_string(*heuristic);
        if (!h) throw ConfigError("unknown heuristic: " + *heuristic);
        cfg.heuristic = *h;
      }
      if (u_src_max) cfg.thresholds.u_src_max = *u_src_max;
      if (u_tgt_max) cfg.thresholds.u_tgt_max = *u_tgt_max;
      if (x_max) cfg.thresholds.x_max = *x_max;
    }
  };

  std::string stage_name;
  std::function<void(StageContext&)> runner;

  auto ingest_args = std::make_shared<IngestArgs>();
  auto* ingest_cmd = app.add_subcommand("ingest", "clean raw lexicon dumps into a CSV");
  ingest_cmd->add_option("--in", ingest_args->inputs, "raw lexicon file(s)")->required();
  ingest_cmd->add_option("--out", ingest_args->out, "lexicon csv");
  ingest_cmd->add_option("--rejects", ingest_args->rejects, "rejected-lines csv");
  ingest_cmd->callback([&, ingest_args] {
    stage_name = "ingest";
    runner = [ingest_args](StageContext& ctx) { run_ingest(ctx, *ingest_args); };
  });

  auto sim_args = std::make_shared<SimfilterArgs>();
  auto* sim_cmd = app.add_subcommand("simfilter", "similarity-threshold filtering");
  sim_cmd->add_option("--in", sim_args->in, "corpus jsonl (default: paths.corpus)");
  sim_cmd->add_option("--out", sim_args->out, "kept corpus jsonl");
  sim_cmd->add_option("--threshold", sim_args->threshold, "similarity threshold [0,1]");
  sim_cmd->callback([&, sim_args] {
    stage_name = "simfilter";
    runner = [sim_args](StageContext& ctx) { run_simfilter(ctx, *sim_args); };
  });

  auto train_args = std::make_shared<AlignTrainArgs>();
  auto train_flags = std::make_shared<AlignerFlags>();
  auto* train_cmd = app.add_subcommand("align-train", "train the bidirectional EM aligner");
  train_cmd->add_option("--in", train_args->in, "corpus jsonl (default: paths.corpus)");
  train_cmd->add_option("--model", train_args->model, "model output file");
  train_flags->attach(train_cmd);
  train_cmd->callback([&, train_args, train_flags] {
    stage_name = "align-train";
    runner = [train_args, train_flags](StageContext& ctx) {
      train_flags->apply(ctx.config);
      run_align_train(ctx, *train_args);
    };
  });

  auto score_args = std::make_shared<AlignScoreArgs>();
  auto score_flags = std::make_shared<AlignerFlags>();
  auto* score_cmd =
      app.add_subcommand("align-score", "symmetrized alignments and U-src/U-tgt/X stats");
  score_cmd->add_option("--in", score_args->in, "corpus jsonl (default: paths.corpus)");
  score_cmd->add_option("--model", score_args->model, "trained model file");
  score_cmd->add_option("--out", score_args->out, "scored corpus jsonl");
  score_cmd->add_option("--stats", score_args->stats, "stats csv");
  score_cmd->add_option("--alignments", score_args->alignments, "alignment dump (i-j format)");
  score_flags->attach(score_cmd);
  score_cmd->callback([&, score_args, score_flags] {
    stage_name = "align-score";
    runner = [score_args, score_flags](StageContext& ctx) {
      score_flags->apply(ctx.config);
      run_align_score(ctx, *score_args);
    };
  });

  auto filter_args = std::make_shared<AlignFilterArgs>();
  auto filter_flags = std::make_shared<AlignerFlags>();
  auto* filter_cmd = app.add_subcommand("align-filter", "drop pairs exceeding QC thresholds");
  filter_cmd->add_option("--in", filter_args->in, "scored corpus jsonl");
  filter_cmd->add_option("--out", filter_args->out, "kept corpus jsonl");
  filter_cmd->add_option("--removed", filter_args->removed, "removed corpus jsonl");
  filter_flags->attach(filter_cmd);
  filter_cmd->callback([&, filter_args, filter_flags] {
    stage_name = "align-filter";
    runner = [filter_args, filter_flags](StageContext& ctx) {
      filter_flags->apply(ctx.config);
      run_align_filter(ctx, *filter_args);
    };
  });

  auto split_args = std::make_shared<SplitArgs>();
  auto split_seed = std::make_shared<std::optional<std::uint64_t>>();
  auto split_ratios = std::make_shared<std::vector<double>>();
  auto* split_cmd = app.add_subcommand("split", "deterministic train/val/test split");
  split_cmd->add_option("--in", split_args->in, "corpus jsonl (default: paths.corpus)");
  split_cmd->add_option("--out-prefix", split_args->out_prefix, "output prefix");
  split_cmd->add_option("--seed", *split_seed, "shuffle seed");
  split_cmd->add_option("--ratios", *split_ratios, "train,val,test ratios")
      ->delimiter(',')
      ->expected(3);
  split_cmd->callback([&, split_args, split_seed, split_ratios] {
    stage_name = "split";
    runner = [split_args, split_seed, split_ratios](StageContext& ctx) {
      if (*split_seed) ctx.config.seed = **split_seed;
      if (!split_ratios->empty())
        ctx.config.ratios = {(*split_ratios)[0], (*split_ratios)[1], (*split_ratios)[2]};
      run_split(ctx, *split_args);
    };
  });

  auto index_args = std::make_shared<IndexArgs>();
  auto* index_cmd = app.add_subcommand("index", "embed and index a reference corpus");
  index_cmd->add_option("--sentences", index_args->sentences, "one sentence per line")
      ->required();
  index_cmd->add_option("--out", index_args->out, "index file");
  index_cmd->callback([&, index_args] {
    stage_name = "index";
    runner = [index_args](StageContext& ctx) { run_index(ctx, *index_args); };
  });

  auto gen_args = std::make_shared<GenerateArgs>();
  auto* gen_cmd = app.add_subcommand("generate", "RAG-based synthetic pair generation");
  gen_cmd->add_option("--sources", gen_args->sources,
                      "standard-language sentences, one per line")
      ->required();
  gen_cmd->add_option("--index", gen_args->index, "vector index file (default: paths.index)");
  gen_cmd->add_option("--template", gen_args->template_file, "prompt template file");
  gen_cmd->add_option("-k,--k", gen_args->k, "retrieved examples per prompt");
  gen_cmd->add_option("--out", gen_args->out, "generated corpus jsonl");
  gen_cmd->add_option("--audit", gen_args->audit, "audit log jsonl");
  gen_cmd->callback([&, gen_args] {
    stage_name = "generate";
    runner = [gen_args](StageContext& ctx) { run_generate(ctx, *gen_args); };
  });

  auto eval_args = std::make_shared<EvaluateArgs>();
  auto* eval_cmd = app.add_subcommand("evaluate", "BLEU / chrF++ / TER scoring");
  eval_cmd->add_option("--hyp", eval_args->hyp, "hypothesis file, one per line")->required();
  eval_cmd->add_option("--ref", eval_args->ref, "reference file, one per line")->required();
  eval_cmd->add_flag("--sentence", eval_args->sentence, "also write per-sentence scores");
  eval_cmd->add_option("--out", eval_args->out, "JSON report file");
  eval_cmd->add_option("--per-sentence", eval_args->per_sentence, "per-sentence csv");
  eval_cmd->callback([&, eval_args] {
    stage_name = "evaluate";
    runner = [eval_args](StageContext& ctx) { run_evaluate(ctx, *eval_args); };
  });

  auto judge_args = std::make_shared<JudgeArgs>();
  auto* judge_cmd = app.add_subcommand("judge", "LLM-as-judge scoring");
  judge_cmd->add_option("--src", judge_args->src, "source file")->required();
  judge_cmd->add_option("--hyp", judge_args->hyp, "hypothesis file")->required();
  judge_cmd->add_option("--ref", judge_args->ref, "reference file")->required();
  judge_cmd->add_option("--out", judge_args->out, "scores jsonl");
  judge_cmd->callback([&, judge_args] {
    stage_name = "judge";
    runner = [judge_args](StageContext& ctx) { run_judge(ctx, *judge_args); };
  });

  auto report_args = std::make_shared<ReportArgs>();
  auto* report_cmd = app.add_subcommand("report", "alignment and evaluation tables");
  report_cmd->add_option("--align-row", report_args->align_rows, "LABEL=stats.csv");
  report_cmd->add_option("--eval-row", report_args->eval_rows,
                         "LABEL=metrics.json[,judge.jsonl]");
  report_cmd->add_option("--out-prefix", report_args->out_prefix, "report file prefix");
  report_cmd->callback([&, report_args] {
    stage_name = "report";
    runner = [report_args](StageContext& ctx) { run_report(ctx, *report_args); };
  });

  auto export_args = std::make_shared<ExportArgs>();
  auto* export_cmd = app.add_subcommand("export-finetune", "instruction-tuning JSONL records");
  export_cmd->add_option("--in", export_args->in, "corpus jsonl (default: paths.corpus)");
  export_cmd->add_option("--template", export_args->template_file,
                         "instruction template file");
  export_cmd->add_option("--out", export_args->out, "records jsonl");
  export_cmd->callback([&, export_args] {
    stage_name = "export-finetune";
    runner = [export_args](StageContext& ctx) { run_export(ctx, *export_args); };
  });

  CLI11_PARSE(app, argc, argv);

  auto fail = [&](int code, const std::string& message) {
    std::cerr << json{{"error", message}, {"stage", stage_name}}.dump() << "\n";
    return code;
  };

  StageContext ctx;
  try {
    if (!config_path.empty()) ctx.config = load_config(config_path);
    if (!out_dir_flag.empty()) ctx.config.paths.out_dir = out_dir_flag;
    ctx.out_dir = ctx.config.paths.out_dir;
  } catch (const ConfigError& e) {
    return fail(2, e.what());
  }

  try {
    DirectoryLock lock(ctx.out_dir);
    ctx.manifest.stage = stage_name;
    ctx.manifest.config_hash = ctx.config.hash();
    ctx.manifest.started_at = utc_timestamp();
    runner(ctx);
    ctx.manifest.finished_at = utc_timestamp();
    append_manifest(ctx.out_dir, ctx.manifest);
  } catch (const ConfigError& e) {
    return fail(2, e.what());
  } catch (const std::exception& e) {
    return fail(1, e.what());
  }
  return 0;
}
