#include "dialectkit/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "dialectkit/manifest.hpp"

namespace dialectkit {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      throw ConfigError("unknown config key: " + (path.empty() ? key : path + "." + key));
}

template <typename T>
void read(const json& obj, const std::string& path, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("type mismatch at " + (path.empty() ? key : path + "." + key));
  }
}

}  // namespace

PipelineConfig validate_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  PipelineConfig cfg;

  require_keys(j, "", {"paths", "simfilter", "aligner", "retrieval", "split", "provider",
                       "metrics"});

  if (j.contains("paths")) {
    const auto& p = j.at("paths");
    if (!p.is_object()) throw ConfigError("type mismatch at paths");
    require_keys(p, "paths", {"corpus", "lexicon", "index", "template", "out_dir"});
    read(p, "paths", "corpus", cfg.paths.corpus);
    read(p, "paths", "lexicon", cfg.paths.lexicon);
    read(p, "paths", "index", cfg.paths.index);
    read(p, "paths", "template", cfg.paths.template_file);
    read(p, "paths", "out_dir", cfg.paths.out_dir);
  }

  if (j.contains("simfilter")) {
    const auto& s = j.at("simfilter");
    if (!s.is_object()) throw ConfigError("type mismatch at simfilter");
    require_keys(s, "simfilter", {"threshold"});
    read(s, "simfilter", "threshold", cfg.sim_threshold);
    if (cfg.sim_threshold < 0 || cfg.sim_threshold > 1)
      throw ConfigError("simfilter.threshold must be within [0,1]");
  }

  if (j.contains("aligner")) {
    const auto& a = j.at("aligner");
    if (!a.is_object()) throw ConfigError("type mismatch at aligner");
    require_keys(a, "aligner",
                 {"lambda", "p0", "iterations", "heuristic", "u_src_max", "u_tgt_max",
                  "x_max"});
    read(a, "aligner", "lambda", cfg.aligner.lambda);
    read(a, "aligner", "p0", cfg.aligner.p0);
    read(a, "aligner", "iterations", cfg.aligner.iterations);
    read(a, "aligner", "u_src_max", cfg.thresholds.u_src_max);
    read(a, "aligner", "u_tgt_max", cfg.thresholds.u_tgt_max);
    read(a, "aligner", "x_max", cfg.thresholds.x_max);
    if (a.contains("heuristic")) {
      std::string name;
      read(a, "aligner", "heuristic", name);
      const auto h = heuristic_from_string(name);
      if (!h) throw ConfigError("aligner.heuristic: unknown value '" + name + "'");
      cfg.heuristic = *h;
    }
    if (cfg.aligner.lambda <= 0) throw ConfigError("aligner.lambda must be positive");
    if (cfg.aligner.p0 < 0 || cfg.aligner.p0 >= 1)
      throw ConfigError("aligner.p0 must be within [0,1)");
    if (cfg.aligner.iterations < 1) throw ConfigError("aligner.iterations must be >= 1");
    for (const auto& [name, value] :
         {std::pair{"u_src_max", cfg.thresholds.u_src_max},
          std::pair{"u_tgt_max", cfg.thresholds.u_tgt_max},
          std::pair{"x_max", cfg.thresholds.x_max}})
      if (value < 0 || value > 1)
        throw ConfigError(std::string("aligner.") + name + " must be within [0,1]");
  }

  if (j.contains("retrieval")) {
    const auto& r = j.at("retrieval");
    if (!r.is_object()) throw ConfigError("type mismatch at retrieval");
    require_keys(r, "retrieval", {"k"});
    read(r, "retrieval", "k", cfg.retrieval_k);
    if (cfg.retrieval_k < 1) throw ConfigError("retrieval.k must be >= 1");
  }

  if (j.contains("split")) {
    const auto& s = j.at("split");
    if (!s.is_object()) throw ConfigError("type mismatch at split");
    require_keys(s, "split", {"ratios", "seed"});
    if (s.contains("ratios")) {
      std::vector<double> ratios;
      read(s, "split", "ratios", ratios);
      if (ratios.size() != 3) throw ConfigError("split.ratios must have 3 elements");
      cfg.ratios = {ratios[0], ratios[1], ratios[2]};
      const double sum = ratios[0] + ratios[1] + ratios[2];
      if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("split.ratios must sum to 1, got " + std::to_string(sum));
    }
    read(s, "split", "seed", cfg.seed);
  }

  if (j.contains("provider")) {
    const auto& p = j.at("provider");
    if (!p.is_object()) throw ConfigError("type mismatch at provider");
    require_keys(p, "provider",
                 {"kind", "embedder", "endpoint", "model", "embedding_model", "api_key_env",
                  "concurrency", "max_retries"});
    read(p, "provider", "kind", cfg.provider.kind);
    read(p, "provider", "embedder", cfg.provider.embedder);
    read(p, "provider", "endpoint", cfg.provider.endpoint);
    read(p, "provider", "model", cfg.provider.model);
    read(p, "provider", "embedding_model", cfg.provider.embedding_model);
    read(p, "provider", "api_key_env", cfg.provider.api_key_env);
    read(p, "provider", "concurrency", cfg.provider.concurrency);
    read(p, "provider", "max_retries", cfg.provider.max_retries);
    if (cfg.provider.kind != "mock" && cfg.provider.kind != "http")
      throw ConfigError("provider.kind must be 'mock' or 'http'");
    if (cfg.provider.embedder != "local" && cfg.provider.embedder != "http")
      throw ConfigError("provider.embedder must be 'local' or 'http'");
    if (cfg.provider.concurrency < 1) throw ConfigError("provider.concurrency must be >= 1");
    if (cfg.provider.max_retries < 0) throw ConfigError("provider.max_retries must be >= 0");
  }

  if (j.contains("metrics")) {
    const auto& m = j.at("metrics");
    if (!m.is_object()) throw ConfigError("type mismatch at metrics");
    require_keys(m, "metrics", {"per_sentence"});
    read(m, "metrics", "per_sentence", cfg.metrics.per_sentence);
  }

  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return validate_config(j);
}

json PipelineConfig::to_json() const {
  return json{
      {"paths",
       {{"corpus", paths.corpus},
        {"lexicon", paths.lexicon},
        {"index", paths.index},
        {"template", paths.template_file},
        {"out_dir", paths.out_dir}}},
      {"simfilter", {{"threshold", sim_threshold}}},
      {"aligner",
       {{"lambda", aligner.lambda},
        {"p0", aligner.p0},
        {"iterations", aligner.iterations},
        {"heuristic", std::string(to_string(heuristic))},
        {"u_src_max", thresholds.u_src_max},
        {"u_tgt_max", thresholds.u_tgt_max},
        {"x_max", thresholds.x_max}}},
      {"retrieval", {{"k", retrieval_k}}},
      {"split", {{"ratios", {ratios.train, ratios.val, ratios.test}}, {"seed", seed}}},
      {"provider",
       {{"kind", provider.kind},
        {"embedder", provider.embedder},
        {"endpoint", provider.endpoint},
        {"model", provider.model},
        {"embedding_model", provider.embedding_model},
        {"api_key_env", provider.api_key_env},
        {"concurrency", provider.concurrency},
        {"max_retries", provider.max_retries}}},
      {"metrics", {{"per_sentence", metrics.per_sentence}}}};
}

std::string PipelineConfig::hash() const { return sha256_hex(to_json().dump()); }

}  // namespace dialectkit
