#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "dialectkit/aligner.hpp"
#include "dialectkit/align_stats.hpp"
#include "dialectkit/corpus.hpp"
#include "dialectkit/symmetrize.hpp"
#include "dialectkit/types.hpp"

namespace dialectkit {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct PipelineConfig {
  struct Paths {
    std::string corpus;
    std::string lexicon;
    std::string index;
    std::string template_file;
    std::string out_dir = "out";
  } paths;

  double sim_threshold = 0.45;

  AlignerOptions aligner;  // lambda 4, p0 0.08, 5 iterations
  SymmetrizationHeuristic heuristic = SymmetrizationHeuristic::grow_diag_final_and;
  AlignmentThresholds thresholds;  // 0.1 / 0.1 / 0.2

  int retrieval_k = 3;

  SplitRatios ratios;  // 0.8 / 0.1 / 0.1
  std::uint64_t seed = 13;

  struct Provider {
    std::string kind = "mock";      // mock | http
    std::string embedder = "local"; // local | http
    std::string endpoint;
    std::string model = "gpt-4o";
    std::string embedding_model = "text-embedding-3-large";
    std::string api_key_env = "DIALECTKIT_API_KEY";
    int concurrency = 4;
    int max_retries = 3;
  } provider;

  struct Metrics {
    bool per_sentence = false;
  } metrics;

  /// Canonical snapshot used for the manifest's config hash.
  nlohmann::json to_json() const;
  std::string hash() const;
};

/// Applies defaults, rejects unknown keys by name and reports type mismatches
/// with the JSON path to the offending field.
PipelineConfig validate_config(const nlohmann::json& j);
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace dialectkit
