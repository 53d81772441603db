#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dialectkit/prompt.hpp"
#include "dialectkit/provider.hpp"
#include "dialectkit/vector_index.hpp"

namespace dialectkit {

struct GenerationResult {
  std::string source;
  std::string generated;
  std::string model_name;
  int retry_count = 0;
  bool ok = false;
  std::string error;
};

struct GenerateOptions {
  std::size_t k = 3;
  RetryPolicy retry;
  int concurrency = 4;
  std::filesystem::path audit_log;  // empty disables the audit trail
};

/// For each source sentence: retrieve k examples, build the rule prompt, call
/// the generation client. Per-item failures are recorded, not fatal;
/// authentication/configuration errors abort the batch. Results preserve
/// source order and every request/response lands in the audit JSONL.
std::vector<GenerationResult> generate_pairs(TextGenerator& client,
                                             const std::vector<std::string>& sources,
                                             const VectorIndex& index,
                                             EmbeddingProvider& embedder,
                                             const PromptTemplate& prompt_template,
                                             const GenerateOptions& options = {});

/// Wraps successful generations as synthetic sentence pairs (id gen-000001..).
std::vector<SentencePair> results_to_pairs(const std::vector<GenerationResult>& results,
                                           std::string_view source_doc);

}  // namespace dialectkit
