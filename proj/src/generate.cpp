#include "dialectkit/generate.hpp"

#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dialectkit/manifest.hpp"

namespace dialectkit {

std::vector<GenerationResult> generate_pairs(TextGenerator& client,
                                             const std::vector<std::string>& sources,
                                             const VectorIndex& index,
                                             EmbeddingProvider& embedder,
                                             const PromptTemplate& prompt_template,
                                             const GenerateOptions& options) {
  if (sources.empty()) throw Error("generate_pairs: empty source list");

  std::vector<GenerationResult> results(sources.size());
  std::ofstream audit;
  std::mutex audit_mutex;
  if (!options.audit_log.empty()) {
    if (options.audit_log.has_parent_path())
      std::filesystem::create_directories(options.audit_log.parent_path());
    audit.open(options.audit_log, std::ios::app);
    if (!audit) throw Error("cannot open audit log: " + options.audit_log.string());
  }

  parallel_for(sources.size(), options.concurrency, [&](std::size_t i) {
    GenerationResult& result = results[i];
    result.source = sources[i];
    result.model_name = client.model_name();
    std::string prompt;
    try {
      const auto retrieved = index.retrieve(sources[i], embedder, options.k);
      std::vector<std::string> examples;
      examples.reserve(retrieved.size());
      for (const auto& r : retrieved) examples.push_back(r.entry.text);
      prompt = prompt_template.build(examples, sources[i]);
      result.generated =
          call_with_retries([&] { return client.generate(prompt); }, options.retry,
                            result.retry_count);
      result.ok = !result.generated.empty();
      if (!result.ok) result.error = "empty generation";
    } catch (const FatalProviderError&) {
      throw;  // aborts the batch
    } catch (const std::exception& e) {
      result.ok = false;
      result.error = e.what();
    }
    if (audit.is_open()) {
      nlohmann::json entry = {{"source", result.source},
                              {"prompt_hash", sha256_hex(prompt)},
                              {"generated", result.generated},
                              {"model_name", result.model_name},
                              {"timestamp", utc_timestamp()}};
      std::lock_guard lock(audit_mutex);
      audit << entry.dump() << '\n';
    }
  });
  return results;
}

std::vector<SentencePair> results_to_pairs(const std::vector<GenerationResult>& results,
                                           std::string_view source_doc) {
  std::vector<SentencePair> pairs;
  std::size_t counter = 0;
  for (const auto& r : results) {
    if (!r.ok) continue;
    ++counter;
    std::ostringstream id;
    id << "gen-" << std::setw(6) << std::setfill('0') << counter;
    SentencePair pair;
    pair.id = id.str();
    pair.source_text = r.source;
    pair.target_text = r.generated;
    pair.origin = Origin::synthetic;
    pair.source_doc = std::string(source_doc);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace dialectkit
