#include "dialectkit/vector_index.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "dialectkit/manifest.hpp"

namespace dialectkit {

VectorIndex VectorIndex::build(const std::vector<std::string>& sentences,
                               EmbeddingProvider& provider,
                               const IndexBuildOptions& options) {
  if (sentences.empty()) throw Error("build_index: empty sentence list");
  if (options.batch_size == 0) throw Error("build_index: batch_size must be >= 1");
  VectorIndex index;
  index.dimension_ = provider.dimension();
  index.provider_name_ = provider.name();
  index.entries_.reserve(sentences.size());

  for (std::size_t lo = 0; lo < sentences.size(); lo += options.batch_size) {
    const std::size_t hi = std::min(lo + options.batch_size, sentences.size());
    const std::vector<std::string> batch(sentences.begin() + lo, sentences.begin() + hi);
    std::vector<std::vector<float>> embeddings;
    int delay_ms = options.retry.backoff_ms;
    for (int attempt = 0;; ++attempt) {
      try {
        embeddings = provider.embed(batch);
        break;
      } catch (const TransientProviderError& e) {
        if (attempt >= options.retry.max_retries)
          throw Error("build_index: embedding failed after retries for batch offsets [" +
                      std::to_string(lo) + "," + std::to_string(hi) + "): " + e.what());
        if (delay_ms > 0)
          std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
        delay_ms *= 2;
      }
    }
    if (embeddings.size() != batch.size())
      throw Error("build_index: provider returned wrong batch size at offset " +
                  std::to_string(lo));
    for (std::size_t k = 0; k < batch.size(); ++k) {
      const std::size_t i = lo + k;
      if (embeddings[k].size() != index.dimension_)
        throw Error("build_index: inconsistent embedding dimension at entry " +
                    std::to_string(i));
      for (float v : embeddings[k])
        if (!std::isfinite(v)) throw Error("build_index: non-finite embedding value");
      index.entries_.push_back({"s" + std::to_string(i), sentences[i], embeddings[k]});
    }
  }
  return index;
}

std::vector<RetrievedSentence> VectorIndex::retrieve(const std::vector<float>& query,
                                                     std::size_t k) const {
  if (entries_.empty()) throw Error("retrieve: empty index");
  if (k < 1) throw Error("retrieve: k must be >= 1");
  std::vector<RetrievedSentence> scored;
  scored.reserve(entries_.size());
  for (const auto& e : entries_)
    scored.push_back({e, cosine_similarity(query, e.embedding)});
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.similarity > b.similarity; });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

std::vector<RetrievedSentence> VectorIndex::retrieve(const std::string& query_text,
                                                     EmbeddingProvider& provider,
                                                     std::size_t k) const {
  const auto embedded = provider.embed({query_text});
  return retrieve(embedded.at(0), k);
}

void VectorIndex::save(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["dimension"] = dimension_;
  j["count"] = entries_.size();
  j["provider"] = provider_name_;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries_)
    arr.push_back({{"id", e.id}, {"text", e.text}, {"embedding", e.embedding}});
  j["entries"] = std::move(arr);
  atomic_write(path, j.dump());
}

VectorIndex VectorIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open index file: " + path.string());
  nlohmann::json j;
  in >> j;
  VectorIndex index;
  index.dimension_ = j.at("dimension").get<std::size_t>();
  index.provider_name_ = j.at("provider").get<std::string>();
  for (const auto& e : j.at("entries")) {
    IndexedSentence s;
    s.id = e.at("id").get<std::string>();
    s.text = e.at("text").get<std::string>();
    s.embedding = e.at("embedding").get<std::vector<float>>();
    if (s.embedding.size() != index.dimension_)
      throw Error("index file: inconsistent embedding dimension for " + s.id);
    index.entries_.push_back(std::move(s));
  }
  if (index.entries_.size() != j.at("count").get<std::size_t>())
    throw Error("index file: entry count mismatch");
  return index;
}

}  // namespace dialectkit
