#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dialectkit/embedding.hpp"
#include "dialectkit/provider.hpp"
#include "dialectkit/types.hpp"

namespace dialectkit {

struct IndexedSentence {
  std::string id;
  std::string text;
  std::vector<float> embedding;
};

struct RetrievedSentence {
  IndexedSentence entry;
  double similarity = 0.0;
};

struct IndexBuildOptions {
  std::size_t batch_size = 64;
  RetryPolicy retry{3, 250};
};

/// Flat vector index over a reference corpus. Retrieval is exact brute-force
/// cosine: the reference corpus is a few thousand sentences, so nothing
/// approximate is warranted.
class VectorIndex {
 public:
  /// Embeds in batches with exponential-backoff retries on transient provider
  /// failures; a batch that still fails raises an error naming its offsets.
  static VectorIndex build(const std::vector<std::string>& sentences,
                           EmbeddingProvider& provider,
                           const IndexBuildOptions& options = {});

  /// Top-k by cosine similarity, descending; ties keep insertion order. k
  /// larger than the index returns everything ranked.
  std::vector<RetrievedSentence> retrieve(const std::vector<float>& query,
                                          std::size_t k) const;
  std::vector<RetrievedSentence> retrieve(const std::string& query_text,
                                          EmbeddingProvider& provider, std::size_t k) const;

  void save(const std::filesystem::path& path) const;
  static VectorIndex load(const std::filesystem::path& path);

  std::size_t size() const { return entries_.size(); }
  std::size_t dimension() const { return dimension_; }
  const std::string& provider_name() const { return provider_name_; }
  const std::vector<IndexedSentence>& entries() const { return entries_; }

 private:
  std::size_t dimension_ = 0;
  std::string provider_name_;
  std::vector<IndexedSentence> entries_;
};

}  // namespace dialectkit
