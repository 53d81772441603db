#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dialectkit/types.hpp"

namespace dialectkit {

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::string name() const = 0;
  virtual std::size_t dimension() const = 0;
  /// Embeds a batch of texts; throws TransientProviderError on retryable
  /// failures and FatalProviderError on configuration problems.
  virtual std::vector<std::vector<float>> embed(const std::vector<std::string>& texts) = 0;
};

/// Deterministic offline embedder: hashed character 3-grams (fixed FNV-1a
/// seed) into a 512-dimensional vector with sublinear term-frequency weights,
/// L2-normalized. Stateless, so a query embeds identically to an indexed
/// sentence and the whole pipeline is testable without a network.
class HashedNgramEmbedder : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDimension = 512;

  std::string name() const override { return "local-char3-hash"; }
  std::size_t dimension() const override { return kDimension; }
  std::vector<std::vector<float>> embed(const std::vector<std::string>& texts) override;

  std::vector<float> embed_one(const std::string& text) const;
};

double cosine_similarity(const std::vector<float>& a, const std::vector<float>& b);

}  // namespace dialectkit
