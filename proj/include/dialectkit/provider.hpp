#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dialectkit/embedding.hpp"
#include "dialectkit/types.hpp"

namespace dialectkit {

/// Retryable failure (timeouts, throttling, transient 5xx).
class TransientProviderError : public Error {
 public:
  using Error::Error;
};

/// Non-retryable failure (bad endpoint, missing credentials); fatal to the batch.
class FatalProviderError : public Error {
 public:
  using Error::Error;
};

class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  virtual std::string model_name() const = 0;
  virtual std::string generate(const std::string& prompt) = 0;
};

/// Offline test double. By default echoes the source line of the prompt;
/// a transform or scripted failures can be injected.
class MockGenerator : public TextGenerator {
 public:
  using Transform = std::function<std::string(const std::string& prompt)>;

  MockGenerator() = default;
  explicit MockGenerator(Transform transform) : transform_(std::move(transform)) {}

  std::string model_name() const override { return "mock"; }
  std::string generate(const std::string& prompt) override;

  /// Next `n` calls throw TransientProviderError before succeeding.
  void fail_next(int n) { failures_remaining_.store(n); }
  int calls() const { return calls_.load(); }

 private:
  Transform transform_;
  std::atomic<int> failures_remaining_{0};
  std::atomic<int> calls_{0};
};

struct ProviderSettings {
  std::string endpoint;                              // e.g. https://api.example.com/v1
  std::string model = "gpt-4o";                      // generation model name
  std::string embedding_model = "text-embedding-3-large";
  std::string api_key_env = "DIALECTKIT_API_KEY";    // key read from env, never stored
  int timeout_seconds = 60;
};

/// OpenAI-compatible chat-completions client.
class HttpGenerator : public TextGenerator {
 public:
  explicit HttpGenerator(ProviderSettings settings);
  std::string model_name() const override { return settings_.model; }
  std::string generate(const std::string& prompt) override;

 private:
  ProviderSettings settings_;
  std::string api_key_;
};

/// OpenAI-compatible embeddings client.
class HttpEmbedder : public EmbeddingProvider {
 public:
  HttpEmbedder(ProviderSettings settings, std::size_t dimension);
  std::string name() const override { return settings_.embedding_model; }
  std::size_t dimension() const override { return dimension_; }
  std::vector<std::vector<float>> embed(const std::vector<std::string>& texts) override;

 private:
  ProviderSettings settings_;
  std::size_t dimension_;
  std::string api_key_;
};

struct RetryPolicy {
  int max_retries = 3;   // additional attempts after the first
  int backoff_ms = 250;  // doubled per retry
};

/// Runs fn with exponential-backoff retries on TransientProviderError;
/// `retries_used` reports how many retries were consumed.
std::string call_with_retries(const std::function<std::string()>& fn,
                              const RetryPolicy& policy, int& retries_used);

/// Runs fn(0..n-1) on a bounded worker pool. The first exception is
/// propagated after all workers stop; remaining items are not started.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace dialectkit
