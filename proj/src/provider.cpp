#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include <nlohmann/json.hpp>

#include "dialectkit/provider.hpp"

namespace dialectkit {

using nlohmann::json;

std::string MockGenerator::generate(const std::string& prompt) {
  calls_.fetch_add(1);
  int remaining = failures_remaining_.load();
  while (remaining > 0) {
    if (failures_remaining_.compare_exchange_weak(remaining, remaining - 1))
      throw TransientProviderError("mock: injected transient failure");
  }
  if (transform_) return transform_(prompt);
  // Judge prompts get a fixed valid verdict; generation prompts echo the
  // text after the last colon-terminated label (the source sentence slot of
  // the shipped templates).
  if (prompt.find("\"fluency\": x") != std::string::npos)
    return R"({"fluency": 4, "adequacy": 4, "dialect": 3})";
  const auto pos = prompt.rfind(": ");
  std::string out = pos == std::string::npos ? prompt : prompt.substr(pos + 2);
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return out;
}

namespace {

struct ParsedEndpoint {
  std::string host;  // scheme://host[:port]
  std::string base_path;
};

ParsedEndpoint split_endpoint(const std::string& endpoint) {
  if (endpoint.empty()) throw FatalProviderError("provider endpoint not configured");
  const auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos)
    throw FatalProviderError("provider endpoint must include a scheme: " + endpoint);
  const auto path_start = endpoint.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {endpoint, ""};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

std::string read_api_key(const std::string& env_name) {
  const char* key = std::getenv(env_name.c_str());
  if (!key || !*key)
    throw FatalProviderError("API key environment variable not set: " + env_name);
  return key;
}

json post_json(const ProviderSettings& settings, const std::string& api_key,
               const std::string& path, const json& body) {
  const auto ep = split_endpoint(settings.endpoint);
  httplib::Client client(ep.host);
  client.set_read_timeout(settings.timeout_seconds, 0);
  client.set_connection_timeout(settings.timeout_seconds, 0);
  httplib::Headers headers = {{"Authorization", "Bearer " + api_key}};
  const auto res =
      client.Post(ep.base_path + path, headers, body.dump(), "application/json");
  if (!res)
    throw TransientProviderError("request failed: " + httplib::to_string(res.error()));
  if (res->status == 401 || res->status == 403)
    throw FatalProviderError("authentication rejected (" + std::to_string(res->status) + ")");
  if (res->status == 429 || res->status >= 500)
    throw TransientProviderError("provider status " + std::to_string(res->status));
  if (res->status != 200)
    throw FatalProviderError("provider status " + std::to_string(res->status) + ": " +
                             res->body);
  try {
    return json::parse(res->body);
  } catch (const json::exception& e) {
    throw TransientProviderError(std::string("unparseable provider response: ") + e.what());
  }
}

}  // namespace

HttpGenerator::HttpGenerator(ProviderSettings settings) : settings_(std::move(settings)) {
  api_key_ = read_api_key(settings_.api_key_env);
}

std::string HttpGenerator::generate(const std::string& prompt) {
  const json body = {{"model", settings_.model},
                     {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
                     {"temperature", 0.0}};
  const json res = post_json(settings_, api_key_, "/chat/completions", body);
  try {
    return res.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception&) {
    throw TransientProviderError("generation response missing choices[0].message.content");
  }
}

HttpEmbedder::HttpEmbedder(ProviderSettings settings, std::size_t dimension)
    : settings_(std::move(settings)), dimension_(dimension) {
  api_key_ = read_api_key(settings_.api_key_env);
}

std::vector<std::vector<float>> HttpEmbedder::embed(const std::vector<std::string>& texts) {
  const json body = {{"model", settings_.embedding_model}, {"input", texts}};
  const json res = post_json(settings_, api_key_, "/embeddings", body);
  std::vector<std::vector<float>> out(texts.size());
  try {
    for (const auto& item : res.at("data")) {
      const auto idx = item.at("index").get<std::size_t>();
      out.at(idx) = item.at("embedding").get<std::vector<float>>();
      if (out.at(idx).size() != dimension_)
        throw FatalProviderError("embedding dimension mismatch");
    }
  } catch (const json::exception&) {
    throw TransientProviderError("malformed embeddings response");
  }
  for (const auto& v : out)
    if (v.empty()) throw TransientProviderError("embeddings response missing entries");
  return out;
}

std::string call_with_retries(const std::function<std::string()>& fn,
                              const RetryPolicy& policy, int& retries_used) {
  retries_used = 0;
  int delay_ms = policy.backoff_ms;
  for (;;) {
    try {
      return fn();
    } catch (const TransientProviderError&) {
      if (retries_used >= policy.max_retries) throw;
      ++retries_used;
      if (delay_ms > 0)
        std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
      delay_ms *= 2;
    }
  }
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const int pool = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  if (pool == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(pool));
  for (int w = 0; w < pool; ++w) {
    threads.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n || stop.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          stop.store(true);
          return;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dialectkit
