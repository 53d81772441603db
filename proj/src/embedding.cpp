#include "dialectkit/embedding.hpp"

#include <cmath>
#include <unordered_map>

#include "dialectkit/text.hpp"

namespace dialectkit {

namespace {

// FNV-1a over the UTF-8 bytes of a 3-gram, mixed with a fixed seed so the
// bucket layout is stable across builds.
constexpr std::uint64_t kHashSeed = 0x9e3779b97f4a7c15ULL;

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = 14695981039346656037ULL ^ seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::vector<float> HashedNgramEmbedder::embed_one(const std::string& text) const {
  std::vector<float> vec(kDimension, 0.0f);
  const auto decoded = text::decode_utf8(text);
  if (!decoded) throw Error("embed: invalid UTF-8");
  if (decoded->empty()) return vec;  // zero vector for empty text

  // Sentinel-padded so texts shorter than the n-gram order still produce one.
  std::u32string padded;
  padded.reserve(decoded->size() + 2);
  padded.push_back(U'\x02');
  padded += *decoded;
  padded.push_back(U'\x03');

  std::unordered_map<std::size_t, std::size_t> counts;
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    const std::string gram = text::encode_utf8(padded.substr(i, 3));
    counts[fnv1a(gram, kHashSeed) % kDimension]++;
  }
  double norm_sq = 0.0;
  for (const auto& [bucket, c] : counts) {
    const double w = 1.0 + std::log(static_cast<double>(c));
    vec[bucket] = static_cast<float>(w);
    norm_sq += w * w;
  }
  const auto norm = static_cast<float>(std::sqrt(norm_sq));
  if (norm > 0)
    for (auto& v : vec) v /= norm;
  return vec;
}

std::vector<std::vector<float>> HashedNgramEmbedder::embed(
    const std::vector<std::string>& texts) {
  std::vector<std::vector<float>> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed_one(t));
  return out;
}

double cosine_similarity(const std::vector<float>& a, const std::vector<float>& b) {
  if (a.size() != b.size()) throw Error("cosine: dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace dialectkit
