#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dialectkit/types.hpp"

namespace dialectkit {

struct TokenizedPair {
  std::vector<std::string> src;
  std::vector<std::string> tgt;
};

struct Link {
  std::uint32_t src = 0;
  std::uint32_t tgt = 0;
  auto operator<=>(const Link&) const = default;
};

/// A set of source<->target token links for one sentence pair.
struct TokenAlignment {
  std::set<Link> links;
  std::uint32_t src_len = 0;
  std::uint32_t tgt_len = 0;
};

enum class Direction { forward, reverse };

struct AlignerOptions {
  double lambda = 4.0;  // diagonal tension
  double p0 = 0.08;     // null-alignment probability
  int iterations = 5;
};

/// Lexical translation model with a diagonal position prior, trained by EM.
/// The alignment prior for emitted position j over conditioning positions i
/// is proportional to exp(-lambda * |j/m - i/n|), with probability p0 reserved
/// for the null word. A forward model conditions on source tokens and emits
/// target tokens; reverse swaps the roles.
class AlignmentModel {
 public:
  static AlignmentModel train(const std::vector<TokenizedPair>& corpus, Direction direction,
                              const AlignerOptions& options);

  /// Links each emitted-side token to its argmax conditioning token, or to
  /// null. The returned alignment is always in (src index, tgt index)
  /// orientation regardless of model direction. Ties go to the lowest source
  /// index; tokens unseen in training fall back to a uniform translation
  /// probability so the alignment stays total and deterministic.
  TokenAlignment viterbi(const TokenizedPair& pair) const;

  /// p(emitted | conditioning); the empty string keys the null word.
  double translation_prob(const std::string& cond, const std::string& emitted) const;

  Direction direction() const { return direction_; }
  double lambda() const { return options_.lambda; }
  double p0() const { return options_.p0; }
  const std::vector<double>& log_likelihoods() const { return log_likelihoods_; }
  std::size_t skipped_pairs() const { return skipped_pairs_; }

  nlohmann::json to_json() const;
  static AlignmentModel from_json(const nlohmann::json& j);

  using Table = std::unordered_map<std::string, std::unordered_map<std::string, double>>;
  const Table& translation_table() const { return table_; }

 private:
  Direction direction_ = Direction::forward;
  AlignerOptions options_;
  Table table_;
  double fallback_prob_ = 1e-9;
  std::vector<double> log_likelihoods_;
  std::size_t skipped_pairs_ = 0;
};

/// Normalized diagonal prior over conditioning positions 1..cond_len for
/// emitted position j (1-based) of emit_len. Computed in log space so large
/// tension values stay finite.
std::vector<double> diagonal_prior(std::size_t emit_pos, std::size_t emit_len,
                                   std::size_t cond_len, double lambda);

/// One model per direction, trained on the same corpus.
struct BidirectionalModel {
  AlignmentModel forward;
  AlignmentModel reverse;

  static BidirectionalModel train(const std::vector<TokenizedPair>& corpus,
                                  const AlignerOptions& options);
  nlohmann::json to_json() const;
  static BidirectionalModel from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static BidirectionalModel load(const std::filesystem::path& path);
};

TokenizedPair tokenize_pair(const SentencePair& pair);

/// "0-0 1-2" interchange rendering of alignment links, source index first.
std::string format_links(const TokenAlignment& alignment);
TokenAlignment parse_links(std::string_view line, std::uint32_t src_len, std::uint32_t tgt_len);

}  // namespace dialectkit
