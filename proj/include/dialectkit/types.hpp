#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dialectkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Origin { human, synthetic };

std::string_view to_string(Origin origin);
std::optional<Origin> origin_from_string(std::string_view s);

/// Per-pair alignment quality triple: proportion of unaligned source tokens,
/// unaligned target tokens, and crossing link pairs.
struct AlignmentStats {
  double u_src = 0.0;
  double u_tgt = 0.0;
  double x = 0.0;
};

/// One standard<->dialect sentence pair. `source_text` is the standard
/// language side, `target_text` the dialect side.
struct SentencePair {
  std::string id;
  std::string source_text;
  std::string target_text;
  Origin origin = Origin::human;
  std::optional<std::string> source_doc;
  std::optional<AlignmentStats> qc;
  std::optional<double> similarity;
};

/// One dialect->standard word mapping with source attribution.
struct LexiconEntry {
  std::string dialect_form;
  std::string standard_form;
  std::string source_id;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

struct CorpusSplit {
  std::vector<SentencePair> train;
  std::vector<SentencePair> validation;
  std::vector<SentencePair> test;
  std::uint64_t seed = 0;
};

}  // namespace dialectkit
