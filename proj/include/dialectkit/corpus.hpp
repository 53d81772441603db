#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dialectkit/types.hpp"

namespace dialectkit {

struct SplitRatios {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
};

/// Deterministic 80/10/10-style split. Validation and test are drawn from
/// human-origin pairs only; synthetic pairs always land in train. Human pairs
/// are shuffled by a seeded PRNG (mt19937_64 + Fisher-Yates, so the result is
/// identical across platforms); val and test sizes are round(ratio * human
/// count) and train absorbs the remainder.
CorpusSplit split_corpus(const std::vector<SentencePair>& pairs, const SplitRatios& ratios,
                         std::uint64_t seed);

/// Renders instruction-tuning records as JSONL lines with fields
/// `instruction`, `input`, `output`. The template must contain exactly one
/// `{src}` placeholder, replaced by the pair's source text.
std::vector<std::string> export_finetune(const std::vector<SentencePair>& pairs,
                                         std::string_view instruction_template);

inline constexpr std::string_view kSourcePlaceholder = "{src}";

}  // namespace dialectkit
