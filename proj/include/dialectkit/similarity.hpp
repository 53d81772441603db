#pragma once

#include <string_view>
#include <vector>

#include "dialectkit/types.hpp"

namespace dialectkit {

/// Ratcliff/Obershelp ratio 2*M / (|a|+|b|) over Unicode scalar values, where
/// M is the total length of matched blocks found by recursively taking the
/// longest matching block and recursing on the flanks. Two empty strings
/// score 1.0; exactly one empty scores 0.0. When several longest blocks tie,
/// the one starting earliest in `a`, then earliest in `b`, wins. No junk or
/// popularity heuristic is applied, so the score is a deterministic function
/// of the raw character sequences.
double similarity(std::string_view a, std::string_view b);

inline constexpr double kDefaultSimilarityThreshold = 0.45;

struct SimFilterResult {
  std::vector<SentencePair> kept;
  std::vector<SentencePair> removed;
};

/// Scores every pair (populating `similarity`) and keeps those with
/// similarity(src, tgt) >= threshold. Order is preserved within both lists.
SimFilterResult filter_by_similarity(std::vector<SentencePair> pairs,
                                     double threshold = kDefaultSimilarityThreshold);

}  // namespace dialectkit
