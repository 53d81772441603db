#pragma once

#include <span>
#include <string>
#include <vector>

#include "dialectkit/aligner.hpp"
#include "dialectkit/types.hpp"

namespace dialectkit {

/// u_src / u_tgt: proportion of source / target token positions appearing in
/// no link. x: crossing link pairs {(i,j),(i',j')} with (i-i')(j-j') < 0 over
/// all unordered link pairs, defined as 0 when there are <= 1 links.
AlignmentStats alignment_stats(const TokenAlignment& alignment);
AlignmentStats alignment_stats(const TokenizedPair& pair, const TokenAlignment& alignment);

struct AlignmentThresholds {
  double u_src_max = 0.1;
  double u_tgt_max = 0.1;
  double x_max = 0.2;
};

struct ScoredPair {
  SentencePair pair;
  AlignmentStats stats;
};

struct AlignFilterResult {
  struct Removed {
    ScoredPair scored;
    std::vector<std::string> fired;  // which thresholds fired: u_src, u_tgt, x
  };
  std::vector<ScoredPair> kept;
  std::vector<Removed> removed;
};

/// Keeps a pair iff u_src < u_src_max AND u_tgt < u_tgt_max AND x < x_max
/// (strict inequalities). Removed pairs carry the thresholds that fired.
AlignFilterResult filter_by_alignment(const std::vector<ScoredPair>& scored,
                                      const AlignmentThresholds& thresholds = {});

/// Unweighted arithmetic mean of the per-pair statistics.
AlignmentStats corpus_stats(std::span<const AlignmentStats> stats);
AlignmentStats corpus_stats(const std::vector<ScoredPair>& scored);

}  // namespace dialectkit
