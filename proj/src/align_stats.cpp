#include "dialectkit/align_stats.hpp"

#include <vector>

namespace dialectkit {

AlignmentStats alignment_stats(const TokenAlignment& alignment) {
  if (alignment.src_len == 0 || alignment.tgt_len == 0)
    throw Error("alignment_stats: zero-length sentence");
  for (const auto& l : alignment.links)
    if (l.src >= alignment.src_len || l.tgt >= alignment.tgt_len)
      throw Error("alignment_stats: link out of range");

  std::vector<bool> src_hit(alignment.src_len, false);
  std::vector<bool> tgt_hit(alignment.tgt_len, false);
  for (const auto& l : alignment.links) {
    src_hit[l.src] = true;
    tgt_hit[l.tgt] = true;
  }
  std::size_t src_unaligned = 0;
  for (bool hit : src_hit) src_unaligned += !hit;
  std::size_t tgt_unaligned = 0;
  for (bool hit : tgt_hit) tgt_unaligned += !hit;

  AlignmentStats stats;
  stats.u_src = static_cast<double>(src_unaligned) / alignment.src_len;
  stats.u_tgt = static_cast<double>(tgt_unaligned) / alignment.tgt_len;

  const std::vector<Link> links(alignment.links.begin(), alignment.links.end());
  if (links.size() > 1) {
    std::size_t crossing = 0;
    std::size_t total = 0;
    for (std::size_t a = 0; a < links.size(); ++a) {
      for (std::size_t b = a + 1; b < links.size(); ++b) {
        ++total;
        const auto di = static_cast<std::int64_t>(links[a].src) - links[b].src;
        const auto dj = static_cast<std::int64_t>(links[a].tgt) - links[b].tgt;
        if (di * dj < 0) ++crossing;
      }
    }
    stats.x = static_cast<double>(crossing) / static_cast<double>(total);
  }
  return stats;
}

AlignmentStats alignment_stats(const TokenizedPair& pair, const TokenAlignment& alignment) {
  if (pair.src.size() != alignment.src_len || pair.tgt.size() != alignment.tgt_len)
    throw Error("alignment_stats: alignment inconsistent with pair lengths");
  return alignment_stats(alignment);
}

AlignFilterResult filter_by_alignment(const std::vector<ScoredPair>& scored,
                                      const AlignmentThresholds& thresholds) {
  AlignFilterResult result;
  for (const auto& sp : scored) {
    std::vector<std::string> fired;
    if (!(sp.stats.u_src < thresholds.u_src_max)) fired.push_back("u_src");
    if (!(sp.stats.u_tgt < thresholds.u_tgt_max)) fired.push_back("u_tgt");
    if (!(sp.stats.x < thresholds.x_max)) fired.push_back("x");
    if (fired.empty())
      result.kept.push_back(sp);
    else
      result.removed.push_back({sp, std::move(fired)});
  }
  return result;
}

AlignmentStats corpus_stats(std::span<const AlignmentStats> stats) {
  if (stats.empty()) throw Error("corpus_stats: empty list");
  AlignmentStats mean;
  for (const auto& s : stats) {
    mean.u_src += s.u_src;
    mean.u_tgt += s.u_tgt;
    mean.x += s.x;
  }
  const auto n = static_cast<double>(stats.size());
  mean.u_src /= n;
  mean.u_tgt /= n;
  mean.x /= n;
  return mean;
}

AlignmentStats corpus_stats(const std::vector<ScoredPair>& scored) {
  std::vector<AlignmentStats> stats;
  stats.reserve(scored.size());
  for (const auto& sp : scored) stats.push_back(sp.stats);
  return corpus_stats(stats);
}

}  // namespace dialectkit
