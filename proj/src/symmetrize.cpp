#include "dialectkit/symmetrize.hpp"

#include <algorithm>
#include <vector>

namespace dialectkit {

std::string_view to_string(SymmetrizationHeuristic h) {
  switch (h) {
    case SymmetrizationHeuristic::intersection: return "intersection";
    case SymmetrizationHeuristic::union_all: return "union";
    case SymmetrizationHeuristic::grow_diag_final_and: return "grow-diag-final-and";
  }
  return "grow-diag-final-and";
}

std::optional<SymmetrizationHeuristic> heuristic_from_string(std::string_view s) {
  if (s == "intersection") return SymmetrizationHeuristic::intersection;
  if (s == "union") return SymmetrizationHeuristic::union_all;
  if (s == "grow-diag-final-and" || s == "gdfa")
    return SymmetrizationHeuristic::grow_diag_final_and;
  return std::nullopt;
}

TokenAlignment symmetrize(const TokenAlignment& forward, const TokenAlignment& backward,
                          SymmetrizationHeuristic heuristic) {
  if (forward.src_len != backward.src_len || forward.tgt_len != backward.tgt_len)
    throw Error("symmetrize: alignments describe different sentence lengths");

  TokenAlignment result;
  result.src_len = forward.src_len;
  result.tgt_len = forward.tgt_len;

  if (heuristic == SymmetrizationHeuristic::union_all) {
    result.links = forward.links;
    result.links.insert(backward.links.begin(), backward.links.end());
    return result;
  }

  std::set<Link> inter;
  std::set_intersection(forward.links.begin(), forward.links.end(), backward.links.begin(),
                        backward.links.end(), std::inserter(inter, inter.begin()));
  if (heuristic == SymmetrizationHeuristic::intersection) {
    result.links = std::move(inter);
    return result;
  }

  // grow-diag-final-and
  std::set<Link> united = forward.links;
  united.insert(backward.links.begin(), backward.links.end());

  std::set<Link> aligned = inter;
  std::vector<bool> src_covered(result.src_len, false);
  std::vector<bool> tgt_covered(result.tgt_len, false);
  for (const auto& l : aligned) {
    src_covered[l.src] = true;
    tgt_covered[l.tgt] = true;
  }

  static constexpr int kNeighbors[8][2] = {{-1, 0}, {0, -1}, {1, 0},  {0, 1},
                                           {-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  bool added = true;
  while (added) {
    added = false;
    for (std::uint32_t i = 0; i < result.src_len; ++i) {
      for (std::uint32_t j = 0; j < result.tgt_len; ++j) {
        if (!aligned.count({i, j})) continue;
        for (const auto& d : kNeighbors) {
          const std::int64_t ni = static_cast<std::int64_t>(i) + d[0];
          const std::int64_t nj = static_cast<std::int64_t>(j) + d[1];
          if (ni < 0 || nj < 0 || ni >= result.src_len || nj >= result.tgt_len) continue;
          const Link cand{static_cast<std::uint32_t>(ni), static_cast<std::uint32_t>(nj)};
          if (aligned.count(cand)) continue;
          if (!united.count(cand)) continue;
          if (src_covered[cand.src] && tgt_covered[cand.tgt]) continue;
          aligned.insert(cand);
          src_covered[cand.src] = true;
          tgt_covered[cand.tgt] = true;
          added = true;
        }
      }
    }
  }

  // final-and: both endpoints must still be uncovered
  for (const auto* dir : {&forward.links, &backward.links}) {
    for (const auto& l : *dir) {
      if (aligned.count(l)) continue;
      if (src_covered[l.src] || tgt_covered[l.tgt]) continue;
      aligned.insert(l);
      src_covered[l.src] = true;
      tgt_covered[l.tgt] = true;
    }
  }

  result.links = std::move(aligned);
  return result;
}

}  // namespace dialectkit
