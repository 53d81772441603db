#include <algorithm>
#include <cstdlib>
#include <vector>

#include "dialectkit/metrics.hpp"
#include "dialectkit/text.hpp"

namespace dialectkit::metrics {

namespace {

constexpr std::size_t kMaxShiftBlock = 10;
constexpr std::size_t kMaxShiftDistance = 10;

std::vector<std::string> apply_shift(const std::vector<std::string>& toks, std::size_t start,
                                     std::size_t len, std::size_t dest) {
  std::vector<std::string> out;
  out.reserve(toks.size());
  for (std::size_t i = 0; i < toks.size(); ++i)
    if (i < start || i >= start + len) out.push_back(toks[i]);
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(dest), toks.begin() + start,
             toks.begin() + start + len);
  return out;
}

}  // namespace

std::size_t levenshtein(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  std::vector<std::size_t> prev(n + 1);
  std::vector<std::size_t> cur(n + 1);
  for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= m; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] != b[j - 1] ? 1 : 0);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

TerCounts ter_counts(const std::vector<std::string>& hyp_tokens,
                     const std::vector<std::string>& ref_tokens) {
  TerCounts counts;
  counts.ref_len = ref_tokens.size();

  std::vector<std::string> cur = hyp_tokens;
  std::size_t dist = levenshtein(cur, ref_tokens);

  // Greedy best-shift loop: apply the single block shift with the largest
  // edit-distance reduction. Candidates are scanned in ascending (block
  // length, origin, destination) order and only strict improvements replace
  // the incumbent, so ties resolve to the smallest block, then the leftmost
  // origin, then the leftmost destination. The destination indexes the
  // sequence with the block already removed.
  while (dist > 0 && cur.size() > 1) {
    std::size_t best_dist = dist;
    std::size_t best_len = 0, best_start = 0, best_dest = 0;
    bool found = false;
    const std::size_t max_len = std::min(kMaxShiftBlock, cur.size());
    for (std::size_t len = 1; len <= max_len; ++len) {
      for (std::size_t start = 0; start + len <= cur.size(); ++start) {
        for (std::size_t dest = 0; dest + len <= cur.size(); ++dest) {
          if (dest == start) continue;
          const std::size_t distance = dest > start ? dest - start : start - dest;
          if (distance > kMaxShiftDistance) continue;
          const auto cand = apply_shift(cur, start, len, dest);
          const std::size_t d = levenshtein(cand, ref_tokens);
          if (d < best_dist) {
            best_dist = d;
            best_len = len;
            best_start = start;
            best_dest = dest;
            found = true;
          }
        }
      }
    }
    if (!found) break;
    cur = apply_shift(cur, best_start, best_len, best_dest);
    dist = best_dist;
    ++counts.shifts;
  }
  counts.edits = counts.shifts + dist;
  return counts;
}

double ter_sentence(std::string_view hyp, std::string_view ref) {
  const auto ref_tokens = text::split_whitespace(ref);
  if (ref_tokens.empty()) throw Error("empty reference string");
  const auto counts = ter_counts(text::split_whitespace(hyp), ref_tokens);
  return 100.0 * static_cast<double>(counts.edits) / static_cast<double>(counts.ref_len);
}

double ter_corpus(const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
  if (hyps.empty()) throw Error("empty hypothesis list");
  if (hyps.size() != refs.size()) throw Error("hypothesis/reference count mismatch");
  std::size_t edits = 0;
  std::size_t ref_len = 0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const auto ref_tokens = text::split_whitespace(refs[i]);
    if (ref_tokens.empty()) throw Error("empty reference string");
    const auto counts = ter_counts(text::split_whitespace(hyps[i]), ref_tokens);
    edits += counts.edits;
    ref_len += counts.ref_len;
  }
  return 100.0 * static_cast<double>(edits) / static_cast<double>(ref_len);
}

double ter(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
           ScoreMode mode) {
  if (mode == ScoreMode::corpus) return ter_corpus(hyps, refs);
  if (hyps.size() != 1) throw Error("sentence mode requires exactly one pair");
  return ter_sentence(hyps[0], refs[0]);
}

MetricReport evaluate_corpus(const std::vector<std::pair<std::string, std::string>>& hyp_ref) {
  if (hyp_ref.empty()) throw Error("evaluate_corpus: empty input");
  std::vector<std::string> hyps;
  std::vector<std::string> refs;
  hyps.reserve(hyp_ref.size());
  refs.reserve(hyp_ref.size());
  for (const auto& [h, r] : hyp_ref) {
    hyps.push_back(h);
    refs.push_back(r);
  }
  MetricReport report;
  report.bleu = bleu_corpus(hyps, refs);
  report.chrfpp = chrf_corpus(hyps, refs);
  report.ter = ter_corpus(hyps, refs);
  report.n_pairs = hyp_ref.size();
  return report;
}

}  // namespace dialectkit::metrics
