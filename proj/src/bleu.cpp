#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "dialectkit/metrics.hpp"
#include "dialectkit/text.hpp"

namespace dialectkit::metrics {

namespace {

constexpr int kOrder = 4;

struct BleuStats {
  std::array<std::size_t, kOrder> matches{};
  std::array<std::size_t, kOrder> totals{};
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;

  void operator+=(const BleuStats& o) {
    for (int n = 0; n < kOrder; ++n) {
      matches[n] += o.matches[n];
      totals[n] += o.totals[n];
    }
    hyp_len += o.hyp_len;
    ref_len += o.ref_len;
  }
};

using Ngram = std::vector<std::string>;

std::map<Ngram, std::size_t> count_ngrams(const std::vector<std::string>& toks, int n) {
  std::map<Ngram, std::size_t> counts;
  if (toks.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i)
    ++counts[Ngram(toks.begin() + i, toks.begin() + i + n)];
  return counts;
}

BleuStats sentence_stats(const std::vector<std::string>& hyp,
                         const std::vector<std::string>& ref) {
  BleuStats stats;
  stats.hyp_len = hyp.size();
  stats.ref_len = ref.size();
  for (int n = 1; n <= kOrder; ++n) {
    const auto hyp_counts = count_ngrams(hyp, n);
    const auto ref_counts = count_ngrams(ref, n);
    std::size_t match = 0;
    std::size_t total = 0;
    for (const auto& [gram, c] : hyp_counts) {
      total += c;
      const auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) match += std::min(c, it->second);
    }
    stats.matches[n - 1] = match;
    stats.totals[n - 1] = total;
  }
  return stats;
}

double score(const BleuStats& stats) {
  if (stats.hyp_len == 0) return 0.0;
  double log_sum = 0.0;
  int effective = 0;
  double smooth = 1.0;
  for (int n = 0; n < kOrder; ++n) {
    if (stats.totals[n] == 0) continue;  // hypothesis shorter than n
    ++effective;
    double p;
    if (stats.matches[n] == 0) {
      smooth *= 2.0;
      p = 1.0 / (smooth * static_cast<double>(stats.totals[n]));
    } else {
      p = static_cast<double>(stats.matches[n]) / static_cast<double>(stats.totals[n]);
    }
    log_sum += std::log(p);
  }
  if (effective == 0) return 0.0;
  const double bp =
      stats.hyp_len >= stats.ref_len
          ? 1.0
          : std::exp(1.0 - static_cast<double>(stats.ref_len) / stats.hyp_len);
  return 100.0 * bp * std::exp(log_sum / effective);
}

void check_inputs(const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
  if (hyps.empty()) throw Error("empty hypothesis list");
  if (hyps.size() != refs.size()) throw Error("hypothesis/reference count mismatch");
  for (const auto& r : refs)
    if (text::collapse_whitespace(r).empty()) throw Error("empty reference string");
}

}  // namespace

double bleu_sentence(std::string_view hyp, std::string_view ref) {
  check_inputs({std::string(hyp)}, {std::string(ref)});
  return score(sentence_stats(text::tokenize(hyp), text::tokenize(ref)));
}

double bleu_corpus(const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
  check_inputs(hyps, refs);
  BleuStats pooled;
  for (std::size_t i = 0; i < hyps.size(); ++i)
    pooled += sentence_stats(text::tokenize(hyps[i]), text::tokenize(refs[i]));
  return score(pooled);
}

double bleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
            ScoreMode mode) {
  if (mode == ScoreMode::corpus) return bleu_corpus(hyps, refs);
  if (hyps.size() != 1) throw Error("sentence mode requires exactly one pair");
  check_inputs(hyps, refs);
  return bleu_sentence(hyps[0], refs[0]);
}

}  // namespace dialectkit::metrics
