#include <algorithm>
#include <map>
#include <vector>

#include "dialectkit/metrics.hpp"
#include "dialectkit/text.hpp"

namespace dialectkit::metrics {

namespace {

struct OrderStats {
  std::size_t hyp_total = 0;
  std::size_t ref_total = 0;
  std::size_t match = 0;
};

std::u32string strip_whitespace(std::string_view s) {
  const auto decoded = text::decode_utf8(s);
  if (!decoded) throw Error("chrf: invalid UTF-8");
  std::u32string out;
  for (char32_t c : *decoded)
    if (!text::is_space(c)) out.push_back(c);
  return out;
}

template <typename Seq>
std::map<Seq, std::size_t> count_grams(const std::vector<Seq>& grams) {
  std::map<Seq, std::size_t> counts;
  for (const auto& g : grams) ++counts[g];
  return counts;
}

template <typename Seq>
OrderStats order_stats(const std::vector<Seq>& hyp_grams, const std::vector<Seq>& ref_grams) {
  OrderStats stats;
  stats.hyp_total = hyp_grams.size();
  stats.ref_total = ref_grams.size();
  const auto hyp_counts = count_grams(hyp_grams);
  const auto ref_counts = count_grams(ref_grams);
  for (const auto& [g, c] : hyp_counts) {
    const auto it = ref_counts.find(g);
    if (it != ref_counts.end()) stats.match += std::min(c, it->second);
  }
  return stats;
}

std::vector<std::u32string> char_ngrams(const std::u32string& s, int n) {
  std::vector<std::u32string> grams;
  if (s.size() < static_cast<std::size_t>(n)) return grams;
  for (std::size_t i = 0; i + n <= s.size(); ++i) grams.push_back(s.substr(i, n));
  return grams;
}

std::vector<std::vector<std::string>> word_ngrams(const std::vector<std::string>& toks, int n) {
  std::vector<std::vector<std::string>> grams;
  if (toks.size() < static_cast<std::size_t>(n)) return grams;
  for (std::size_t i = 0; i + n <= toks.size(); ++i)
    grams.emplace_back(toks.begin() + i, toks.begin() + i + n);
  return grams;
}

std::vector<OrderStats> segment_stats(std::string_view hyp, std::string_view ref,
                                      int char_order, int word_order) {
  std::vector<OrderStats> all;
  const auto hyp_chars = strip_whitespace(hyp);
  const auto ref_chars = strip_whitespace(ref);
  for (int n = 1; n <= char_order; ++n)
    all.push_back(order_stats(char_ngrams(hyp_chars, n), char_ngrams(ref_chars, n)));
  const auto hyp_words = text::tokenize(hyp);
  const auto ref_words = text::tokenize(ref);
  for (int n = 1; n <= word_order; ++n)
    all.push_back(order_stats(word_ngrams(hyp_words, n), word_ngrams(ref_words, n)));
  return all;
}

double score(const std::vector<OrderStats>& orders, double beta) {
  const double b2 = beta * beta;
  double sum = 0.0;
  int effective = 0;
  for (const auto& o : orders) {
    if (o.hyp_total == 0 && o.ref_total == 0) continue;  // order absent on both sides
    ++effective;
    const double prec = o.hyp_total ? static_cast<double>(o.match) / o.hyp_total : 0.0;
    const double rec = o.ref_total ? static_cast<double>(o.match) / o.ref_total : 0.0;
    const double denom = b2 * prec + rec;
    if (denom > 0) sum += (1.0 + b2) * prec * rec / denom;
  }
  if (effective == 0) return 0.0;
  return 100.0 * sum / effective;
}

void check_inputs(const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
  if (hyps.empty()) throw Error("empty hypothesis list");
  if (hyps.size() != refs.size()) throw Error("hypothesis/reference count mismatch");
  for (const auto& r : refs)
    if (text::collapse_whitespace(r).empty()) throw Error("empty reference string");
}

}  // namespace

double chrf_sentence(std::string_view hyp, std::string_view ref, int char_order,
                     int word_order, double beta) {
  check_inputs({std::string(hyp)}, {std::string(ref)});
  return score(segment_stats(hyp, ref, char_order, word_order), beta);
}

double chrf_corpus(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                   int char_order, int word_order, double beta) {
  check_inputs(hyps, refs);
  std::vector<OrderStats> pooled(static_cast<std::size_t>(char_order + word_order));
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const auto seg = segment_stats(hyps[i], refs[i], char_order, word_order);
    for (std::size_t k = 0; k < pooled.size(); ++k) {
      pooled[k].hyp_total += seg[k].hyp_total;
      pooled[k].ref_total += seg[k].ref_total;
      pooled[k].match += seg[k].match;
    }
  }
  return score(pooled, beta);
}

double chrfpp(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
              ScoreMode mode) {
  if (mode == ScoreMode::corpus) return chrf_corpus(hyps, refs);
  if (hyps.size() != 1) throw Error("sentence mode requires exactly one pair");
  return chrf_sentence(hyps[0], refs[0]);
}

}  // namespace dialectkit::metrics
