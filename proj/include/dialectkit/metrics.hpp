#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dialectkit/types.hpp"

namespace dialectkit::metrics {

enum class ScoreMode { corpus, sentence };

// ---------------------------------------------------------------------------
// BLEU-4 with brevity penalty, on the shared punctuation-splitting tokenizer.
// Zero n-gram precisions are exponentially smoothed: the k-th zero order
// contributes 1 / (2^k * hyp n-gram count). Orders with an empty hypothesis
// n-gram count are dropped from the geometric mean (effective order), so
// identical short sentences still score 100. Scores are scaled to [0,100].

double bleu_sentence(std::string_view hyp, std::string_view ref);
double bleu_corpus(const std::vector<std::string>& hyps, const std::vector<std::string>& refs);
double bleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
            ScoreMode mode);

// ---------------------------------------------------------------------------
// chrF++: character n-grams of order 1..char_order over the text with all
// whitespace removed, plus word n-grams of order 1..word_order over
// punctuation-split tokens. Recall-weighted F with beta, macro-averaged over
// all orders that have n-grams on either side.

double chrf_sentence(std::string_view hyp, std::string_view ref, int char_order = 6,
                     int word_order = 2, double beta = 2.0);
double chrf_corpus(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                   int char_order = 6, int word_order = 2, double beta = 2.0);
double chrfpp(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
              ScoreMode mode);

// ---------------------------------------------------------------------------
// TER: 100 * edits / reference length over whitespace tokens (punctuation
// stays attached, matching the reference scorer's behavior). Edits are
// insertions + deletions + substitutions + block shifts; the shift search is
// the greedy best-shift loop (ties: smallest block, then leftmost origin,
// then leftmost destination) followed by token Levenshtein. Shift distance
// and block length are both capped at 10.

struct TerCounts {
  std::size_t edits = 0;   // total including shifts
  std::size_t shifts = 0;
  std::size_t ref_len = 0;
};

TerCounts ter_counts(const std::vector<std::string>& hyp_tokens,
                     const std::vector<std::string>& ref_tokens);
double ter_sentence(std::string_view hyp, std::string_view ref);
double ter_corpus(const std::vector<std::string>& hyps, const std::vector<std::string>& refs);
double ter(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
           ScoreMode mode);

// ---------------------------------------------------------------------------

struct MetricReport {
  double bleu = 0.0;
  double chrfpp = 0.0;
  double ter = 0.0;
  std::size_t n_pairs = 0;
};

MetricReport evaluate_corpus(const std::vector<std::pair<std::string, std::string>>& hyp_ref);

std::size_t levenshtein(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace dialectkit::metrics
