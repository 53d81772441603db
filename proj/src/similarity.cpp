#include "dialectkit/similarity.hpp"

#include <array>
#include <unordered_map>
#include <vector>

#include "dialectkit/text.hpp"

namespace dialectkit {

namespace {

struct Match {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t size = 0;
};

// Longest matching block within a[alo,ahi) x b[blo,bhi). Ties resolve to the
// earliest start in a, then in b: candidates are scanned with i ascending and
// only strictly longer matches replace the incumbent.
Match longest_match(const std::u32string& a,
                    const std::unordered_map<char32_t, std::vector<std::size_t>>& b_positions,
                    std::size_t alo, std::size_t ahi, std::size_t blo, std::size_t bhi) {
  Match best{alo, blo, 0};
  std::unordered_map<std::size_t, std::size_t> run_len;
  for (std::size_t i = alo; i < ahi; ++i) {
    std::unordered_map<std::size_t, std::size_t> next_run;
    const auto it = b_positions.find(a[i]);
    if (it != b_positions.end()) {
      for (std::size_t j : it->second) {
        if (j < blo) continue;
        if (j >= bhi) break;
        std::size_t k = 1;
        if (j > blo) {
          const auto prev = run_len.find(j - 1);
          if (prev != run_len.end()) k = prev->second + 1;
        }
        next_run[j] = k;
        if (k > best.size) best = {i - k + 1, j - k + 1, k};
      }
    }
    run_len = std::move(next_run);
  }
  return best;
}

}  // namespace

double similarity(std::string_view a_utf8, std::string_view b_utf8) {
  const auto a_opt = text::decode_utf8(a_utf8);
  const auto b_opt = text::decode_utf8(b_utf8);
  if (!a_opt || !b_opt) throw Error("similarity: invalid UTF-8");
  const std::u32string& a = *a_opt;
  const std::u32string& b = *b_opt;

  const std::size_t total = a.size() + b.size();
  if (total == 0) return 1.0;

  std::unordered_map<char32_t, std::vector<std::size_t>> b_positions;
  for (std::size_t j = 0; j < b.size(); ++j) b_positions[b[j]].push_back(j);

  std::size_t matched = 0;
  std::vector<std::array<std::size_t, 4>> queue{{0, a.size(), 0, b.size()}};
  while (!queue.empty()) {
    const auto [alo, ahi, blo, bhi] = queue.back();
    queue.pop_back();
    const Match m = longest_match(a, b_positions, alo, ahi, blo, bhi);
    if (m.size == 0) continue;
    matched += m.size;
    queue.push_back({alo, m.a, blo, m.b});
    queue.push_back({m.a + m.size, ahi, m.b + m.size, bhi});
  }
  return 2.0 * static_cast<double>(matched) / static_cast<double>(total);
}

SimFilterResult filter_by_similarity(std::vector<SentencePair> pairs, double threshold) {
  if (threshold < 0.0 || threshold > 1.0)
    throw Error("similarity threshold must be within [0,1]");
  SimFilterResult result;
  for (auto& pair : pairs) {
    pair.similarity = similarity(pair.source_text, pair.target_text);
    if (*pair.similarity >= threshold)
      result.kept.push_back(std::move(pair));
    else
      result.removed.push_back(std::move(pair));
  }
  return result;
}

}  // namespace dialectkit
