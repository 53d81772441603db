#include "dialectkit/corpus.hpp"

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

namespace dialectkit {

CorpusSplit split_corpus(const std::vector<SentencePair>& pairs, const SplitRatios& ratios,
                         std::uint64_t seed) {
  if (ratios.train < 0 || ratios.val < 0 || ratios.test < 0)
    throw Error("split ratios must be non-negative");
  const double sum = ratios.train + ratios.val + ratios.test;
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error("split ratios must sum to 1, got " + std::to_string(sum));

  std::vector<std::size_t> human;
  std::vector<std::size_t> synthetic;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    (pairs[i].origin == Origin::human ? human : synthetic).push_back(i);

  if (human.empty() && (ratios.val > 0 || ratios.test > 0))
    throw Error("no human pairs available for validation/test");

  const auto human_count = static_cast<double>(human.size());
  const auto val_n = static_cast<std::size_t>(std::llround(ratios.val * human_count));
  const auto test_n = static_cast<std::size_t>(std::llround(ratios.test * human_count));
  if (val_n + test_n > human.size())
    throw Error("requested val+test sizes exceed the human pair pool");

  // std::shuffle is implementation-defined; a hand-rolled Fisher-Yates over
  // the standard-specified mt19937_64 stream keeps splits platform-stable.
  std::mt19937_64 rng(seed);
  for (std::size_t i = human.size(); i > 1; --i) {
    const std::size_t j = rng() % i;
    std::swap(human[i - 1], human[j]);
  }

  CorpusSplit split;
  split.seed = seed;
  for (std::size_t i = 0; i < val_n; ++i) split.validation.push_back(pairs[human[i]]);
  for (std::size_t i = val_n; i < val_n + test_n; ++i) split.test.push_back(pairs[human[i]]);
  for (std::size_t i = val_n + test_n; i < human.size(); ++i)
    split.train.push_back(pairs[human[i]]);
  for (std::size_t idx : synthetic) split.train.push_back(pairs[idx]);
  return split;
}

std::vector<std::string> export_finetune(const std::vector<SentencePair>& pairs,
                                         std::string_view instruction_template) {
  const std::size_t first = instruction_template.find(kSourcePlaceholder);
  if (first == std::string_view::npos)
    throw Error("instruction template is missing the {src} placeholder");
  if (instruction_template.find(kSourcePlaceholder, first + 1) != std::string_view::npos)
    throw Error("instruction template contains more than one {src} placeholder");

  std::vector<std::string> lines;
  lines.reserve(pairs.size());
  for (const auto& pair : pairs) {
    std::string instruction(instruction_template);
    instruction.replace(first, kSourcePlaceholder.size(), pair.source_text);
    nlohmann::json j;
    j["instruction"] = instruction;
    j["input"] = pair.source_text;
    j["output"] = pair.target_text;
    lines.push_back(j.dump());
  }
  return lines;
}

}  // namespace dialectkit
