#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dialectkit/corpus.hpp"
#include "dialectkit/jsonl.hpp"

using namespace dialectkit;

namespace {

std::vector<SentencePair> make_pairs(std::size_t human, std::size_t synthetic) {
  std::vector<SentencePair> pairs;
  for (std::size_t i = 0; i < human + synthetic; ++i) {
    SentencePair p;
    p.id = "p" + std::to_string(i);
    p.source_text = "src " + std::to_string(i);
    p.target_text = "tgt " + std::to_string(i);
    p.origin = i < human ? Origin::human : Origin::synthetic;
    pairs.push_back(p);
  }
  return pairs;
}

std::string serialize_split(const CorpusSplit& s) {
  return serialize_corpus(s.train) + "|" + serialize_corpus(s.validation) + "|" +
         serialize_corpus(s.test);
}

}  // namespace

TEST_CASE("100 human pairs split 80/10/10 exactly") {
  const auto split = split_corpus(make_pairs(100, 0), {0.8, 0.1, 0.1}, 7);
  CHECK(split.train.size() == 80);
  CHECK(split.validation.size() == 10);
  CHECK(split.test.size() == 10);
}

TEST_CASE("synthetic pairs always train; val/test sized from the human pool") {
  const auto split = split_corpus(make_pairs(80, 20), {0.8, 0.1, 0.1}, 3);
  CHECK(split.validation.size() == 8);
  CHECK(split.test.size() == 8);
  CHECK(split.train.size() == 64 + 20);
  for (const auto& p : split.validation) CHECK(p.origin == Origin::human);
  for (const auto& p : split.test) CHECK(p.origin == Origin::human);
}

TEST_CASE("same seed and input give byte-identical splits") {
  const auto pairs = make_pairs(37, 13);
  const auto a = split_corpus(pairs, {0.8, 0.1, 0.1}, 7);
  const auto b = split_corpus(pairs, {0.8, 0.1, 0.1}, 7);
  CHECK(serialize_split(a) == serialize_split(b));
  const auto c = split_corpus(pairs, {0.8, 0.1, 0.1}, 8);
  CHECK(serialize_split(a) != serialize_split(c));
}

TEST_CASE("split is a partition and keeps synthetic out of val/test") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    const std::size_t human = 1 + rng() % 40;
    const std::size_t synth = rng() % 40;
    const auto pairs = make_pairs(human, synth);
    const auto split = split_corpus(pairs, {0.8, 0.1, 0.1}, rng());
    CHECK(split.train.size() + split.validation.size() + split.test.size() == pairs.size());
    std::set<std::string> ids;
    for (const auto* part : {&split.train, &split.validation, &split.test})
      for (const auto& p : *part) CHECK(ids.insert(p.id).second);
    for (const auto* part : {&split.validation, &split.test})
      for (const auto& p : *part) CHECK(p.origin == Origin::human);
  }
}

TEST_CASE("split errors") {
  CHECK_THROWS_AS(split_corpus(make_pairs(10, 0), {0.8, 0.1, 0.2}, 1), Error);
  CHECK_THROWS_AS(split_corpus(make_pairs(0, 10), {0.8, 0.1, 0.1}, 1), Error);
  // one human pair cannot fill val and test of one pair each
  CHECK_THROWS_AS(split_corpus(make_pairs(1, 0), {0.0, 0.5, 0.5}, 1), Error);
}

TEST_CASE("export_finetune renders one record per pair") {
  auto pairs = make_pairs(1, 0);
  const auto lines = export_finetune(pairs, "Translate: {src}");
  REQUIRE(lines.size() == 1);
  const auto j = nlohmann::json::parse(lines[0]);
  CHECK(j.at("instruction") == "Translate: src 0");
  CHECK(j.at("input") == "src 0");
  CHECK(j.at("output") == "tgt 0");
}

TEST_CASE("export_finetune on empty input yields empty output") {
  CHECK(export_finetune({}, "Translate: {src}").empty());
}

TEST_CASE("export_finetune escapes embedded newlines") {
  auto pairs = make_pairs(1, 0);
  pairs[0].target_text = "line1\nline2";
  const auto lines = export_finetune(pairs, "T {src}");
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].find('\n') == std::string::npos);
  CHECK(nlohmann::json::parse(lines[0]).at("output") == "line1\nline2");
}

TEST_CASE("export_finetune validates the placeholder") {
  CHECK_THROWS_AS(export_finetune({}, "no placeholder"), Error);
  CHECK_THROWS_AS(export_finetune({}, "{src} and {src}"), Error);
}

TEST_CASE("corpus jsonl round-trips every field") {
  std::vector<SentencePair> pairs = make_pairs(2, 1);
  pairs[0].source_doc = "дідо";
  pairs[0].qc = AlignmentStats{0.25, 0.5, 0.125};
  pairs[0].similarity = 0.75;
  pairs[1].source_text = "текст з \"лапками\" и\nпереносом";

  std::istringstream in(serialize_corpus(pairs));
  const auto parsed = read_corpus(in);
  REQUIRE(parsed.size() == pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(parsed[i].id == pairs[i].id);
    CHECK(parsed[i].source_text == pairs[i].source_text);
    CHECK(parsed[i].target_text == pairs[i].target_text);
    CHECK(parsed[i].origin == pairs[i].origin);
    CHECK(parsed[i].source_doc == pairs[i].source_doc);
    CHECK(parsed[i].similarity == pairs[i].similarity);
    CHECK(parsed[i].qc.has_value() == pairs[i].qc.has_value());
  }
  CHECK(parsed[0].qc->u_src == pairs[0].qc->u_src);
}

TEST_CASE("corpus reader reports bad lines") {
  std::istringstream in("not json\n");
  CHECK_THROWS_AS(read_corpus(in), Error);
}

TEST_CASE("corpus reader enforces unique ids") {
  auto pairs = make_pairs(2, 0);
  pairs[1].id = pairs[0].id;
  std::istringstream in(serialize_corpus(pairs));
  CHECK_THROWS_WITH_AS(read_corpus(in), doctest::Contains("duplicate id"), Error);
}

TEST_CASE("corpus reader rejects empty text sides") {
  auto pairs = make_pairs(1, 0);
  pairs[0].target_text = "  \t ";
  std::istringstream in(serialize_corpus(pairs));
  CHECK_THROWS_WITH_AS(read_corpus(in), doctest::Contains("empty text side"), Error);
}
