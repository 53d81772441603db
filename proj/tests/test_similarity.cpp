#include <doctest.h>

#include <random>

#include "dialectkit/similarity.hpp"
#include "dialectkit/text.hpp"
#include "oracles.hpp"

using namespace dialectkit;

TEST_CASE("similarity basics") {
  CHECK(similarity("abc", "abc") == 1.0);
  CHECK(similarity("abc", "xyz") == 0.0);
  CHECK(similarity("", "") == 1.0);
  CHECK(similarity("a", "") == 0.0);
  CHECK(similarity("", "a") == 0.0);
}

TEST_CASE("longest block bcd gives 0.75 on abcd/bcde") {
  CHECK(similarity("abcd", "bcde") == doctest::Approx(0.75));
}

TEST_CASE("similarity counts Unicode scalars, not bytes") {
  // Identical two-codepoint Cyrillic strings
  CHECK(similarity("єк", "єк") == 1.0);
  // One шared codepoint out of 2+2
  CHECK(similarity("єк", "єж") == doctest::Approx(0.5));
}

TEST_CASE("similarity equals the naive block-decomposition oracle") {
  std::mt19937 rng(42);
  for (int round = 0; round < 2000; ++round) {
    const std::size_t la = rng() % 7;
    const std::size_t lb = rng() % 7;
    std::u32string a, b;
    for (std::size_t i = 0; i < la; ++i) a.push_back(U'a' + rng() % 3);
    for (std::size_t i = 0; i < lb; ++i) b.push_back(U'a' + rng() % 3);
    const double got = similarity(text::encode_utf8(a), text::encode_utf8(b));
    CHECK(got == doctest::Approx(oracles::ratcliff_ratio(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("similarity is stable under repeated NFC") {
  const std::string a = text::nfc("зайшов єк");
  const std::string b = text::nfc("зайшов єк");
  CHECK(similarity(a, b) == similarity(text::nfc(a), text::nfc(b)));
  CHECK(similarity(a, b) == 1.0);
}

TEST_CASE("filter_by_similarity keeps, removes and annotates") {
  std::vector<SentencePair> pairs(3);
  pairs[0] = {"a", "однакові", "однакові", Origin::synthetic, {}, {}, {}};
  pairs[1] = {"b", "abc", "xyz", Origin::synthetic, {}, {}, {}};
  pairs[2] = {"c", "abcd", "bcde", Origin::synthetic, {}, {}, {}};

  const auto r = filter_by_similarity(pairs, 0.45);
  REQUIRE(r.kept.size() == 2);
  REQUIRE(r.removed.size() == 1);
  CHECK(r.kept[0].id == "a");
  CHECK(*r.kept[0].similarity == 1.0);
  CHECK(r.kept[1].id == "c");
  CHECK(*r.kept[1].similarity == doctest::Approx(0.75));
  CHECK(r.removed[0].id == "b");
  CHECK(*r.removed[0].similarity == 0.0);
}

TEST_CASE("threshold 0 keeps everything; out-of-range threshold throws") {
  std::vector<SentencePair> pairs(1);
  pairs[0] = {"a", "abc", "xyz", Origin::synthetic, {}, {}, {}};
  CHECK(filter_by_similarity(pairs, 0.0).removed.empty());
  CHECK_THROWS_AS(filter_by_similarity(pairs, 1.0 + 1e-9), Error);
  CHECK_THROWS_AS(filter_by_similarity(pairs, -0.1), Error);
}

TEST_CASE("filtering is idempotent") {
  std::mt19937 rng(7);
  std::vector<SentencePair> pairs;
  for (int i = 0; i < 40; ++i) {
    std::string s, t;
    for (int k = 0; k < 6; ++k) {
      s.push_back('a' + rng() % 4);
      t.push_back('a' + rng() % 4);
    }
    pairs.push_back({"p" + std::to_string(i), s, t, Origin::synthetic, {}, {}, {}});
  }
  const auto once = filter_by_similarity(pairs, 0.45);
  const auto twice = filter_by_similarity(once.kept, 0.45);
  CHECK(twice.removed.empty());
  REQUIRE(twice.kept.size() == once.kept.size());
  for (std::size_t i = 0; i < once.kept.size(); ++i)
    CHECK(twice.kept[i].id == once.kept[i].id);
}
