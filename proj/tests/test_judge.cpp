#include <doctest.h>

#include <algorithm>
#include <random>

#include "dialectkit/judge.hpp"

using namespace dialectkit;
using namespace dialectkit::judge;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + 1))
    ++count;
  return count;
}

}  // namespace

TEST_CASE("judge prompt carries the fixed JSON format line and rubric") {
  const auto prompt = build_judge_prompt("джерело", "вихід", "еталон");
  CHECK(prompt.find("{ \"fluency\": x, \"adequacy\": y, \"dialect\": z }") !=
        std::string::npos);
  CHECK(prompt.find("Do not explain your ratings.") != std::string::npos);
  CHECK(prompt.find("1. Fluency (1–5)") != std::string::npos);
  CHECK(prompt.find("2. Adequacy (1–5)") != std::string::npos);
  CHECK(prompt.find("3. Dialectal Quality (1–5)") != std::string::npos);
}

TEST_CASE("each input appears exactly once after its label") {
  const auto prompt = build_judge_prompt("SRC-TEXT", "HYP-TEXT", "REF-TEXT");
  CHECK(count_occurrences(prompt, "SRC-TEXT") == 1);
  CHECK(count_occurrences(prompt, "HYP-TEXT") == 1);
  CHECK(count_occurrences(prompt, "REF-TEXT") == 1);
  CHECK(prompt.find("Source (Standard Ukrainian): SRC-TEXT") != std::string::npos);
  CHECK(prompt.find("Model Output (Hutsul): HYP-TEXT") != std::string::npos);
  CHECK(prompt.find("Reference (Hutsul): REF-TEXT") != std::string::npos);
}

TEST_CASE("prompt construction is byte-deterministic and rejects empty inputs") {
  CHECK(build_judge_prompt("а", "б", "в") == build_judge_prompt("а", "б", "в"));
  CHECK_THROWS_AS(build_judge_prompt("", "б", "в"), Error);
  CHECK_THROWS_AS(build_judge_prompt("а", "", "в"), Error);
  CHECK_THROWS_AS(build_judge_prompt("а", "б", ""), Error);
}

TEST_CASE("well-formed responses parse") {
  CHECK(parse_judge_response(R"({"fluency": 4, "adequacy": 5, "dialect": 3})") ==
        JudgeScore{4, 5, 3});
  CHECK(parse_judge_response(R"(Sure! {"fluency": 4, "adequacy": 5, "dialect": 3})") ==
        JudgeScore{4, 5, 3});
  CHECK(parse_judge_response("{ \"fluency\": 1, \"adequacy\": 1, \"dialect\": 5 } trailing") ==
        JudgeScore{1, 1, 5});
}

TEST_CASE("out-of-range and non-integer values raise range errors naming the field") {
  try {
    parse_judge_response(R"({"fluency": 6, "adequacy": 5, "dialect": 3})");
    FAIL("expected range error");
  } catch (const JudgeError& e) {
    CHECK(e.kind() == JudgeError::Kind::range);
    CHECK(e.field() == "fluency");
  }
  try {
    parse_judge_response(R"({"fluency": 4, "adequacy": 0, "dialect": 3})");
    FAIL("expected range error");
  } catch (const JudgeError& e) {
    CHECK(e.kind() == JudgeError::Kind::range);
    CHECK(e.field() == "adequacy");
  }
  try {
    parse_judge_response(R"({"fluency": 4, "adequacy": 5, "dialect": 3.5})");
    FAIL("expected range error");
  } catch (const JudgeError& e) {
    CHECK(e.kind() == JudgeError::Kind::range);
    CHECK(e.field() == "dialect");
  }
}

TEST_CASE("schema violations raise schema errors naming the field") {
  try {
    parse_judge_response(R"({"fluency": 4, "dialect": 3})");
    FAIL("expected schema error");
  } catch (const JudgeError& e) {
    CHECK(e.kind() == JudgeError::Kind::schema);
    CHECK(e.field() == "adequacy");
  }
  try {
    parse_judge_response(R"({"fluency": 4, "adequacy": 5, "dialect": 3, "extra": 1})");
    FAIL("expected schema error");
  } catch (const JudgeError& e) {
    CHECK(e.kind() == JudgeError::Kind::schema);
    CHECK(e.field() == "extra");
  }
}

TEST_CASE("responses without a JSON object raise parse errors") {
  try {
    parse_judge_response("no object here");
    FAIL("expected parse error");
  } catch (const JudgeError& e) {
    CHECK(e.kind() == JudgeError::Kind::parse);
  }
  // the first balanced object wins; schema strictness applies to it
  CHECK_THROWS_AS(parse_judge_response(R"({} {"fluency":4,"adequacy":5,"dialect":3})"),
                  JudgeError);
}

TEST_CASE("every score triple in [1,5]^3 round-trips") {
  for (int f = 1; f <= 5; ++f)
    for (int a = 1; a <= 5; ++a)
      for (int d = 1; d <= 5; ++d) {
        const JudgeScore score{f, a, d};
        CHECK(parse_judge_response(serialize_score(score)) == score);
      }
}

TEST_CASE("judge_corpus aggregates a constant mock") {
  MockGenerator mock(
      [](const std::string&) { return std::string(R"({"fluency":4,"adequacy":5,"dialect":3})"); });
  std::vector<JudgeTriple> triples(10, {"с", "г", "е"});
  const auto outcome = judge_corpus(mock, triples, {});
  CHECK(outcome.aggregate.n == 10);
  CHECK(outcome.aggregate.mean_fluency == doctest::Approx(4.0));
  CHECK(outcome.aggregate.mean_adequacy == doctest::Approx(5.0));
  CHECK(outcome.aggregate.mean_dialect == doctest::Approx(3.0));
  CHECK(outcome.failures.empty());
}

TEST_CASE("malformed responses become failures, items are conserved") {
  MockGenerator mock([](const std::string& prompt) -> std::string {
    if (prompt.find("BROKEN") != std::string::npos) return "not json";
    return R"({"fluency":2,"adequacy":3,"dialect":4})";
  });
  std::vector<JudgeTriple> triples(10, {"с", "г", "е"});
  triples[4].hypothesis = "BROKEN";
  const auto outcome = judge_corpus(mock, triples, {});
  CHECK(outcome.aggregate.n == 9);
  REQUIRE(outcome.failures.size() == 1);
  CHECK(outcome.failures[0].index == 4);
  std::size_t scored = 0;
  for (const auto& s : outcome.scores) scored += s.has_value();
  CHECK(scored + outcome.failures.size() == triples.size());
}

TEST_CASE("aggregate is permutation-invariant") {
  MockGenerator mock([](const std::string& prompt) -> std::string {
    const int v = 1 + static_cast<int>(prompt.size() % 5);
    return R"({"fluency":)" + std::to_string(v) + R"(,"adequacy":)" +
           std::to_string(6 - v) + R"(,"dialect":3})";
  });
  std::vector<JudgeTriple> triples;
  for (int i = 0; i < 12; ++i)
    triples.push_back({"джерело " + std::string(i, 'x'), "вихід", "еталон"});
  const auto first = judge_corpus(mock, triples, {});
  std::mt19937 rng(4);
  std::shuffle(triples.begin(), triples.end(), rng);
  const auto second = judge_corpus(mock, triples, {});
  CHECK(first.aggregate.mean_fluency == doctest::Approx(second.aggregate.mean_fluency));
  CHECK(first.aggregate.mean_adequacy == doctest::Approx(second.aggregate.mean_adequacy));
  CHECK(first.aggregate.mean_dialect == doctest::Approx(second.aggregate.mean_dialect));
}

TEST_CASE("judge_corpus fails when every item fails") {
  MockGenerator mock([](const std::string&) { return std::string("garbage"); });
  std::vector<JudgeTriple> triples(3, {"с", "г", "е"});
  CHECK_THROWS_AS(judge_corpus(mock, triples, {}), Error);
  CHECK_THROWS_AS(judge_corpus(mock, {}, {}), Error);
}
