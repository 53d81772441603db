#include "dialectkit/judge.hpp"

#include <array>

#include <nlohmann/json.hpp>

namespace dialectkit::judge {

using nlohmann::json;

namespace {

constexpr std::string_view kPromptHead =
    "You are a linguistic expert evaluating machine-translated dialectal text. "
    "Rate the translation on the following dimensions:\n"
    "\n"
    "1. Fluency (1–5): Is the output grammatically correct and natural in the "
    "target dialect?\n"
    "\n"
    "2. Adequacy (1–5): Does the output preserve the meaning of the original "
    "source?\n"
    "\n"
    "3. Dialectal Quality (1–5): Does the output reflect the expected "
    "phonological, lexical, and grammatical properties of the Hutsul dialect?\n"
    "\n"
    "Return your answer in this exact JSON format:\n"
    "\n"
    "{ \"fluency\": x, \"adequacy\": y, \"dialect\": z }\n"
    "\n"
    "Do not explain your ratings.\n";

constexpr std::array<std::string_view, 3> kFields = {"fluency", "adequacy", "dialect"};

// First balanced top-level JSON object in the text, quote- and escape-aware.
std::optional<std::string_view> first_json_object(std::string_view text) {
  for (std::size_t start = text.find('{'); start != std::string_view::npos;
       start = text.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < text.size(); ++i) {
      const char c = text[i];
      if (in_string) {
        if (escaped)
          escaped = false;
        else if (c == '\\')
          escaped = true;
        else if (c == '"')
          in_string = false;
      } else if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth == 0) return text.substr(start, i - start + 1);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::string build_judge_prompt(std::string_view source, std::string_view hypothesis,
                               std::string_view reference) {
  if (source.empty()) throw Error("judge prompt: empty source");
  if (hypothesis.empty()) throw Error("judge prompt: empty hypothesis");
  if (reference.empty()) throw Error("judge prompt: empty reference");
  std::string prompt(kPromptHead);
  prompt += "\nSource (Standard Ukrainian): ";
  prompt += source;
  prompt += "\n\nModel Output (Hutsul): ";
  prompt += hypothesis;
  prompt += "\n\nReference (Hutsul): ";
  prompt += reference;
  prompt += '\n';
  return prompt;
}

JudgeScore parse_judge_response(std::string_view text) {
  const auto object_text = first_json_object(text);
  if (!object_text)
    throw JudgeError(JudgeError::Kind::parse, "", "no JSON object found in response");
  json j;
  try {
    j = json::parse(*object_text);
  } catch (const json::exception& e) {
    throw JudgeError(JudgeError::Kind::parse, "",
                     std::string("unparseable JSON object: ") + e.what());
  }
  if (!j.is_object())
    throw JudgeError(JudgeError::Kind::parse, "", "response JSON is not an object");

  for (const auto& field : kFields)
    if (!j.contains(field))
      throw JudgeError(JudgeError::Kind::schema, std::string(field),
                       "missing key: " + std::string(field));
  for (const auto& [key, value] : j.items())
    if (key != "fluency" && key != "adequacy" && key != "dialect")
      throw JudgeError(JudgeError::Kind::schema, key, "unexpected key: " + key);

  auto read_field = [&](std::string_view field) -> int {
    const json& v = j.at(std::string(field));
    if (!v.is_number_integer())
      throw JudgeError(JudgeError::Kind::range, std::string(field),
                       std::string(field) + " is not an integer");
    const auto value = v.get<std::int64_t>();
    if (value < 1 || value > 5)
      throw JudgeError(JudgeError::Kind::range, std::string(field),
                       std::string(field) + " out of range [1,5]: " + std::to_string(value));
    return static_cast<int>(value);
  };
  return {read_field("fluency"), read_field("adequacy"), read_field("dialect")};
}

std::string serialize_score(const JudgeScore& score) {
  return json{{"fluency", score.fluency},
              {"adequacy", score.adequacy},
              {"dialect", score.dialect}}
      .dump();
}

JudgeOutcome judge_corpus(TextGenerator& client, const std::vector<JudgeTriple>& triples,
                          const JudgeOptions& options) {
  if (triples.empty()) throw Error("judge_corpus: empty triple list");

  JudgeOutcome outcome;
  outcome.scores.resize(triples.size());
  std::vector<std::string> errors(triples.size());

  parallel_for(triples.size(), options.concurrency, [&](std::size_t i) {
    const auto& t = triples[i];
    try {
      const std::string prompt = build_judge_prompt(t.source, t.hypothesis, t.reference);
      int retries = 0;
      const std::string response =
          call_with_retries([&] { return client.generate(prompt); }, options.retry, retries);
      outcome.scores[i] = parse_judge_response(response);
    } catch (const FatalProviderError&) {
      throw;
    } catch (const std::exception& e) {
      errors[i] = e.what();
      if (errors[i].empty()) errors[i] = "unknown judge failure";
    }
  });

  double f = 0, a = 0, d = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    if (outcome.scores[i]) {
      f += outcome.scores[i]->fluency;
      a += outcome.scores[i]->adequacy;
      d += outcome.scores[i]->dialect;
      ++n;
    } else {
      outcome.failures.push_back({i, errors[i]});
    }
  }
  if (n == 0) throw Error("judge_corpus: every item failed");
  outcome.aggregate = {f / n, a / n, d / n, n};
  return outcome;
}

}  // namespace dialectkit::judge
