#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dialectkit/provider.hpp"
#include "dialectkit/types.hpp"

namespace dialectkit::judge {

struct JudgeScore {
  int fluency = 0;
  int adequacy = 0;
  int dialect = 0;
  friend bool operator==(const JudgeScore&, const JudgeScore&) = default;
};

struct JudgeAggregate {
  double mean_fluency = 0.0;
  double mean_adequacy = 0.0;
  double mean_dialect = 0.0;
  std::size_t n = 0;
};

class JudgeError : public Error {
 public:
  enum class Kind { parse, schema, range };

  JudgeError(Kind kind, std::string field, const std::string& message)
      : Error(message), kind_(kind), field_(std::move(field)) {}

  Kind kind() const { return kind_; }
  const std::string& field() const { return field_; }

 private:
  Kind kind_;
  std::string field_;
};

/// Renders the fixed zero-shot rubric prompt with the three inputs
/// substituted after their labels. Byte-deterministic; throws on empty input.
std::string build_judge_prompt(std::string_view source, std::string_view hypothesis,
                               std::string_view reference);

/// Extracts the first balanced JSON object from the response (judge models
/// often wrap it in prose) and enforces the schema strictly: exactly the keys
/// fluency/adequacy/dialect, integer values within [1,5].
JudgeScore parse_judge_response(std::string_view text);

std::string serialize_score(const JudgeScore& score);

struct JudgeTriple {
  std::string source;
  std::string hypothesis;
  std::string reference;
};

struct JudgeFailure {
  std::size_t index = 0;
  std::string error;
};

struct JudgeOutcome {
  std::vector<std::optional<JudgeScore>> scores;  // one slot per input triple
  std::vector<JudgeFailure> failures;
  JudgeAggregate aggregate;
};

struct JudgeOptions {
  RetryPolicy retry;
  int concurrency = 4;
};

/// One score or one failure per triple; aggregate means are taken over the
/// successes. Throws if every item failed.
JudgeOutcome judge_corpus(TextGenerator& client, const std::vector<JudgeTriple>& triples,
                          const JudgeOptions& options = {});

}  // namespace dialectkit::judge
