#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dialectkit/types.hpp"

namespace dialectkit {

inline constexpr std::string_view kExamplesPlaceholder = "{examples}";
inline constexpr std::string_view kSourceSlot = "{source}";

/// Generation prompt template: grammar rules inline, one {examples} slot and
/// one {source} slot. Substitution is single-pass, so placeholder-like text
/// inside the inputs is never re-expanded.
class PromptTemplate {
 public:
  explicit PromptTemplate(std::string text);
  static PromptTemplate load(const std::filesystem::path& path);

  /// Retrieved examples are joined as a numbered list in retrieval order.
  std::string build(const std::vector<std::string>& retrieved_examples,
                    std::string_view source) const;

  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::size_t examples_pos_ = 0;
  std::size_t source_pos_ = 0;
};

}  // namespace dialectkit
