#include "dialectkit/prompt.hpp"

#include <fstream>
#include <sstream>

namespace dialectkit {

namespace {

std::size_t require_unique(const std::string& text, std::string_view placeholder) {
  const std::size_t pos = text.find(placeholder);
  if (pos == std::string::npos)
    throw Error("prompt template is missing the " + std::string(placeholder) +
                " placeholder");
  if (text.find(placeholder, pos + 1) != std::string::npos)
    throw Error("prompt template contains " + std::string(placeholder) +
                " more than once");
  return pos;
}

}  // namespace

PromptTemplate::PromptTemplate(std::string text) : text_(std::move(text)) {
  examples_pos_ = require_unique(text_, kExamplesPlaceholder);
  source_pos_ = require_unique(text_, kSourceSlot);
}

PromptTemplate PromptTemplate::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open prompt template: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return PromptTemplate(buf.str());
}

std::string PromptTemplate::build(const std::vector<std::string>& retrieved_examples,
                                  std::string_view source) const {
  std::string examples;
  for (std::size_t i = 0; i < retrieved_examples.size(); ++i) {
    if (i > 0) examples += '\n';
    examples += std::to_string(i + 1);
    examples += ". ";
    examples += retrieved_examples[i];
  }

  // Single left-to-right pass over the template; substituted text is copied
  // verbatim and never rescanned.
  struct Slot {
    std::size_t pos;
    std::string_view placeholder;
    const std::string* value;
  };
  const std::string source_str(source);
  std::vector<Slot> slots = {{examples_pos_, kExamplesPlaceholder, &examples},
                             {source_pos_, kSourceSlot, &source_str}};
  if (slots[0].pos > slots[1].pos) std::swap(slots[0], slots[1]);

  std::string out;
  out.reserve(text_.size() + examples.size() + source.size());
  std::size_t cursor = 0;
  for (const auto& slot : slots) {
    out.append(text_, cursor, slot.pos - cursor);
    out += *slot.value;
    cursor = slot.pos + slot.placeholder.size();
  }
  out.append(text_, cursor, text_.size() - cursor);
  return out;
}

}  // namespace dialectkit
