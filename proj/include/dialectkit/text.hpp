#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dialectkit::text {

/// Strict UTF-8 decode. Returns nullopt on malformed input (overlong forms,
/// surrogates, truncated sequences).
std::optional<std::u32string> decode_utf8(std::string_view s);

std::string encode_utf8(std::u32string_view s);

/// True for Unicode general category P* (all punctuation classes).
bool is_punct(char32_t c);

bool is_space(char32_t c);

/// Canonical composition (NFC). Mixed corpus sources disagree on composed vs
/// decomposed Cyrillic diacritics; everything is normalized once at ingestion.
std::string nfc(std::string_view s);

/// Collapses runs of Unicode whitespace to a single ASCII space and trims.
std::string collapse_whitespace(std::string_view s);

/// Whitespace-delimited tokens with every punctuation character split off as
/// its own token. "a, b." -> [a] [,] [b] [.]
std::vector<std::string> tokenize(std::string_view s);

/// Whitespace-delimited tokens, punctuation left attached.
std::vector<std::string> split_whitespace(std::string_view s);

}  // namespace dialectkit::text
