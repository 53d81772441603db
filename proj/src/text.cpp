#include "dialectkit/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "dialectkit/types.hpp"

namespace dialectkit::text {

std::optional<std::u32string> decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char b0 = static_cast<unsigned char>(s[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      return std::nullopt;
    }
    if (i + len > s.size()) return std::nullopt;
    for (std::size_t k = 1; k < len; ++k) {
      const unsigned char b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) return std::nullopt;
      cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong encodings, surrogates and out-of-range values.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000))
      return std::nullopt;
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return std::nullopt;
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size() * 2);
  for (char32_t cp : s) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

bool is_punct(char32_t c) {
  const auto cat = u_charType(static_cast<UChar32>(c));
  switch (cat) {
    case U_DASH_PUNCTUATION:
    case U_START_PUNCTUATION:
    case U_END_PUNCTUATION:
    case U_CONNECTOR_PUNCTUATION:
    case U_OTHER_PUNCTUATION:
    case U_INITIAL_PUNCTUATION:
    case U_FINAL_PUNCTUATION:
      return true;
    default:
      return false;
  }
}

bool is_space(char32_t c) {
  return u_isUWhiteSpace(static_cast<UChar32>(c)) != 0;
}

std::string nfc(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  const icu::UnicodeString input =
      icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int>(s.size())));
  const icu::UnicodeString normalized = norm->normalize(input, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  const auto decoded = decode_utf8(s);
  if (!decoded) throw Error("collapse_whitespace: invalid UTF-8");
  std::u32string out;
  out.reserve(decoded->size());
  bool pending_space = false;
  for (char32_t c : *decoded) {
    if (is_space(c)) {
      if (!out.empty()) pending_space = true;
    } else {
      if (pending_space) out.push_back(U' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return encode_utf8(out);
}

std::vector<std::string> tokenize(std::string_view s) {
  const auto decoded = decode_utf8(s);
  if (!decoded) throw Error("tokenize: invalid UTF-8");
  std::vector<std::string> tokens;
  std::u32string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      tokens.push_back(encode_utf8(cur));
      cur.clear();
    }
  };
  for (char32_t c : *decoded) {
    if (is_space(c)) {
      flush();
    } else if (is_punct(c)) {
      flush();
      tokens.push_back(encode_utf8(std::u32string(1, c)));
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> split_whitespace(std::string_view s) {
  const auto decoded = decode_utf8(s);
  if (!decoded) throw Error("split_whitespace: invalid UTF-8");
  std::vector<std::string> tokens;
  std::u32string cur;
  for (char32_t c : *decoded) {
    if (is_space(c)) {
      if (!cur.empty()) {
        tokens.push_back(encode_utf8(cur));
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(encode_utf8(cur));
  return tokens;
}

}  // namespace dialectkit::text
