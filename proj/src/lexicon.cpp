#include "dialectkit/lexicon.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "dialectkit/jsonl.hpp"
#include "dialectkit/manifest.hpp"
#include "dialectkit/text.hpp"

namespace dialectkit {

namespace {

constexpr std::string_view kCsvHeader = "dialect,standard,source";

std::size_t count_occurrences(std::string_view haystack, std::string_view needle) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string_view::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

std::string strip_noise(std::string_view s, const std::u32string& noise) {
  const auto decoded = text::decode_utf8(s);
  if (!decoded) throw Error("strip_noise: invalid UTF-8");
  std::u32string out;
  out.reserve(decoded->size());
  for (char32_t c : *decoded)
    if (noise.find(c) == std::u32string::npos) out.push_back(c);
  return text::encode_utf8(out);
}

}  // namespace

IngestConfig default_ingest_config() {
  IngestConfig cfg;
  cfg.separators = {"\t", "—", "–", " - ", ","};
  // Quotes, brackets, bullets and zero-width noise seen in scraped pages.
  cfg.noise_chars = U"\"'«»“”„‘’()[]{}*•·﻿​‌‍";
  return cfg;
}

IngestResult ingest_lexicon(const std::vector<std::string>& raw_lines,
                            const IngestConfig& config, std::string_view source_id) {
  if (config.separators.empty()) throw Error("ingest config lists no separator candidates");

  IngestResult result;
  std::unordered_set<std::string> seen;
  auto push_entry = [&](LexiconEntry entry) {
    const std::string key = entry.dialect_form + '\x1F' + entry.standard_form;
    if (seen.insert(key).second)
      result.entries.push_back(std::move(entry));
    else
      ++result.duplicates_dropped;
  };

  // Our own CSV output round-trips through ingestion unchanged.
  if (!raw_lines.empty() && raw_lines.front() == kCsvHeader) {
    for (std::size_t i = 1; i < raw_lines.size(); ++i) {
      const std::string& line = raw_lines[i];
      if (line.empty()) continue;
      const auto fields = csv_split(line);
      if (fields.size() != 3) {
        result.rejects.push_back({std::string(source_id), i + 1, line, "malformed csv row"});
        continue;
      }
      push_entry({fields[0], fields[1], fields[2]});
    }
    return result;
  }

  for (std::size_t i = 0; i < raw_lines.size(); ++i) {
    const std::string& raw = raw_lines[i];
    const std::size_t line_no = i + 1;
    auto reject = [&](std::string reason) {
      result.rejects.push_back({std::string(source_id), line_no, raw, std::move(reason)});
    };

    if (!text::decode_utf8(raw)) {
      reject("invalid utf-8");
      continue;
    }
    const std::string line = text::nfc(raw);
    if (text::collapse_whitespace(line).empty()) continue;

    const std::string* separator = nullptr;
    std::size_t types_present = 0;
    std::size_t occurrences = 0;
    for (const auto& cand : config.separators) {
      const std::size_t n = count_occurrences(line, cand);
      if (n > 0) {
        ++types_present;
        separator = &cand;
        occurrences = n;
      }
    }
    if (types_present == 0) {
      reject("no separator found");
      continue;
    }
    if (types_present > 1) {
      reject("ambiguous: multiple separator types present");
      continue;
    }
    if (occurrences > 1) {
      reject("ambiguous: separator occurs more than once");
      continue;
    }

    const std::size_t pos = line.find(*separator);
    std::string dialect =
        text::collapse_whitespace(strip_noise(line.substr(0, pos), config.noise_chars));
    std::string standard = text::collapse_whitespace(
        strip_noise(line.substr(pos + separator->size()), config.noise_chars));
    if (dialect.empty() || standard.empty()) {
      reject("empty form after cleaning");
      continue;
    }
    push_entry({std::move(dialect), std::move(standard), std::string(source_id)});
  }
  return result;
}

std::string csv_escape(std::string_view field) {
  const bool needs_quote = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quote) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string lexicon_to_csv(const std::vector<LexiconEntry>& entries) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& e : entries) {
    out += csv_escape(e.dialect_form);
    out += ',';
    out += csv_escape(e.standard_form);
    out += ',';
    out += csv_escape(e.source_id);
    out += '\n';
  }
  return out;
}

std::vector<LexiconEntry> lexicon_from_csv(const std::vector<std::string>& lines) {
  std::vector<LexiconEntry> entries;
  if (lines.empty()) return entries;
  if (lines.front() != kCsvHeader)
    throw Error("lexicon csv: unexpected header '" + lines.front() + "'");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = csv_split(lines[i]);
    if (fields.size() != 3)
      throw Error("lexicon csv row " + std::to_string(i + 1) + ": expected 3 fields");
    entries.push_back({fields[0], fields[1], fields[2]});
  }
  return entries;
}

void write_lexicon_csv_file(const std::filesystem::path& path,
                            const std::vector<LexiconEntry>& entries) {
  atomic_write(path, lexicon_to_csv(entries));
}

std::vector<LexiconEntry> read_lexicon_csv_file(const std::filesystem::path& path) {
  return lexicon_from_csv(read_lines(path));
}

}  // namespace dialectkit
