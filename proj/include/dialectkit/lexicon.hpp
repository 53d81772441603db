#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dialectkit/types.hpp"

namespace dialectkit {

struct IngestConfig {
  /// Literal separator candidates, tried against each raw line. A line is
  /// accepted only when exactly one candidate occurs exactly once.
  std::vector<std::string> separators;
  /// Characters stripped from both forms before whitespace collapsing.
  std::u32string noise_chars;
};

IngestConfig default_ingest_config();

struct RejectedEntry {
  std::string source_id;
  std::size_t line_no = 0;
  std::string line;
  std::string reason;
};

struct IngestResult {
  std::vector<LexiconEntry> entries;
  std::vector<RejectedEntry> rejects;
  std::size_t duplicates_dropped = 0;
};

/// Turns raw scraped dictionary lines into cleaned (dialect, standard) pairs.
/// Lines with zero or ambiguous separators are routed to the rejects list for
/// manual review. Input already in the lexicon CSV format (header
/// `dialect,standard,source`) is parsed as such, which makes ingestion
/// idempotent over its own output.
IngestResult ingest_lexicon(const std::vector<std::string>& raw_lines,
                            const IngestConfig& config, std::string_view source_id);

std::string lexicon_to_csv(const std::vector<LexiconEntry>& entries);
std::vector<LexiconEntry> lexicon_from_csv(const std::vector<std::string>& lines);

void write_lexicon_csv_file(const std::filesystem::path& path,
                            const std::vector<LexiconEntry>& entries);
std::vector<LexiconEntry> read_lexicon_csv_file(const std::filesystem::path& path);

/// RFC 4180 helpers shared by the lexicon and report writers.
std::string csv_escape(std::string_view field);
std::vector<std::string> csv_split(std::string_view line);

}  // namespace dialectkit
