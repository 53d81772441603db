#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dialectkit/types.hpp"

namespace dialectkit {

// Corpus file format: JSONL, one SentencePair per line. Keys: id, src, tgt,
// origin, optional source_doc, qc {u_src,u_tgt,x}, sim.

nlohmann::json pair_to_json(const SentencePair& pair);
SentencePair pair_from_json(const nlohmann::json& j);

std::string serialize_corpus(const std::vector<SentencePair>& pairs);
std::vector<SentencePair> read_corpus(std::istream& in);
std::vector<SentencePair> read_corpus_file(const std::filesystem::path& path);
void write_corpus_file(const std::filesystem::path& path,
                       const std::vector<SentencePair>& pairs);

/// Same record shape plus a trailing "reason" field; used for rejected pairs.
void write_rejected_file(const std::filesystem::path& path,
                         const std::vector<std::pair<SentencePair, std::string>>& rejected);

std::vector<std::string> read_lines(const std::filesystem::path& path);

}  // namespace dialectkit
