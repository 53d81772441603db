#include "dialectkit/jsonl.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "dialectkit/manifest.hpp"
#include "dialectkit/text.hpp"

namespace dialectkit {

using nlohmann::json;

json pair_to_json(const SentencePair& pair) {
  json j;
  j["id"] = pair.id;
  j["src"] = pair.source_text;
  j["tgt"] = pair.target_text;
  j["origin"] = std::string(to_string(pair.origin));
  if (pair.source_doc) j["source_doc"] = *pair.source_doc;
  if (pair.qc)
    j["qc"] = {{"u_src", pair.qc->u_src}, {"u_tgt", pair.qc->u_tgt}, {"x", pair.qc->x}};
  if (pair.similarity) j["sim"] = *pair.similarity;
  return j;
}

SentencePair pair_from_json(const json& j) {
  if (!j.is_object()) throw Error("corpus record is not a JSON object");
  SentencePair pair;
  pair.id = j.at("id").get<std::string>();
  pair.source_text = j.at("src").get<std::string>();
  pair.target_text = j.at("tgt").get<std::string>();
  if (pair.id.empty()) throw Error("corpus record has an empty id");
  if (text::collapse_whitespace(pair.source_text).empty() ||
      text::collapse_whitespace(pair.target_text).empty())
    throw Error("corpus record " + pair.id + " has an empty text side");
  const auto origin = origin_from_string(j.at("origin").get<std::string>());
  if (!origin) throw Error("invalid origin in record id=" + pair.id);
  pair.origin = *origin;
  if (j.contains("source_doc")) pair.source_doc = j["source_doc"].get<std::string>();
  if (j.contains("qc")) {
    const auto& q = j["qc"];
    pair.qc = AlignmentStats{q.at("u_src").get<double>(), q.at("u_tgt").get<double>(),
                             q.at("x").get<double>()};
  }
  if (j.contains("sim")) pair.similarity = j["sim"].get<double>();
  return pair;
}

std::string serialize_corpus(const std::vector<SentencePair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    out += pair_to_json(p).dump();
    out += '\n';
  }
  return out;
}

std::vector<SentencePair> read_corpus(std::istream& in) {
  std::vector<SentencePair> pairs;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
    pairs.push_back(pair_from_json(j));
    if (!ids.insert(pairs.back().id).second)
      throw Error("corpus line " + std::to_string(line_no) + ": duplicate id " +
                  pairs.back().id);
  }
  return pairs;
}

std::vector<SentencePair> read_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus file: " + path.string());
  return read_corpus(in);
}

void write_corpus_file(const std::filesystem::path& path,
                       const std::vector<SentencePair>& pairs) {
  atomic_write(path, serialize_corpus(pairs));
}

void write_rejected_file(const std::filesystem::path& path,
                         const std::vector<std::pair<SentencePair, std::string>>& rejected) {
  std::string out;
  for (const auto& [pair, reason] : rejected) {
    json j = pair_to_json(pair);
    j["reason"] = reason;
    out += j.dump();
    out += '\n';
  }
  atomic_write(path, out);
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace dialectkit
