#include "dialectkit/aligner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "dialectkit/manifest.hpp"
#include "dialectkit/text.hpp"

namespace dialectkit {

namespace {

constexpr const char* kNullToken = "";

struct DirectedPair {
  const std::vector<std::string>* cond;
  const std::vector<std::string>* emit;
};

std::vector<DirectedPair> orient(const std::vector<TokenizedPair>& corpus, Direction dir) {
  std::vector<DirectedPair> out;
  out.reserve(corpus.size());
  for (const auto& p : corpus) {
    if (dir == Direction::forward)
      out.push_back({&p.src, &p.tgt});
    else
      out.push_back({&p.tgt, &p.src});
  }
  return out;
}

}  // namespace

std::vector<double> diagonal_prior(std::size_t emit_pos, std::size_t emit_len,
                                   std::size_t cond_len, double lambda) {
  std::vector<double> logits(cond_len);
  double max_logit = -std::numeric_limits<double>::infinity();
  const double jm = static_cast<double>(emit_pos) / static_cast<double>(emit_len);
  for (std::size_t i = 1; i <= cond_len; ++i) {
    const double in = static_cast<double>(i) / static_cast<double>(cond_len);
    logits[i - 1] = -lambda * std::abs(jm - in);
    max_logit = std::max(max_logit, logits[i - 1]);
  }
  double z = 0.0;
  for (double& l : logits) {
    l = std::exp(l - max_logit);
    z += l;
  }
  for (double& l : logits) l /= z;
  return logits;
}

AlignmentModel AlignmentModel::train(const std::vector<TokenizedPair>& corpus,
                                     Direction direction, const AlignerOptions& options) {
  if (corpus.empty()) throw Error("train_alignment: empty corpus");
  if (options.iterations < 1) throw Error("train_alignment: iterations must be >= 1");
  if (options.lambda <= 0) throw Error("train_alignment: lambda must be positive");
  if (options.p0 < 0 || options.p0 >= 1) throw Error("train_alignment: p0 must be in [0,1)");

  AlignmentModel model;
  model.direction_ = direction;
  model.options_ = options;

  const auto pairs = orient(corpus, direction);

  // Uniform init over co-occurring emitted tokens; null co-occurs with all.
  std::unordered_map<std::string, std::unordered_set<std::string>> cooc;
  std::unordered_set<std::string> emit_vocab;
  std::size_t usable = 0;
  for (const auto& p : pairs) {
    if (p.cond->empty() || p.emit->empty()) {
      ++model.skipped_pairs_;
      continue;
    }
    ++usable;
    for (const auto& f : *p.emit) {
      emit_vocab.insert(f);
      cooc[kNullToken].insert(f);
      for (const auto& e : *p.cond) cooc[e].insert(f);
    }
  }
  if (usable == 0) throw Error("train_alignment: no usable pairs (all have an empty side)");

  for (const auto& [e, fs] : cooc) {
    const double p = 1.0 / static_cast<double>(fs.size());
    auto& row = model.table_[e];
    for (const auto& f : fs) row[f] = p;
  }
  model.fallback_prob_ = 1.0 / static_cast<double>(emit_vocab.size());

  const double p0 = options.p0;
  for (int iter = 0; iter < options.iterations; ++iter) {
    Table counts;
    double log_likelihood = 0.0;
    for (const auto& p : pairs) {
      const auto& cond = *p.cond;
      const auto& emit = *p.emit;
      if (cond.empty() || emit.empty()) continue;
      const std::size_t n = cond.size();
      const std::size_t m = emit.size();
      for (std::size_t j = 0; j < m; ++j) {
        const std::string& f = emit[j];
        const auto prior = diagonal_prior(j + 1, m, n, options.lambda);
        std::vector<double> posteriors(n + 1);
        posteriors[0] = p0 * model.translation_prob(kNullToken, f);
        double sum = posteriors[0];
        for (std::size_t i = 0; i < n; ++i) {
          posteriors[i + 1] = (1.0 - p0) * prior[i] * model.translation_prob(cond[i], f);
          sum += posteriors[i + 1];
        }
        log_likelihood += std::log(sum);
        counts[kNullToken][f] += posteriors[0] / sum;
        for (std::size_t i = 0; i < n; ++i) counts[cond[i]][f] += posteriors[i + 1] / sum;
      }
    }
    model.log_likelihoods_.push_back(log_likelihood);

    for (auto& [e, row] : counts) {
      double total = 0.0;
      for (const auto& [f, c] : row) total += c;
      if (total <= 0) continue;
      auto& dest = model.table_[e];
      for (const auto& [f, c] : row) dest[f] = c / total;
    }
  }
  return model;
}

double AlignmentModel::translation_prob(const std::string& cond,
                                        const std::string& emitted) const {
  const auto row = table_.find(cond);
  if (row == table_.end()) return fallback_prob_;
  const auto it = row->second.find(emitted);
  if (it == row->second.end()) return fallback_prob_;
  return it->second;
}

TokenAlignment AlignmentModel::viterbi(const TokenizedPair& pair) const {
  const bool fwd = direction_ == Direction::forward;
  const auto& cond = fwd ? pair.src : pair.tgt;
  const auto& emit = fwd ? pair.tgt : pair.src;

  TokenAlignment alignment;
  alignment.src_len = static_cast<std::uint32_t>(pair.src.size());
  alignment.tgt_len = static_cast<std::uint32_t>(pair.tgt.size());
  if (cond.empty() || emit.empty()) return alignment;

  const std::size_t n = cond.size();
  const std::size_t m = emit.size();
  for (std::size_t j = 0; j < m; ++j) {
    const std::string& f = emit[j];
    const auto prior = diagonal_prior(j + 1, m, n, options_.lambda);
    // Null is considered first, so a conditioning token must strictly beat it.
    double best = options_.p0 * translation_prob(kNullToken, f);
    std::ptrdiff_t best_i = -1;
    for (std::size_t i = 0; i < n; ++i) {
      const double p = (1.0 - options_.p0) * prior[i] * translation_prob(cond[i], f);
      if (p > best) {
        best = p;
        best_i = static_cast<std::ptrdiff_t>(i);
      }
    }
    if (best_i >= 0) {
      const auto ci = static_cast<std::uint32_t>(best_i);
      const auto ei = static_cast<std::uint32_t>(j);
      alignment.links.insert(fwd ? Link{ci, ei} : Link{ei, ci});
    }
  }
  return alignment;
}

nlohmann::json AlignmentModel::to_json() const {
  nlohmann::json j;
  j["direction"] = direction_ == Direction::forward ? "fwd" : "rev";
  j["lambda"] = options_.lambda;
  j["p0"] = options_.p0;
  j["iterations"] = options_.iterations;
  j["fallback_prob"] = fallback_prob_;
  j["log_likelihoods"] = log_likelihoods_;
  j["skipped_pairs"] = skipped_pairs_;
  nlohmann::json table = nlohmann::json::object();
  for (const auto& [e, row] : table_) {
    nlohmann::json r = nlohmann::json::object();
    for (const auto& [f, p] : row) r[f] = p;
    table[e] = std::move(r);
  }
  j["translation"] = std::move(table);
  return j;
}

AlignmentModel AlignmentModel::from_json(const nlohmann::json& j) {
  AlignmentModel model;
  model.direction_ =
      j.at("direction").get<std::string>() == "fwd" ? Direction::forward : Direction::reverse;
  model.options_.lambda = j.at("lambda").get<double>();
  model.options_.p0 = j.at("p0").get<double>();
  model.options_.iterations = j.at("iterations").get<int>();
  model.fallback_prob_ = j.at("fallback_prob").get<double>();
  model.log_likelihoods_ = j.at("log_likelihoods").get<std::vector<double>>();
  model.skipped_pairs_ = j.at("skipped_pairs").get<std::size_t>();
  for (const auto& [e, row] : j.at("translation").items())
    for (const auto& [f, p] : row.items()) model.table_[e][f] = p.get<double>();
  return model;
}

BidirectionalModel BidirectionalModel::train(const std::vector<TokenizedPair>& corpus,
                                             const AlignerOptions& options) {
  return {AlignmentModel::train(corpus, Direction::forward, options),
          AlignmentModel::train(corpus, Direction::reverse, options)};
}

nlohmann::json BidirectionalModel::to_json() const {
  return {{"forward", forward.to_json()}, {"reverse", reverse.to_json()}};
}

BidirectionalModel BidirectionalModel::from_json(const nlohmann::json& j) {
  return {AlignmentModel::from_json(j.at("forward")),
          AlignmentModel::from_json(j.at("reverse"))};
}

void BidirectionalModel::save(const std::filesystem::path& path) const {
  atomic_write(path, to_json().dump());
}

BidirectionalModel BidirectionalModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file: " + path.string());
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

TokenizedPair tokenize_pair(const SentencePair& pair) {
  return {text::tokenize(pair.source_text), text::tokenize(pair.target_text)};
}

std::string format_links(const TokenAlignment& alignment) {
  std::string out;
  for (const auto& link : alignment.links) {
    if (!out.empty()) out += ' ';
    out += std::to_string(link.src);
    out += '-';
    out += std::to_string(link.tgt);
  }
  return out;
}

TokenAlignment parse_links(std::string_view line, std::uint32_t src_len,
                           std::uint32_t tgt_len) {
  TokenAlignment alignment;
  alignment.src_len = src_len;
  alignment.tgt_len = tgt_len;
  std::istringstream in{std::string(line)};
  std::string item;
  while (in >> item) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw Error("bad link token: " + item);
    const auto s = static_cast<std::uint32_t>(std::stoul(item.substr(0, dash)));
    const auto t = static_cast<std::uint32_t>(std::stoul(item.substr(dash + 1)));
    if (s >= src_len || t >= tgt_len) throw Error("link out of range: " + item);
    alignment.links.insert({s, t});
  }
  return alignment;
}

}  // namespace dialectkit
