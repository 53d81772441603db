#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dialectkit/align_stats.hpp"
#include "dialectkit/aligner.hpp"
#include "dialectkit/corpus.hpp"
#include "dialectkit/embedding.hpp"
#include "dialectkit/judge.hpp"
#include "dialectkit/manifest.hpp"
#include "dialectkit/metrics.hpp"
#include "dialectkit/prompt.hpp"
#include "dialectkit/similarity.hpp"
#include "dialectkit/symmetrize.hpp"
#include "dialectkit/text.hpp"
#include "dialectkit/vector_index.hpp"

namespace py = pybind11;
using namespace dialectkit;

namespace {

using PyLinks = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

TokenAlignment to_alignment(const PyLinks& links, std::uint32_t src_len,
                            std::uint32_t tgt_len) {
  TokenAlignment a;
  a.src_len = src_len;
  a.tgt_len = tgt_len;
  for (const auto& [s, t] : links) a.links.insert({s, t});
  return a;
}

PyLinks from_alignment(const TokenAlignment& a) {
  PyLinks out;
  for (const auto& l : a.links) out.push_back({l.src, l.tgt});
  return out;
}

SymmetrizationHeuristic parse_heuristic(const std::string& name) {
  const auto h = heuristic_from_string(name);
  if (!h) throw Error("unknown heuristic: " + name);
  return *h;
}

Direction parse_direction(const std::string& name) {
  if (name == "fwd" || name == "forward") return Direction::forward;
  if (name == "rev" || name == "reverse") return Direction::reverse;
  throw Error("unknown direction: " + name);
}

metrics::ScoreMode parse_mode(const std::string& mode) {
  if (mode == "corpus") return metrics::ScoreMode::corpus;
  if (mode == "sentence") return metrics::ScoreMode::sentence;
  throw Error("unknown mode: " + mode);
}

}  // namespace

PYBIND11_MODULE(dialectkit, m) {
  m.doc() = "Corpus construction, QC and evaluation for standard-to-dialect translation";
  m.attr("__version__") = std::string(kToolVersion);

  py::register_exception<Error>(m, "DialectkitError");

  // text
  m.def("nfc", &text::nfc, py::arg("text"), "Canonical (NFC) normalization");
  m.def("tokenize", &text::tokenize, py::arg("text"),
        "Whitespace tokens with punctuation split off");
  m.def("split_whitespace", &text::split_whitespace, py::arg("text"));

  // similarity
  m.def("similarity", &similarity, py::arg("a"), py::arg("b"),
        "Ratcliff/Obershelp ratio over Unicode scalars");

  // metrics
  m.def("bleu_sentence", &metrics::bleu_sentence, py::arg("hyp"), py::arg("ref"));
  m.def("chrf_sentence", &metrics::chrf_sentence, py::arg("hyp"), py::arg("ref"),
        py::arg("char_order") = 6, py::arg("word_order") = 2, py::arg("beta") = 2.0);
  m.def("ter_sentence", &metrics::ter_sentence, py::arg("hyp"), py::arg("ref"));
  m.def(
      "bleu",
      [](const std::vector<std::string>& h, const std::vector<std::string>& r,
         const std::string& mode) { return metrics::bleu(h, r, parse_mode(mode)); },
      py::arg("hyps"), py::arg("refs"), py::arg("mode") = "corpus");
  m.def(
      "chrfpp",
      [](const std::vector<std::string>& h, const std::vector<std::string>& r,
         const std::string& mode) { return metrics::chrfpp(h, r, parse_mode(mode)); },
      py::arg("hyps"), py::arg("refs"), py::arg("mode") = "corpus");
  m.def(
      "ter",
      [](const std::vector<std::string>& h, const std::vector<std::string>& r,
         const std::string& mode) { return metrics::ter(h, r, parse_mode(mode)); },
      py::arg("hyps"), py::arg("refs"), py::arg("mode") = "corpus");
  m.def(
      "evaluate_corpus",
      [](const std::vector<std::pair<std::string, std::string>>& pairs) {
        const auto r = metrics::evaluate_corpus(pairs);
        py::dict d;
        d["bleu"] = r.bleu;
        d["chrfpp"] = r.chrfpp;
        d["ter"] = r.ter;
        d["n_pairs"] = r.n_pairs;
        return d;
      },
      py::arg("hyp_ref_pairs"));

  // aligner
  py::class_<AlignmentModel>(m, "AlignmentModel")
      .def_static(
          "train",
          [](const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>&
                 corpus,
             const std::string& direction, double lam, double p0, int iterations) {
            std::vector<TokenizedPair> pairs;
            pairs.reserve(corpus.size());
            for (const auto& [s, t] : corpus) pairs.push_back({s, t});
            return AlignmentModel::train(pairs, parse_direction(direction),
                                         {lam, p0, iterations});
          },
          py::arg("corpus"), py::arg("direction") = "fwd", py::arg("lambda_") = 4.0,
          py::arg("p0") = 0.08, py::arg("iterations") = 5)
      .def(
          "viterbi",
          [](const AlignmentModel& model, const std::vector<std::string>& src,
             const std::vector<std::string>& tgt) {
            return from_alignment(model.viterbi({src, tgt}));
          },
          py::arg("src_tokens"), py::arg("tgt_tokens"))
      .def("translation_prob", &AlignmentModel::translation_prob, py::arg("cond"),
           py::arg("emitted"))
      .def_property_readonly("log_likelihoods", &AlignmentModel::log_likelihoods)
      .def_property_readonly("skipped_pairs", &AlignmentModel::skipped_pairs);

  m.def(
      "symmetrize",
      [](const PyLinks& forward, const PyLinks& backward, std::uint32_t src_len,
         std::uint32_t tgt_len, const std::string& heuristic) {
        return from_alignment(symmetrize(to_alignment(forward, src_len, tgt_len),
                                         to_alignment(backward, src_len, tgt_len),
                                         parse_heuristic(heuristic)));
      },
      py::arg("forward"), py::arg("backward"), py::arg("src_len"), py::arg("tgt_len"),
      py::arg("heuristic") = "grow-diag-final-and");

  m.def(
      "alignment_stats",
      [](const PyLinks& links, std::uint32_t src_len, std::uint32_t tgt_len) {
        const auto s = alignment_stats(to_alignment(links, src_len, tgt_len));
        py::dict d;
        d["u_src"] = s.u_src;
        d["u_tgt"] = s.u_tgt;
        d["x"] = s.x;
        return d;
      },
      py::arg("links"), py::arg("src_len"), py::arg("tgt_len"));

  // retrieval
  py::class_<VectorIndex>(m, "VectorIndex")
      .def_static(
          "build",
          [](const std::vector<std::string>& sentences) {
            HashedNgramEmbedder embedder;
            return VectorIndex::build(sentences, embedder);
          },
          py::arg("sentences"), "Build with the deterministic local embedder")
      .def(
          "retrieve",
          [](const VectorIndex& index, const std::string& query, std::size_t k) {
            HashedNgramEmbedder embedder;
            py::list out;
            for (const auto& hit : index.retrieve(query, embedder, k)) {
              py::dict d;
              d["id"] = hit.entry.id;
              d["text"] = hit.entry.text;
              d["similarity"] = hit.similarity;
              out.append(d);
            }
            return out;
          },
          py::arg("query"), py::arg("k") = 3)
      .def("save", [](const VectorIndex& i, const std::string& p) { i.save(p); })
      .def_static("load", [](const std::string& p) { return VectorIndex::load(p); })
      .def_property_readonly("size", &VectorIndex::size)
      .def_property_readonly("dimension", &VectorIndex::dimension);

  m.def(
      "build_prompt",
      [](const std::string& template_text, const std::vector<std::string>& examples,
         const std::string& source) { return PromptTemplate(template_text).build(examples, source); },
      py::arg("template_text"), py::arg("examples"), py::arg("source"));

  // judge
  m.def("build_judge_prompt", &judge::build_judge_prompt, py::arg("source"),
        py::arg("hypothesis"), py::arg("reference"));
  m.def(
      "parse_judge_response",
      [](const std::string& text) {
        const auto s = judge::parse_judge_response(text);
        py::dict d;
        d["fluency"] = s.fluency;
        d["adequacy"] = s.adequacy;
        d["dialect"] = s.dialect;
        return d;
      },
      py::arg("text"));

  // corpus split
  m.def(
      "split_corpus",
      [](const std::vector<std::tuple<std::string, std::string, std::string, std::string>>&
             pairs,
         std::tuple<double, double, double> ratios, std::uint64_t seed) {
        std::vector<SentencePair> input;
        for (const auto& [id, src, tgt, origin] : pairs) {
          const auto o = origin_from_string(origin);
          if (!o) throw Error("origin must be 'human' or 'synthetic', got: " + origin);
          input.push_back({id, src, tgt, *o, {}, {}, {}});
        }
        const auto split = split_corpus(
            input, {std::get<0>(ratios), std::get<1>(ratios), std::get<2>(ratios)}, seed);
        auto pack = [](const std::vector<SentencePair>& part) {
          py::list out;
          for (const auto& p : part)
            out.append(py::make_tuple(p.id, p.source_text, p.target_text,
                                      std::string(to_string(p.origin))));
          return out;
        };
        py::dict d;
        d["train"] = pack(split.train);
        d["validation"] = pack(split.validation);
        d["test"] = pack(split.test);
        return d;
      },
      py::arg("pairs"), py::arg("ratios") = std::make_tuple(0.8, 0.1, 0.1),
      py::arg("seed") = 13);
}
