// Python bindings for the main operations: segmentation, candidate
// generation, victim training and the greedy attack.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zhattack/runner.hpp"

namespace py = pybind11;
using namespace zhattack;

namespace {

AttackConfig make_attack_config(const std::string& transformation,
                                bool use_stopword, bool use_repeat,
                                bool use_similarity, double threshold,
                                std::size_t query_budget, bool strict_halt,
                                std::uint64_t rng_seed) {
  AttackConfig c;
  c.transform.kind = transform_kind_from_string(transformation);
  c.constraints.use_stopword = use_stopword;
  c.constraints.use_repeat = use_repeat;
  c.constraints.use_similarity = use_similarity;
  c.constraints.similarity_threshold = threshold;
  c.query_budget = query_budget;
  c.strict_algorithm1_halt = strict_halt;
  c.rng_seed = rng_seed;
  return c;
}

}  // namespace

PYBIND11_MODULE(_zhattack, m) {
  m.doc() = "Word-substitution adversarial attacks on Chinese text classifiers";

  py::class_<Token>(m, "Token")
      .def_readonly("surface", &Token::surface)
      .def_readonly("char_start", &Token::char_start)
      .def_readonly("char_end", &Token::char_end)
      .def_readonly("is_lexicon_word", &Token::is_lexicon_word)
      .def("__repr__", [](const Token& t) {
        return "Token('" + t.surface + "', " + std::to_string(t.char_start) +
               ", " + std::to_string(t.char_end) + ")";
      });

  py::class_<SegmentedText>(m, "SegmentedText")
      .def_readonly("original", &SegmentedText::original)
      .def_readonly("tokens", &SegmentedText::tokens)
      .def("surfaces", [](const SegmentedText& s) {
        std::vector<std::string> out;
        for (const auto& t : s.tokens) out.push_back(t.surface);
        return out;
      });

  py::class_<ResourceTables>(m, "ResourceTables")
      .def_static("load_dir", &ResourceTables::load_dir, py::arg("dir"));

  py::class_<Candidate>(m, "Candidate")
      .def_readonly("token_index", &Candidate::token_index)
      .def_readonly("replacement", &Candidate::replacement)
      .def_property_readonly(
          "kind", [](const Candidate& c) { return to_string(c.kind); })
      .def_readonly("generator_score", &Candidate::generator_score);

  py::class_<Prediction>(m, "Prediction")
      .def_readonly("probs", &Prediction::probs)
      .def("argmax", &Prediction::argmax);

  py::class_<LabeledDataset>(m, "LabeledDataset")
      .def_static("load_tsv", &LabeledDataset::load_tsv, py::arg("path"))
      .def_readonly("records", &LabeledDataset::records)
      .def_readonly("label_names", &LabeledDataset::label_names)
      .def("__len__", &LabeledDataset::size);

  py::class_<LinearTextModel>(m, "LinearTextModel")
      .def_static("load_json", &LinearTextModel::load_json, py::arg("path"))
      .def("save_json", &LinearTextModel::save_json, py::arg("path"))
      .def("predict", &LinearTextModel::predict, py::arg("texts"))
      .def_property_readonly("label_names", &LinearTextModel::label_names);

  m.def(
      "train_victim",
      [](const LabeledDataset& ds, double lr, int epochs, double l2,
         std::uint64_t seed) {
        return train(ds, TrainConfig{lr, epochs, l2, seed, 1});
      },
      py::arg("dataset"), py::arg("learning_rate") = 0.1,
      py::arg("epochs") = 30, py::arg("l2") = 1e-4, py::arg("seed") = 0);

  m.def("segment", &segment, py::arg("text"), py::arg("lexicon"));
  m.def(
      "segment_with", [](const std::string& text, const ResourceTables& r) {
        return segment(text, r.lexicon);
      },
      py::arg("text"), py::arg("resources"));

  m.def(
      "candidates",
      [](const SegmentedText& seg, std::size_t i, const std::string& kind,
         const ResourceTables& resources, std::uint64_t rng_seed, int k) {
        TransformConfig tc;
        tc.kind = transform_kind_from_string(kind);
        if (k > 0) tc.hownet_k = tc.mlm_k = tc.homophone_k = tc.morphonym_k = k;
        StubMlmClient mlm(resources.lexicon, resources.embeddings);
        return generate_candidates(seg, i, tc, resources, &mlm, rng_seed);
      },
      py::arg("seg"), py::arg("token_index"), py::arg("kind"),
      py::arg("resources"), py::arg("rng_seed") = 0, py::arg("k") = 0);

  m.def(
      "attack",
      [](const std::string& text, const LinearTextModel& model,
         const ResourceTables& resources, const std::string& transformation,
         bool use_stopword, bool use_repeat, bool use_similarity,
         double threshold, std::size_t query_budget, bool strict_halt,
         std::uint64_t rng_seed, std::optional<int> gold_label) {
        AttackConfig cfg = make_attack_config(
            transformation, use_stopword, use_repeat, use_similarity, threshold,
            query_budget, strict_halt, rng_seed);
        InProcessVictim victim(model);
        StubMlmClient mlm(resources.lexicon, resources.embeddings);
        MeanEmbeddingEncoder encoder(resources.embeddings, resources.lexicon);
        SegmentedText seg = segment(text, resources.lexicon);
        AttackOutcome o = greedy_attack(seg, victim, cfg, resources, &mlm,
                                        &encoder, gold_label);
        py::dict d;
        d["status"] = to_string(o.status);
        d["adversarial_text"] =
            o.adversarial_text ? py::object(py::str(*o.adversarial_text))
                               : py::object(py::none());
        d["y_orig"] = o.y_orig;
        d["perturbed_indices"] = o.perturbed_indices;
        d["queries_used"] = o.queries_used;
        return d;
      },
      py::arg("text"), py::arg("model"), py::arg("resources"),
      py::arg("transformation") = "composite", py::arg("use_stopword") = true,
      py::arg("use_repeat") = true, py::arg("use_similarity") = true,
      py::arg("similarity_threshold") = 0.9, py::arg("query_budget") = 5000,
      py::arg("strict_halt") = false, py::arg("rng_seed") = 0,
      py::arg("gold_label") = std::nullopt);
}
