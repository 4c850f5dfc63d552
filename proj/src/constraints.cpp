#include "zhattack/constraints.hpp"

#include <cmath>
#include <stdexcept>

namespace zhattack {

std::vector<double> MeanEmbeddingEncoder::encode(const std::string& text) {
  std::vector<double> acc(table_.dim, 0.0);
  SegmentedText seg = segment(text, lexicon_);
  if (seg.tokens.empty()) return acc;
  for (const auto& tok : seg.tokens) {
    if (const auto* vec = table_.find(tok.surface))
      for (std::size_t d = 0; d < table_.dim; ++d) acc[d] += (*vec)[d];
  }
  for (double& v : acc) v /= static_cast<double>(seg.tokens.size());
  return acc;
}

double cosine_similarity(const std::vector<double>& a,
                         const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("cosine: dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

bool stopword_ok(const SegmentedText& seg, std::size_t i,
                 const StopwordSet& stopwords) {
  if (i >= seg.tokens.size())
    throw std::out_of_range("token index out of range");
  return !stopwords.contains(seg.tokens[i].surface);
}

bool repeat_ok(const PerturbationHistory& history, std::size_t i) {
  return history.modified_indices.count(i) == 0;
}

std::pair<bool, double> similarity_ok(const std::string& original,
                                      const std::string& perturbed,
                                      SentenceEncoder& encoder,
                                      double threshold) {
  double sim =
      cosine_similarity(encoder.encode(original), encoder.encode(perturbed));
  return {sim >= threshold, sim};
}

ConstraintVerdict check_all(const SegmentedText& x, const SegmentedText& x_prime,
                            std::size_t i, const PerturbationHistory& history,
                            const ConstraintConfig& config,
                            const StopwordSet& stopwords,
                            SentenceEncoder* encoder) {
  ConstraintVerdict v;
  if (config.use_stopword && !stopword_ok(x, i, stopwords)) {
    v.pass = false;
    v.violated = "stopword";
    return v;
  }
  if (config.use_repeat && !repeat_ok(history, i)) {
    v.pass = false;
    v.violated = "repeat";
    return v;
  }
  if (config.use_similarity) {
    if (!encoder)
      throw std::runtime_error("similarity constraint enabled but no encoder");
    auto [ok, sim] = similarity_ok(x.original, x_prime.original, *encoder,
                                   config.similarity_threshold);
    v.similarity = sim;
    if (!ok) {
      v.pass = false;
      v.violated = "similarity";
      return v;
    }
  }
  return v;
}

}  // namespace zhattack
