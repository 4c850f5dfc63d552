#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zhattack/resources.hpp"
#include "zhattack/text_core.hpp"

namespace zhattack {

struct ConstraintConfig {
  bool use_stopword = true;
  bool use_repeat = true;
  bool use_similarity = true;
  double similarity_threshold = 0.9;
  // Paired tasks: similarity over the whole flattened text (all fields).
  bool similarity_on_concatenation = true;
};

struct PerturbationHistory {
  std::set<std::size_t> modified_indices;
};

// text -> fixed-dimension vector; must be deterministic.
class SentenceEncoder {
 public:
  virtual ~SentenceEncoder() = default;
  virtual std::vector<double> encode(const std::string& text) = 0;
};

// Mean of the static embedding vectors of the segmented tokens; OOV tokens
// contribute the zero vector.
class MeanEmbeddingEncoder : public SentenceEncoder {
 public:
  MeanEmbeddingEncoder(const EmbeddingTable& table, const Lexicon& lexicon)
      : table_(table), lexicon_(lexicon) {}

  std::vector<double> encode(const std::string& text) override;

 private:
  const EmbeddingTable& table_;
  const Lexicon& lexicon_;
};

// Client for the POST /encode JSON contract.
class HttpEncoderClient : public SentenceEncoder {
 public:
  HttpEncoderClient(const std::string& host, int port);
  ~HttpEncoderClient() override;
  std::vector<double> encode(const std::string& text) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

double cosine_similarity(const std::vector<double>& a,
                         const std::vector<double>& b);

bool stopword_ok(const SegmentedText& seg, std::size_t i,
                 const StopwordSet& stopwords);

bool repeat_ok(const PerturbationHistory& history, std::size_t i);

// (pass, cosine). Encoder failures propagate as exceptions; similarity is
// never silently skipped.
std::pair<bool, double> similarity_ok(const std::string& original,
                                      const std::string& perturbed,
                                      SentenceEncoder& encoder,
                                      double threshold);

struct ConstraintVerdict {
  bool pass = true;
  std::string violated;     // first failed constraint name, empty on pass
  double similarity = 1.0;  // meaningful only when similarity was evaluated
};

// Enabled constraints evaluated cheap to expensive: stopword, repeat,
// similarity. Short-circuits on the first failure.
ConstraintVerdict check_all(const SegmentedText& x, const SegmentedText& x_prime,
                            std::size_t i, const PerturbationHistory& history,
                            const ConstraintConfig& config,
                            const StopwordSet& stopwords,
                            SentenceEncoder* encoder);

}  // namespace zhattack
