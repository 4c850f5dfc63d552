#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "zhattack/resources.hpp"
#include "zhattack/text_core.hpp"

namespace zhattack {

enum class TransformKind { HowNet, Mlm, Homophone, Morphonym, Composite };

std::string to_string(TransformKind kind);
TransformKind transform_kind_from_string(const std::string& s);

// A proposed replacement for one token.
struct Candidate {
  std::size_t token_index = 0;
  std::string replacement;
  TransformKind kind = TransformKind::HowNet;
  double generator_score = 0.0;  // similarity, MLM probability, or 1/rank
};

struct MlmFill {
  std::string token;
  double prob = 0.0;
};

// Transport-level MLM failure: the transformation is unavailable but the
// attack may continue with the other transforms. Malformed responses are
// plain runtime_errors and abort the attack.
struct MlmUnavailableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Masked-fill contract: text contains one "<mask>" span; implementations
// return at most k fills with probabilities in descending order.
class MlmClient {
 public:
  virtual ~MlmClient() = default;
  virtual std::vector<MlmFill> fill(const std::string& masked_text, int k) = 0;
};

// Deterministic stand-in for a contextual masked language model: candidate
// fills are lexicon words ranked by embedding similarity to the mean
// embedding of the unmasked context (frequency breaks ties), so the
// suggestions lean toward words that plausibly fit the sentence.
class StubMlmClient : public MlmClient {
 public:
  StubMlmClient(const Lexicon& lexicon, const EmbeddingTable& embeddings);
  std::vector<MlmFill> fill(const std::string& masked_text, int k) override;

 private:
  const Lexicon& lexicon_;
  const EmbeddingTable& embeddings_;
  std::vector<std::pair<std::string, std::int64_t>> by_freq_;
};

class HttpMlmClient : public MlmClient {
 public:
  HttpMlmClient(const std::string& host, int port);
  ~HttpMlmClient() override;
  std::vector<MlmFill> fill(const std::string& masked_text, int k) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct TransformConfig {
  TransformKind kind = TransformKind::Composite;
  int hownet_k = 5;
  int mlm_k = 10;
  int homophone_k = 5;
  int morphonym_k = 5;
};

// Up to k sememe-lexicon words with the highest Jaccard sememe similarity
// (> 0) to token i, descending; ties by lexicon frequency desc, then
// sememe-table order.
std::vector<Candidate> hownet_candidates(const SegmentedText& seg,
                                         std::size_t i, int k,
                                         const SememeLexicon& sememes,
                                         const Lexicon& lexicon);

// Client fills for token i masked; fills equal to the original surface are
// dropped and the list is truncated to k.
std::vector<Candidate> mlm_candidates(const SegmentedText& seg, std::size_t i,
                                      int k, MlmClient& client);

// Single-character swaps drawn without replacement from the homophone
// pools of every character position, seeded by (rng_seed, text, i).
std::vector<Candidate> homophone_candidates(const SegmentedText& seg,
                                            std::size_t i, int k,
                                            const PinyinTable& table,
                                            std::uint64_t rng_seed);

std::vector<Candidate> morphonym_candidates(const SegmentedText& seg,
                                            std::size_t i, int k,
                                            const ComponentTable& table,
                                            std::uint64_t rng_seed);

// Concatenation [HowNet, MLM, Homophone, Morphonym], deduplicated on the
// replacement string keeping the first occurrence. A null mlm skips the
// MLM leg.
std::vector<Candidate> composite_candidates(const SegmentedText& seg,
                                            std::size_t i,
                                            const TransformConfig& config,
                                            const ResourceTables& resources,
                                            MlmClient* mlm,
                                            std::uint64_t rng_seed);

// Dispatch on config.kind; Composite goes through composite_candidates.
std::vector<Candidate> generate_candidates(const SegmentedText& seg,
                                           std::size_t i,
                                           const TransformConfig& config,
                                           const ResourceTables& resources,
                                           MlmClient* mlm,
                                           std::uint64_t rng_seed);

}  // namespace zhattack
