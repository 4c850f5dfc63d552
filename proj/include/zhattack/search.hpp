#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zhattack/constraints.hpp"
#include "zhattack/transforms.hpp"
#include "zhattack/victim.hpp"

namespace zhattack {

struct AttackConfig {
  TransformConfig transform;
  ConstraintConfig constraints;
  std::size_t query_budget = 5000;
  // Literal Algorithm-1 behavior: an empty filtered candidate set ends the
  // whole search instead of moving to the next word.
  bool strict_algorithm1_halt = false;
  std::uint64_t rng_seed = 0;
  std::string unk = kDefaultUnk;
};

enum class AttackStatus { Success, Failed, Skipped, Error };

std::string to_string(AttackStatus status);

struct TraceStep {
  std::size_t token_index = 0;
  Candidate chosen;
  double score = 0.0;  // 1 - P(y_orig | candidate text)
};

struct AttackOutcome {
  AttackStatus status = AttackStatus::Failed;
  std::optional<std::string> adversarial_text;
  int y_orig = -1;
  int adv_label = -1;
  std::vector<std::size_t> perturbed_indices;
  std::size_t queries_used = 0;
  std::vector<TraceStep> trace;
  // candidates rejected per constraint name, across the whole search
  std::map<std::string, std::size_t> constraint_rejections;
  std::string error;
};

// Untargeted goal: the predicted label differs from y_orig. Argmax ties go
// to the smallest label index.
bool goal_met(const Prediction& pred, int y_orig);

// Eq.-style confidence-drop ranking: score(i) = 1 - P(y_orig | text with
// token i UNK'd), over eligible (non-stopword when `stopwords` is given)
// tokens, sorted descending, ties toward the smaller index.
std::vector<std::pair<std::size_t, double>> importance_scores(
    const SegmentedText& seg, Victim& victim, int y_orig,
    const StopwordSet* stopwords, const std::string& unk = kDefaultUnk);

// Greedy word-importance search. When gold_label is given and the victim
// already mispredicts the seed, the outcome is Skipped.
AttackOutcome greedy_attack(const SegmentedText& seg, Victim& victim,
                            const AttackConfig& config,
                            const ResourceTables& resources, MlmClient* mlm,
                            SentenceEncoder* encoder,
                            std::optional<int> gold_label = std::nullopt);

struct OracleResult {
  bool attackable = false;
  std::optional<std::string> witness;
  std::size_t nodes_visited = 0;
};

// Exhaustive search over every constraint-valid sequence of at most
// max_perturbed in-context substitutions; test oracle only. Throws when
// more than max_nodes texts would be visited.
OracleResult exhaustive_oracle(const SegmentedText& seg, Victim& victim,
                               const AttackConfig& config,
                               const ResourceTables& resources, MlmClient* mlm,
                               SentenceEncoder* encoder,
                               std::size_t max_perturbed,
                               std::size_t max_nodes = 100000);

}  // namespace zhattack
