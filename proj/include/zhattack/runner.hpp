#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zhattack/search.hpp"

namespace zhattack {

struct CampaignConfig {
  AttackConfig attack;
  std::uint64_t campaign_seed = 0;  // deterministic dataset shuffle
  std::size_t limit = 0;            // 0 = whole dataset
  std::size_t workers = 1;
};

struct ResultRecord {
  std::size_t seed_id = 0;  // index into the source dataset
  std::string original_text;
  int label = -1;
  AttackOutcome outcome;
  std::size_t eligible_tokens = 0;
  std::optional<double> perturbation_pct;  // present iff Success
};

struct CampaignReport {
  std::size_t attempted = 0;
  std::size_t skipped = 0;
  std::size_t successes = 0;
  std::size_t failures = 0;
  std::optional<double> success_rate;          // percent; absent when no
                                               // non-skipped attempts
  std::optional<double> mean_perturbation_pct; // over successes
  double mean_queries = 0.0;                   // over non-skipped attempts
  std::map<std::string, std::size_t> constraint_rejections;
  AttackConfig config_echo;
  std::string aborted_error;  // non-empty when the campaign aborted early
};

std::pair<CampaignReport, std::vector<ResultRecord>> run_campaign(
    const LabeledDataset& dataset, Victim& victim, const CampaignConfig& config,
    const ResourceTables& resources, MlmClient* mlm, SentenceEncoder* encoder);

// Recomputes the aggregate report from persisted records; used by the
// `report` subcommand and the self-consistency checks.
CampaignReport compute_report(const std::vector<ResultRecord>& records,
                              const AttackConfig& config_echo);

struct AblationReport {
  CampaignReport without_similarity;  // stopword + repeat only
  CampaignReport with_similarity;     // stopword + repeat + similarity
};

// Same seeds and order, constraints {STM,RM} vs {STM,RM,similarity}.
AblationReport ablation_pair(const LabeledDataset& dataset, Victim& victim,
                             const CampaignConfig& base_config,
                             const ResourceTables& resources, MlmClient* mlm,
                             SentenceEncoder* encoder);

struct AdversarialTrainingReport {
  CampaignReport pre;
  CampaignReport post;
  std::size_t adversarial_examples = 0;
  std::optional<double> delta_pct;  // 100 * (post - pre) / pre
  bool no_adversarial_data = false;
};

struct AdversarialTrainingResult {
  AdversarialTrainingReport report;
  LinearTextModel base_model;
  LinearTextModel hardened_model;
};

// Train, attack n_attack training seeds, fine-tune on the successful
// adversarial texts with their original labels, then re-run the same eval
// campaign against both models.
AdversarialTrainingResult adversarial_training_pipeline(
    const LabeledDataset& train_set, const LabeledDataset& eval_set,
    const TrainConfig& victim_config, const TrainConfig& finetune_config,
    const CampaignConfig& attack_config, std::size_t n_attack,
    std::size_t n_eval, const ResourceTables& resources, MlmClient* mlm,
    SentenceEncoder* encoder);

// Writes up to n successful examples as TSV for blind annotation; the pair
// order is shuffled per row and the unblinding key goes to key_path.
// Returns the number of rows written.
std::size_t export_human_eval(const std::vector<ResultRecord>& records,
                              std::size_t n, std::uint64_t seed,
                              const std::string& path,
                              const std::string& key_path);

// JSONL / JSON persistence.
void write_results_jsonl(const std::vector<ResultRecord>& records,
                         const std::string& path);
std::vector<ResultRecord> read_results_jsonl(const std::string& path);
std::string report_to_json(const CampaignReport& report);
void write_report_json(const CampaignReport& report, const std::string& path);

std::string attack_config_to_json(const AttackConfig& config);
AttackConfig attack_config_from_json_string(const std::string& s);

// Reads a persisted report; used by the `report` subcommand to recover the
// config echo before recomputing aggregates from the JSONL records.
CampaignReport read_report_json(const std::string& path);

}  // namespace zhattack
