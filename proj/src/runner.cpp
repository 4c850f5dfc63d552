#include "zhattack/runner.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "zhattack/rng.hpp"

namespace zhattack {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json constraint_config_json(const ConstraintConfig& c) {
  return {{"use_stopword", c.use_stopword},
          {"use_repeat", c.use_repeat},
          {"use_similarity", c.use_similarity},
          {"similarity_threshold", c.similarity_threshold},
          {"similarity_on_concatenation", c.similarity_on_concatenation}};
}

ordered_json attack_config_json(const AttackConfig& a) {
  return {{"transformation", to_string(a.transform.kind)},
          {"hownet_k", a.transform.hownet_k},
          {"mlm_k", a.transform.mlm_k},
          {"homophone_k", a.transform.homophone_k},
          {"morphonym_k", a.transform.morphonym_k},
          {"constraints", constraint_config_json(a.constraints)},
          {"query_budget", a.query_budget},
          {"strict_algorithm1_halt", a.strict_algorithm1_halt},
          {"rng_seed", a.rng_seed},
          {"unk", a.unk}};
}

AttackConfig attack_config_from_json(const ordered_json& j) {
  AttackConfig a;
  a.transform.kind = transform_kind_from_string(j.at("transformation"));
  a.transform.hownet_k = j.at("hownet_k");
  a.transform.mlm_k = j.at("mlm_k");
  a.transform.homophone_k = j.at("homophone_k");
  a.transform.morphonym_k = j.at("morphonym_k");
  const auto& c = j.at("constraints");
  a.constraints.use_stopword = c.at("use_stopword");
  a.constraints.use_repeat = c.at("use_repeat");
  a.constraints.use_similarity = c.at("use_similarity");
  a.constraints.similarity_threshold = c.at("similarity_threshold");
  a.constraints.similarity_on_concatenation = c.at("similarity_on_concatenation");
  a.query_budget = j.at("query_budget");
  a.strict_algorithm1_halt = j.at("strict_algorithm1_halt");
  a.rng_seed = j.at("rng_seed");
  a.unk = j.at("unk");
  return a;
}

ordered_json outcome_json(const AttackOutcome& o) {
  ordered_json trace = ordered_json::array();
  for (const auto& step : o.trace)
    trace.push_back({{"token_index", step.token_index},
                     {"replacement", step.chosen.replacement},
                     {"kind", to_string(step.chosen.kind)},
                     {"generator_score", step.chosen.generator_score},
                     {"score", step.score}});
  ordered_json rej = ordered_json::object();
  for (const auto& [name, n] : o.constraint_rejections) rej[name] = n;
  ordered_json j = {{"status", to_string(o.status)},
                    {"y_orig", o.y_orig},
                    {"adv_label", o.adv_label},
                    {"perturbed_indices", o.perturbed_indices},
                    {"queries_used", o.queries_used},
                    {"trace", trace},
                    {"constraint_rejections", rej}};
  if (o.adversarial_text) j["adversarial_text"] = *o.adversarial_text;
  if (!o.error.empty()) j["error"] = o.error;
  return j;
}

AttackStatus status_from_string(const std::string& s) {
  if (s == "success") return AttackStatus::Success;
  if (s == "failed") return AttackStatus::Failed;
  if (s == "skipped") return AttackStatus::Skipped;
  if (s == "error") return AttackStatus::Error;
  throw std::invalid_argument("unknown attack status '" + s + "'");
}

AttackOutcome outcome_from_json(const ordered_json& j) {
  AttackOutcome o;
  o.status = status_from_string(j.at("status"));
  o.y_orig = j.at("y_orig");
  o.adv_label = j.at("adv_label");
  o.perturbed_indices = j.at("perturbed_indices").get<std::vector<std::size_t>>();
  o.queries_used = j.at("queries_used");
  for (const auto& step : j.at("trace")) {
    TraceStep t;
    t.token_index = step.at("token_index");
    t.chosen.token_index = t.token_index;
    t.chosen.replacement = step.at("replacement");
    t.chosen.kind = transform_kind_from_string(step.at("kind"));
    t.chosen.generator_score = step.at("generator_score");
    t.score = step.at("score");
    o.trace.push_back(std::move(t));
  }
  for (const auto& [name, n] : j.at("constraint_rejections").items())
    o.constraint_rejections[name] = n.get<std::size_t>();
  if (j.contains("adversarial_text"))
    o.adversarial_text = j.at("adversarial_text").get<std::string>();
  if (j.contains("error")) o.error = j.at("error").get<std::string>();
  return o;
}

ordered_json record_json(const ResultRecord& r) {
  ordered_json j = {{"seed_id", r.seed_id},
                    {"original_text", r.original_text},
                    {"label", r.label},
                    {"eligible_tokens", r.eligible_tokens},
                    {"outcome", outcome_json(r.outcome)}};
  if (r.perturbation_pct) j["perturbation_pct"] = *r.perturbation_pct;
  return j;
}

ResultRecord record_from_json(const ordered_json& j) {
  ResultRecord r;
  r.seed_id = j.at("seed_id");
  r.original_text = j.at("original_text");
  r.label = j.at("label");
  r.eligible_tokens = j.at("eligible_tokens");
  r.outcome = outcome_from_json(j.at("outcome"));
  if (j.contains("perturbation_pct"))
    r.perturbation_pct = j.at("perturbation_pct").get<double>();
  return r;
}

std::vector<std::size_t> campaign_order(std::size_t n, std::uint64_t seed,
                                        std::size_t limit) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  DetRng rng(seed);
  det_shuffle(idx, rng);
  if (limit > 0 && limit < idx.size()) idx.resize(limit);
  return idx;
}

}  // namespace

std::string attack_config_to_json(const AttackConfig& config) {
  return attack_config_json(config).dump();
}

AttackConfig attack_config_from_json_string(const std::string& s) {
  return attack_config_from_json(ordered_json::parse(s));
}

CampaignReport read_report_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  ordered_json j = ordered_json::parse(in);
  CampaignReport rep;
  rep.attempted = j.at("attempted");
  rep.skipped = j.at("skipped");
  rep.successes = j.at("successes");
  rep.failures = j.at("failures");
  if (!j.at("success_rate").is_null())
    rep.success_rate = j.at("success_rate").get<double>();
  if (!j.at("mean_perturbation_pct").is_null())
    rep.mean_perturbation_pct = j.at("mean_perturbation_pct").get<double>();
  rep.mean_queries = j.at("mean_queries");
  for (const auto& [name, n] : j.at("constraint_rejections").items())
    rep.constraint_rejections[name] = n.get<std::size_t>();
  rep.config_echo = attack_config_from_json(j.at("config"));
  if (j.contains("aborted_error"))
    rep.aborted_error = j.at("aborted_error").get<std::string>();
  return rep;
}

CampaignReport compute_report(const std::vector<ResultRecord>& records,
                              const AttackConfig& config_echo) {
  CampaignReport rep;
  rep.config_echo = config_echo;
  double pct_sum = 0.0;
  double query_sum = 0.0;
  for (const auto& r : records) {
    ++rep.attempted;
    switch (r.outcome.status) {
      case AttackStatus::Skipped:
        ++rep.skipped;
        break;
      case AttackStatus::Success:
        ++rep.successes;
        query_sum += static_cast<double>(r.outcome.queries_used);
        if (r.perturbation_pct) pct_sum += *r.perturbation_pct;
        break;
      default:
        ++rep.failures;
        query_sum += static_cast<double>(r.outcome.queries_used);
        break;
    }
    for (const auto& [name, n] : r.outcome.constraint_rejections)
      rep.constraint_rejections[name] += n;
  }
  std::size_t decided = rep.successes + rep.failures;
  if (decided > 0) {
    rep.success_rate = 100.0 * static_cast<double>(rep.successes) /
                       static_cast<double>(decided);
    rep.mean_queries = query_sum / static_cast<double>(decided);
  }
  if (rep.successes > 0)
    rep.mean_perturbation_pct = pct_sum / static_cast<double>(rep.successes);
  return rep;
}

std::pair<CampaignReport, std::vector<ResultRecord>> run_campaign(
    const LabeledDataset& dataset, Victim& victim, const CampaignConfig& config,
    const ResourceTables& resources, MlmClient* mlm, SentenceEncoder* encoder) {
  auto order = campaign_order(dataset.size(), config.campaign_seed, config.limit);

  std::vector<ResultRecord> records(order.size());
  std::atomic<bool> aborted{false};
  std::string abort_error;
  std::mutex abort_mu;

  auto attack_one = [&](std::size_t pos) {
    std::size_t seed_id = order[pos];
    const auto& [text, label] = dataset.records[seed_id];
    ResultRecord rec;
    rec.seed_id = seed_id;
    rec.original_text = text;
    rec.label = label;
    SegmentedText seg = segment(text, resources.lexicon);
    for (const auto& tok : seg.tokens)
      if (!config.attack.constraints.use_stopword ||
          !resources.stopwords.contains(tok.surface))
        ++rec.eligible_tokens;
    rec.outcome = greedy_attack(seg, victim, config.attack, resources, mlm,
                                encoder, label);
    if (rec.outcome.status == AttackStatus::Success && rec.eligible_tokens > 0)
      rec.perturbation_pct =
          100.0 * static_cast<double>(rec.outcome.perturbed_indices.size()) /
          static_cast<double>(rec.eligible_tokens);
    if (rec.outcome.status == AttackStatus::Error) {
      std::lock_guard<std::mutex> lock(abort_mu);
      if (abort_error.empty()) abort_error = rec.outcome.error;
      aborted = true;
    }
    records[pos] = std::move(rec);
  };

  std::size_t workers = std::max<std::size_t>(config.workers, 1);
  if (workers == 1) {
    for (std::size_t pos = 0; pos < order.size() && !aborted; ++pos)
      attack_one(pos);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        while (!aborted) {
          std::size_t pos = next.fetch_add(1);
          if (pos >= order.size()) break;
          attack_one(pos);
        }
      });
    for (auto& t : pool) t.join();
  }

  if (aborted) {
    // flush whatever finished before the hard failure
    std::vector<ResultRecord> partial;
    for (auto& r : records)
      if (!r.original_text.empty()) partial.push_back(std::move(r));
    auto rep = compute_report(partial, config.attack);
    rep.aborted_error = abort_error;
    return {std::move(rep), std::move(partial)};
  }
  return {compute_report(records, config.attack), std::move(records)};
}

AblationReport ablation_pair(const LabeledDataset& dataset, Victim& victim,
                             const CampaignConfig& base_config,
                             const ResourceTables& resources, MlmClient* mlm,
                             SentenceEncoder* encoder) {
  CampaignConfig without = base_config;
  without.attack.constraints.use_stopword = true;
  without.attack.constraints.use_repeat = true;
  without.attack.constraints.use_similarity = false;
  CampaignConfig with = without;
  with.attack.constraints.use_similarity = true;

  AblationReport rep;
  rep.without_similarity =
      run_campaign(dataset, victim, without, resources, mlm, encoder).first;
  rep.with_similarity =
      run_campaign(dataset, victim, with, resources, mlm, encoder).first;
  return rep;
}

AdversarialTrainingResult adversarial_training_pipeline(
    const LabeledDataset& train_set, const LabeledDataset& eval_set,
    const TrainConfig& victim_config, const TrainConfig& finetune_config,
    const CampaignConfig& attack_config, std::size_t n_attack,
    std::size_t n_eval, const ResourceTables& resources, MlmClient* mlm,
    SentenceEncoder* encoder) {
  AdversarialTrainingResult result;
  result.base_model = train(train_set, victim_config);
  InProcessVictim base_victim(result.base_model);

  CampaignConfig harvest = attack_config;
  harvest.limit = n_attack;
  auto [harvest_rep, harvest_records] = run_campaign(
      train_set, base_victim, harvest, resources, mlm, encoder);

  LabeledDataset adv;
  adv.label_names = train_set.label_names;
  for (const auto& r : harvest_records)
    if (r.outcome.status == AttackStatus::Success && r.outcome.adversarial_text)
      adv.records.emplace_back(*r.outcome.adversarial_text, r.label);
  result.report.adversarial_examples = adv.records.size();

  if (adv.records.empty()) {
    result.report.no_adversarial_data = true;
    result.hardened_model = result.base_model;
    return result;
  }

  result.hardened_model =
      fine_tune(result.base_model, adv, train_set, finetune_config);
  InProcessVictim hardened_victim(result.hardened_model);

  CampaignConfig eval_cfg = attack_config;
  eval_cfg.limit = n_eval;
  result.report.pre =
      run_campaign(eval_set, base_victim, eval_cfg, resources, mlm, encoder).first;
  result.report.post =
      run_campaign(eval_set, hardened_victim, eval_cfg, resources, mlm, encoder)
          .first;
  if (result.report.pre.success_rate && result.report.post.success_rate &&
      *result.report.pre.success_rate > 0.0)
    result.report.delta_pct =
        100.0 * (*result.report.post.success_rate - *result.report.pre.success_rate) /
        *result.report.pre.success_rate;
  return result;
}

std::size_t export_human_eval(const std::vector<ResultRecord>& records,
                              std::size_t n, std::uint64_t seed,
                              const std::string& path,
                              const std::string& key_path) {
  std::vector<const ResultRecord*> successes;
  for (const auto& r : records)
    if (r.outcome.status == AttackStatus::Success && r.outcome.adversarial_text)
      successes.push_back(&r);
  DetRng rng(seed);
  det_shuffle(successes, rng);
  if (n < successes.size()) successes.resize(n);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  std::ofstream key(key_path);
  if (!key) throw std::runtime_error("cannot write " + key_path);
  out << "sample_id\ttransformation\ttext_a\ttext_b\n";
  key << "sample_id\tseed_id\toriginal_is\n";
  for (std::size_t k = 0; k < successes.size(); ++k) {
    const ResultRecord& r = *successes[k];
    std::string kind = r.outcome.trace.empty()
                           ? "?"
                           : to_string(r.outcome.trace.back().chosen.kind);
    bool original_first = rng.bounded(2) == 0;
    const std::string& a =
        original_first ? r.original_text : *r.outcome.adversarial_text;
    const std::string& b =
        original_first ? *r.outcome.adversarial_text : r.original_text;
    out << k << "\t" << kind << "\t" << a << "\t" << b << "\n";
    key << k << "\t" << r.seed_id << "\t" << (original_first ? "a" : "b") << "\n";
  }
  return successes.size();
}

void write_results_jsonl(const std::vector<ResultRecord>& records,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& r : records) out << record_json(r).dump() << "\n";
}

std::vector<ResultRecord> read_results_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<ResultRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(record_from_json(ordered_json::parse(line)));
  }
  return records;
}

std::string report_to_json(const CampaignReport& report) {
  ordered_json rej = ordered_json::object();
  for (const auto& [name, n] : report.constraint_rejections) rej[name] = n;
  ordered_json j = {{"attempted", report.attempted},
                    {"skipped", report.skipped},
                    {"successes", report.successes},
                    {"failures", report.failures},
                    {"success_rate",
                     report.success_rate ? ordered_json(*report.success_rate)
                                         : ordered_json(nullptr)},
                    {"mean_perturbation_pct",
                     report.mean_perturbation_pct
                         ? ordered_json(*report.mean_perturbation_pct)
                         : ordered_json(nullptr)},
                    {"mean_queries", report.mean_queries},
                    {"constraint_rejections", rej},
                    {"config", attack_config_json(report.config_echo)}};
  if (!report.aborted_error.empty()) j["aborted_error"] = report.aborted_error;
  return j.dump(2);
}

void write_report_json(const CampaignReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << report_to_json(report) << "\n";
}

}  // namespace zhattack
