#include "zhattack/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace zhattack {

std::string to_string(AttackStatus status) {
  switch (status) {
    case AttackStatus::Success: return "success";
    case AttackStatus::Failed: return "failed";
    case AttackStatus::Skipped: return "skipped";
    case AttackStatus::Error: return "error";
  }
  return "?";
}

bool goal_met(const Prediction& pred, int y_orig) {
  return static_cast<int>(pred.argmax()) != y_orig;
}

std::vector<std::pair<std::size_t, double>> importance_scores(
    const SegmentedText& seg, Victim& victim, int y_orig,
    const StopwordSet* stopwords, const std::string& unk) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < seg.tokens.size(); ++i)
    if (!stopwords || !stopwords->contains(seg.tokens[i].surface))
      eligible.push_back(i);
  if (eligible.empty()) return {};

  std::vector<std::string> probes;
  probes.reserve(eligible.size());
  for (std::size_t i : eligible) probes.push_back(with_unk(seg, i, unk));
  auto preds = victim.predict(probes);

  std::vector<std::pair<std::size_t, double>> scores;
  scores.reserve(eligible.size());
  for (std::size_t k = 0; k < eligible.size(); ++k) {
    double p = preds[k].probs.at(static_cast<std::size_t>(y_orig));
    scores.emplace_back(eligible[k], 1.0 - p);
  }
  std::stable_sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;  // stable keeps smaller index on ties
  });
  return scores;
}

namespace {

std::vector<Candidate> filtered_candidates(
    const SegmentedText& seed, const SegmentedText& working, std::size_t idx,
    const PerturbationHistory& history, const AttackConfig& config,
    const ResourceTables& resources, MlmClient* mlm, SentenceEncoder* encoder,
    std::vector<SegmentedText>* texts_out,
    std::map<std::string, std::size_t>* rejections = nullptr) {
  std::vector<Candidate> raw;
  try {
    raw = generate_candidates(working, idx, config.transform, resources, mlm,
                              config.rng_seed);
  } catch (const MlmUnavailableError&) {
    // MLM-only attack with an unreachable client: no candidates here.
  }
  std::vector<Candidate> kept;
  for (auto& cand : raw) {
    SegmentedText x_prime = replace_token(working, idx, cand.replacement);
    auto verdict = check_all(seed, x_prime, idx, history, config.constraints,
                             resources.stopwords, encoder);
    if (!verdict.pass) {
      if (rejections) ++(*rejections)[verdict.violated];
      continue;
    }
    if (texts_out) texts_out->push_back(std::move(x_prime));
    kept.push_back(std::move(cand));
  }
  return kept;
}

}  // namespace

AttackOutcome greedy_attack(const SegmentedText& seg, Victim& victim,
                            const AttackConfig& config,
                            const ResourceTables& resources, MlmClient* mlm,
                            SentenceEncoder* encoder,
                            std::optional<int> gold_label) {
  AttackOutcome out;
  try {
    Prediction seed_pred = victim.predict_one(seg.original);
    out.queries_used = 1;
    int y_orig = static_cast<int>(seed_pred.argmax());
    out.y_orig = y_orig;

    if (gold_label && y_orig != *gold_label) {
      out.status = AttackStatus::Skipped;
      return out;
    }

    const StopwordSet* stop =
        config.constraints.use_stopword ? &resources.stopwords : nullptr;
    auto ranking = importance_scores(seg, victim, y_orig, stop, config.unk);
    out.queries_used += ranking.size();

    SegmentedText working = seg;
    PerturbationHistory history;
    for (const auto& [idx, imp] : ranking) {
      std::vector<SegmentedText> texts;
      auto cands = filtered_candidates(seg, working, idx, history, config,
                                       resources, mlm, encoder, &texts,
                                       &out.constraint_rejections);
      if (cands.empty()) {
        if (config.strict_algorithm1_halt) break;  // Algorithm-1 literal halt
        continue;
      }
      if (out.queries_used + cands.size() > config.query_budget) {
        out.status = AttackStatus::Failed;
        return out;
      }
      std::vector<std::string> probe_texts;
      probe_texts.reserve(texts.size());
      for (const auto& t : texts) probe_texts.push_back(t.original);
      auto preds = victim.predict(probe_texts);
      out.queries_used += preds.size();

      std::size_t best = 0;
      double best_score = -1.0;
      for (std::size_t k = 0; k < preds.size(); ++k) {
        double s = 1.0 - preds[k].probs.at(static_cast<std::size_t>(y_orig));
        if (s > best_score) {
          best_score = s;
          best = k;
        }
      }
      working = std::move(texts[best]);
      history.modified_indices.insert(idx);
      out.perturbed_indices.push_back(idx);
      out.trace.push_back({idx, cands[best], best_score});
      if (goal_met(preds[best], y_orig)) {
        out.status = AttackStatus::Success;
        out.adversarial_text = working.original;
        out.adv_label = static_cast<int>(preds[best].argmax());
        return out;
      }
    }
    out.status = AttackStatus::Failed;
    return out;
  } catch (const std::exception& e) {
    out.status = AttackStatus::Error;
    out.error = e.what();
    return out;
  }
}

namespace {

bool oracle_dfs(const SegmentedText& seed, const SegmentedText& working,
                Victim& victim, int y_orig, const AttackConfig& config,
                const ResourceTables& resources, MlmClient* mlm,
                SentenceEncoder* encoder, PerturbationHistory& history,
                std::size_t remaining, std::size_t max_nodes,
                std::size_t& visited, std::optional<std::string>& witness) {
  if (remaining == 0) return false;
  for (std::size_t idx = 0; idx < seed.tokens.size(); ++idx) {
    std::vector<SegmentedText> texts;
    auto cands = filtered_candidates(seed, working, idx, history, config,
                                     resources, mlm, encoder, &texts);
    for (std::size_t k = 0; k < cands.size(); ++k) {
      if (++visited > max_nodes)
        throw std::runtime_error("exhaustive oracle: combination bound exceeded");
      Prediction pred = victim.predict_one(texts[k].original);
      if (goal_met(pred, y_orig)) {
        witness = texts[k].original;
        return true;
      }
      history.modified_indices.insert(idx);
      bool found = oracle_dfs(seed, texts[k], victim, y_orig, config, resources,
                              mlm, encoder, history, remaining - 1, max_nodes,
                              visited, witness);
      history.modified_indices.erase(idx);
      if (found) return true;
    }
  }
  return false;
}

}  // namespace

OracleResult exhaustive_oracle(const SegmentedText& seg, Victim& victim,
                               const AttackConfig& config,
                               const ResourceTables& resources, MlmClient* mlm,
                               SentenceEncoder* encoder,
                               std::size_t max_perturbed,
                               std::size_t max_nodes) {
  OracleResult result;
  int y_orig = static_cast<int>(victim.predict_one(seg.original).argmax());
  PerturbationHistory history;
  result.attackable =
      oracle_dfs(seg, seg, victim, y_orig, config, resources, mlm, encoder,
                 history, max_perturbed, max_nodes, result.nodes_visited,
                 result.witness);
  return result;
}

}  // namespace zhattack
