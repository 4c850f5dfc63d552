// End-to-end acceptance checks. Each criterion prints exactly one
// PASS/FAIL line; the process exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "zhattack/runner.hpp"
#include "zhattack/stubs.hpp"

using namespace zhattack;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Shared {
  ResourceTables resources;
  LabeledDataset train_set;
  LabeledDataset eval_set;
  LinearTextModel model;

  Shared()
      : resources(ResourceTables::load_dir(ZHATTACK_DATA_DIR)),
        train_set(LabeledDataset::load_tsv(std::string(ZHATTACK_DATA_DIR) +
                                           "/corpus_train.tsv")),
        eval_set(LabeledDataset::load_tsv(std::string(ZHATTACK_DATA_DIR) +
                                          "/corpus_eval.tsv")) {
    model = train(train_set, TrainConfig{0.5, 30, 1e-4, 0, 1});
  }
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

// --------------------------------------------------------------------------
// 1. segmentation optimality against exhaustive enumeration

Outcome check_segmentation(Shared&) {
  auto t0 = Clock::now();
  const std::u32string alphabet = U"的一是了我不人在他有好吃买到要";
  testutil::Rand rnd(101);
  std::size_t mismatches = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    Lexicon lex;
    std::size_t n_words = 5 + rnd.below(11);
    for (std::size_t w = 0; w < n_words; ++w) {
      std::size_t len = 1 + rnd.below(3);
      std::u32string word;
      for (std::size_t j = 0; j < len; ++j)
        word += alphabet[rnd.below(alphabet.size())];
      std::string encoded = utf8_encode(word);
      if (!lex.contains(encoded))
        lex.add(encoded, 1 + static_cast<std::int64_t>(rnd.below(1000)));
    }
    std::size_t text_len = 1 + rnd.below(8);
    std::u32string cps;
    for (std::size_t j = 0; j < text_len; ++j)
      cps += alphabet[rnd.below(alphabet.size())];

    SegmentedText seg = segment(utf8_encode(cps), lex);
    std::vector<std::string> tokens;
    for (const auto& t : seg.tokens) tokens.push_back(t.surface);
    double achieved = testutil::right_fold_score(tokens, lex);
    double best = testutil::best_enumerated_score(cps, lex);
    if (achieved != best) ++mismatches;
  }
  double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "1000 randomized lexicons/texts, %zu score mismatches, %.2f s",
                mismatches, secs);
  return {mismatches == 0 && secs < 5.0, buf};
}

// --------------------------------------------------------------------------
// 2. importance ranking against brute-force confidence-drop evaluation

Outcome check_importance(Shared&) {
  // hand-set unigram weights so the brute force is self-contained
  const std::vector<std::string> pool = {"好", "差", "很", "不", "买", "烂",
                                         "棒", "慢", "快", "贵", "值", "坑"};
  testutil::Rand rnd(202);
  std::unordered_map<std::string, std::size_t> vocab;
  std::vector<double> row;
  Lexicon lex;
  for (const auto& w : pool) {
    vocab.emplace(w, vocab.size());
    row.push_back((rnd.real() - 0.5) * 4.0);
    lex.add(w, 10);
  }
  LinearTextModel m = LinearTextModel::from_parameters(
      {"pos", "neg"}, vocab, {row, std::vector<double>(row.size(), 0.0)},
      {0.1, -0.1});
  InProcessVictim victim(m);
  StopwordSet stop;
  stop.words.insert("很");

  std::size_t mismatches = 0;
  for (int iter = 0; iter < 100; ++iter) {
    std::size_t n = 3 + rnd.below(6);
    std::string text;
    for (std::size_t j = 0; j < n; ++j) text += pool[rnd.below(pool.size())];
    SegmentedText seg = segment(text, lex);
    const StopwordSet* sw = rnd.below(2) ? &stop : nullptr;
    int y = static_cast<int>(victim.predict_one(text).argmax());

    auto got = importance_scores(seg, victim, y, sw);

    // brute force: score every eligible token independently, stable sort
    std::vector<std::pair<std::size_t, double>> want;
    for (std::size_t i = 0; i < seg.tokens.size(); ++i) {
      if (sw && sw->contains(seg.tokens[i].surface)) continue;
      double p = victim.predict_one(with_unk(seg, i)).probs[y];
      want.emplace_back(i, 1.0 - p);
    }
    std::stable_sort(want.begin(), want.end(),
                     [](const auto& a, const auto& b) {
                       return a.second > b.second;
                     });
    if (got != want) ++mismatches;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "100 random texts, %zu ranking mismatches", mismatches);
  return {mismatches == 0, buf};
}

// --------------------------------------------------------------------------
// 3. greedy soundness against the exhaustive oracle

Outcome check_greedy_soundness(Shared&) {
  ResourceTables r;
  for (const char* w : {"a", "b", "c", "p", "q", "r"}) r.lexicon.add(w, 10);
  r.sememes.add("a", "s1");
  r.sememes.add("p", "s1");
  r.sememes.add("r", "s1");
  r.sememes.add("b", "s2");
  r.sememes.add("q", "s2");
  r.sememes.add("c", "s3");
  r.sememes.add("r", "s3");
  r.embeddings.dim = 2;

  AttackConfig cfg;
  cfg.transform.kind = TransformKind::HowNet;
  cfg.constraints.use_similarity = false;

  testutil::Rand rnd(303);
  const char* letters[] = {"a", "b", "c"};
  std::size_t violations = 0, successes = 0;
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<std::pair<std::string, double>> ws;
    for (const char* g : {"a", "b", "c", "p", "q", "r"})
      ws.emplace_back(g, (rnd.real() - 0.5) * 6.0);
    std::unordered_map<std::string, std::size_t> vocab;
    std::vector<double> row;
    for (const auto& [g, w] : ws) {
      vocab.emplace(g, vocab.size());
      row.push_back(w);
    }
    LinearTextModel m = LinearTextModel::from_parameters(
        {"pos", "neg"}, vocab, {row, std::vector<double>(row.size(), 0.0)},
        {0.0, 0.0});
    InProcessVictim victim(m);

    std::string text;
    std::size_t n = 1 + rnd.below(3);
    for (std::size_t j = 0; j < n; ++j) text += letters[rnd.below(3)];
    SegmentedText seg = segment(text, r.lexicon);

    AttackOutcome o =
        greedy_attack(seg, victim, cfg, r, nullptr, nullptr, std::nullopt);
    auto oracle =
        exhaustive_oracle(seg, victim, cfg, r, nullptr, nullptr, 3);

    if (o.status == AttackStatus::Success) {
      ++successes;
      // soundness: the oracle must agree the instance is attackable
      if (!oracle.attackable) ++violations;
      // re-validation: the reported text really flips the label...
      if (victim.predict_one(*o.adversarial_text).argmax() ==
          static_cast<std::size_t>(o.y_orig))
        ++violations;
      // ...and the perturbation obeys the repeat constraint
      std::set<std::size_t> uniq(o.perturbed_indices.begin(),
                                 o.perturbed_indices.end());
      if (uniq.size() != o.perturbed_indices.size()) ++violations;
      for (std::size_t i : o.perturbed_indices)
        if (i >= seg.tokens.size()) ++violations;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "500 randomized instances, %zu successes, %zu violations",
                successes, violations);
  return {violations == 0 && successes > 0, buf};
}

// --------------------------------------------------------------------------
// 4. transformation validity on generated candidates

Outcome check_transform_validity(Shared& s) {
  StubMlmClient mlm(s.resources.lexicon, s.resources.embeddings);
  TransformConfig tcfg;

  std::size_t total = 0, homophone_bad = 0, morphonym_bad = 0, identical = 0;
  std::uint64_t seed = 0;
  while (total < 10000) {
    for (const auto& [text, label] : s.eval_set.records) {
      if (total >= 10000) break;
      SegmentedText seg = segment(text, s.resources.lexicon);
      for (std::size_t i = 0; i < seg.tokens.size() && total < 10000; ++i) {
        auto cands = generate_candidates(seg, i, tcfg, s.resources, &mlm, seed);
        std::u32string orig = utf8_decode(seg.tokens[i].surface);
        for (const auto& c : cands) {
          if (total >= 10000) break;
          ++total;
          if (c.replacement == seg.tokens[i].surface) ++identical;
          if (c.kind != TransformKind::Homophone &&
              c.kind != TransformKind::Morphonym)
            continue;
          std::u32string repl = utf8_decode(c.replacement);
          if (repl.size() != orig.size()) {
            (c.kind == TransformKind::Homophone ? homophone_bad
                                                : morphonym_bad)++;
            continue;
          }
          for (std::size_t j = 0; j < orig.size(); ++j) {
            if (orig[j] == repl[j]) continue;
            if (c.kind == TransformKind::Homophone) {
              // the swapped characters must share a toneless syllable
              auto a = s.resources.pinyin.by_char.find(orig[j]);
              auto b = s.resources.pinyin.by_char.find(repl[j]);
              bool shared = false;
              if (a != s.resources.pinyin.by_char.end() &&
                  b != s.resources.pinyin.by_char.end())
                for (const auto& syl : a->second)
                  for (const auto& syl2 : b->second)
                    if (syl == syl2) shared = true;
              if (!shared) ++homophone_bad;
            } else {
              // the swapped characters must share a glyph component
              auto a = s.resources.components.by_char.find(orig[j]);
              auto b = s.resources.components.by_char.find(repl[j]);
              bool shared = false;
              if (a != s.resources.components.by_char.end() &&
                  b != s.resources.components.by_char.end())
                for (const auto& comp : a->second)
                  for (const auto& comp2 : b->second)
                    if (comp == comp2) shared = true;
              if (!shared) ++morphonym_bad;
            }
          }
        }
      }
    }
    ++seed;  // vary the sampling if one corpus pass was not enough
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "%zu candidates: %zu invalid homophones, %zu invalid "
                "morphonyms, %zu identical to the original",
                total, homophone_bad, morphonym_bad, identical);
  return {homophone_bad == 0 && morphonym_bad == 0 && identical == 0, buf};
}

// --------------------------------------------------------------------------
// 5. constraint monotonicity: adding the similarity check only removes

Outcome check_constraint_monotonicity(Shared& s) {
  StubMlmClient mlm(s.resources.lexicon, s.resources.embeddings);
  MeanEmbeddingEncoder enc(s.resources.embeddings, s.resources.lexicon);
  TransformConfig tcfg;

  ConstraintConfig loose;
  loose.use_similarity = false;
  ConstraintConfig tight;  // stopword + repeat + similarity

  testutil::Rand rnd(404);
  std::size_t sets = 0, violations = 0;
  std::uint64_t seed = 0;
  while (sets < 1000) {
    for (const auto& [text, label] : s.eval_set.records) {
      if (sets >= 1000) break;
      SegmentedText seg = segment(text, s.resources.lexicon);
      if (seg.tokens.empty()) continue;
      std::size_t i = rnd.below(seg.tokens.size());
      auto cands = generate_candidates(seg, i, tcfg, s.resources, &mlm, seed);
      if (cands.empty()) continue;
      PerturbationHistory h;
      if (rnd.below(2)) h.modified_indices.insert(rnd.below(seg.tokens.size()));
      ++sets;
      for (const auto& c : cands) {
        SegmentedText xp = replace_token(seg, i, c.replacement);
        bool pass_loose =
            check_all(seg, xp, i, h, loose, s.resources.stopwords, &enc).pass;
        bool pass_tight =
            check_all(seg, xp, i, h, tight, s.resources.stopwords, &enc).pass;
        if (pass_tight && !pass_loose) ++violations;
      }
    }
    ++seed;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "1000 candidate sets, %zu subset violations", violations);
  return {violations == 0, buf};
}

// --------------------------------------------------------------------------
// 6. desk-scale trend suite

Outcome check_trends(Shared& s) {
  auto t0 = Clock::now();
  InProcessVictim victim(s.model);
  StubMlmClient mlm(s.resources.lexicon, s.resources.embeddings);
  MeanEmbeddingEncoder enc(s.resources.embeddings, s.resources.lexicon);

  CampaignConfig base;
  base.limit = 250;

  auto rate = [&](TransformKind kind) {
    CampaignConfig cfg = base;
    cfg.attack.transform.kind = kind;
    auto [report, records] =
        run_campaign(s.eval_set, victim, cfg, s.resources, &mlm, &enc);
    return report.success_rate.value_or(0.0);
  };
  double hownet = rate(TransformKind::HowNet);
  double mlm_rate = rate(TransformKind::Mlm);
  double homophone = rate(TransformKind::Homophone);
  double morphonym = rate(TransformKind::Morphonym);
  double composite = rate(TransformKind::Composite);
  double best_single =
      std::max({hownet, mlm_rate, homophone, morphonym});
  bool composite_ok = composite >= best_single - 2.0;

  // similarity-constraint ablation: mean perturbation with the similarity
  // filter must not exceed the unfiltered mean
  auto perturbation_pair = [&](TransformKind kind) {
    CampaignConfig cfg = base;
    cfg.attack.transform.kind = kind;
    AblationReport ab =
        ablation_pair(s.eval_set, victim, cfg, s.resources, &mlm, &enc);
    return std::pair<double, double>(
        ab.without_similarity.mean_perturbation_pct.value_or(0.0),
        ab.with_similarity.mean_perturbation_pct.value_or(0.0));
  };
  auto [hw_plain, hw_sim] = perturbation_pair(TransformKind::HowNet);
  auto [hp_plain, hp_sim] = perturbation_pair(TransformKind::Homophone);
  bool ablation_ok = hw_sim <= hw_plain && hp_sim <= hp_plain;

  double secs = seconds_since(t0);
  char buf[320];
  std::snprintf(
      buf, sizeof(buf),
      "success %% hownet=%.2f mlm=%.2f homophone=%.2f morphonym=%.2f "
      "composite=%.2f; perturbation %% hownet %.2f->%.2f homophone "
      "%.2f->%.2f with similarity filter; %.1f s",
      hownet, mlm_rate, homophone, morphonym, composite, hw_plain, hw_sim,
      hp_plain, hp_sim, secs);
  return {composite_ok && ablation_ok && secs < 600.0, buf};
}

// --------------------------------------------------------------------------
// 7. adversarial training reduces attack success

Outcome check_adversarial_training(Shared& s) {
  auto t0 = Clock::now();
  StubMlmClient mlm(s.resources.lexicon, s.resources.embeddings);
  MeanEmbeddingEncoder enc(s.resources.embeddings, s.resources.lexicon);

  CampaignConfig attack_cfg;  // composite transform, all constraints
  auto result = adversarial_training_pipeline(
      s.train_set, s.eval_set, TrainConfig{0.5, 30, 1e-4, 0, 1},
      TrainConfig{0.1, 30, 1e-4, 0, 1}, attack_cfg, 2400, 250, s.resources,
      &mlm, &enc);
  double secs = seconds_since(t0);

  const auto& rep = result.report;
  double pre = rep.pre.success_rate.value_or(0.0);
  double post = rep.post.success_rate.value_or(0.0);
  double delta = rep.delta_pct.value_or(0.0);
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "success %.2f%% -> %.2f%% (%.2f%% relative, %zu adversarial "
                "examples), %.1f s",
                pre, post, delta, rep.adversarial_examples, secs);
  return {rep.delta_pct.has_value() && delta <= -10.0 && secs < 900.0, buf};
}

// --------------------------------------------------------------------------
// 8. numerical soundness

Outcome check_numerics(Shared& s) {
  double err_demo = gradient_check(s.model, s.train_set, 1e-5, 0);

  LabeledDataset tiny;
  tiny.label_names = {"pos", "neg"};
  tiny.records = {{"好", 0}, {"棒", 0}, {"好棒", 0},
                  {"差", 1}, {"烂", 1}, {"差烂", 1}};
  LinearTextModel small = train(tiny, TrainConfig{0.3, 5, 1e-4, 0, 1});
  double err_small = gradient_check(small, tiny, 1e-5, 0);

  std::size_t bad_sums = 0, checked = 0;
  for (const auto& [text, label] : s.eval_set.records) {
    Prediction p = s.model.predict_one(text);
    double sum = 0.0;
    for (double v : p.probs) sum += v;
    if (std::abs(sum - 1.0) > 1e-6) ++bad_sums;
    ++checked;
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "gradient rel. error %.2e / %.2e; %zu of %zu prediction "
                "sums off by more than 1e-6",
                err_demo, err_small, bad_sums, checked);
  return {err_demo < 1e-4 && err_small < 1e-4 && bad_sums == 0, buf};
}

// --------------------------------------------------------------------------
// 9. campaign determinism

Outcome check_determinism(Shared& s) {
  InProcessVictim victim(s.model);
  StubMlmClient mlm(s.resources.lexicon, s.resources.embeddings);
  MeanEmbeddingEncoder enc(s.resources.embeddings, s.resources.lexicon);
  CampaignConfig cfg;
  cfg.limit = 200;

  auto [r1, recs1] = run_campaign(s.eval_set, victim, cfg, s.resources, &mlm, &enc);
  auto [r2, recs2] = run_campaign(s.eval_set, victim, cfg, s.resources, &mlm, &enc);
  auto p1 = testutil::write_temp("acc_run1.jsonl", "");
  auto p2 = testutil::write_temp("acc_run2.jsonl", "");
  write_results_jsonl(recs1, p1);
  write_results_jsonl(recs2, p2);
  bool identical = slurp(p1) == slurp(p2);
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "two identical 200-seed campaigns: JSONL %s",
                identical ? "byte-identical" : "DIFFERS");
  return {identical, buf};
}

// --------------------------------------------------------------------------
// 10. HTTP adapter fidelity

Outcome check_adapter_fidelity(Shared& s) {
  StubServer server;
  server.serve_victim(&s.model);
  int port = server.start();
  HttpVictim remote("127.0.0.1", port);
  InProcessVictim local(s.model);

  double worst = 0.0;
  std::size_t checked = 0;
  std::vector<std::string> batch;
  for (const auto& [text, label] : s.eval_set.records) {
    batch.push_back(text);
    if (batch.size() < 25 && checked + batch.size() < 100) continue;
    auto a = remote.predict(batch);
    auto b = local.predict(batch);
    for (std::size_t i = 0; i < batch.size(); ++i)
      for (std::size_t j = 0; j < a[i].probs.size(); ++j)
        worst = std::max(worst, std::abs(a[i].probs[j] - b[i].probs[j]));
    checked += batch.size();
    batch.clear();
    if (checked >= 100) break;
  }
  server.stop();
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "%zu texts, max per-probability deviation %.2e", checked,
                worst);
  return {checked >= 100 && worst <= 1e-6, buf};
}

}  // namespace

int main() {
  Shared shared;
  struct Entry {
    const char* name;
    std::function<Outcome(Shared&)> fn;
  };
  const std::vector<Entry> entries = {
      {"segmentation optimality", check_segmentation},
      {"importance-ranking oracle", check_importance},
      {"greedy soundness vs exhaustive oracle", check_greedy_soundness},
      {"transformation validity", check_transform_validity},
      {"constraint monotonicity", check_constraint_monotonicity},
      {"desk-scale trend suite", check_trends},
      {"adversarial training effect", check_adversarial_training},
      {"numerical soundness", check_numerics},
      {"campaign determinism", check_determinism},
      {"HTTP adapter fidelity", check_adapter_fidelity},
  };

  int failures = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Outcome o;
    try {
      o = entries[i].fn(shared);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2zu %s %-38s %s\n", i + 1,
                o.pass ? "PASS" : "FAIL", entries[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
