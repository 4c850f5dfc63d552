#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "zhattack/search.hpp"

using namespace zhattack;

namespace {

// Two-label unigram victim: weight w on the "pos" row per character,
// zero "neg" row, zero bias.
LinearTextModel unigram_model(
    const std::vector<std::pair<std::string, double>>& weights) {
  std::unordered_map<std::string, std::size_t> vocab;
  std::vector<double> row;
  for (const auto& [g, w] : weights) {
    vocab.emplace(g, vocab.size());
    row.push_back(w);
  }
  std::vector<double> zeros(row.size(), 0.0);
  return LinearTextModel::from_parameters({"pos", "neg"}, vocab, {row, zeros},
                                          {0.0, 0.0});
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Tiny resource fixture: lexicon {a,b,p,q}, hownet pairs a<->p and b<->q,
// no pinyin/components, no stopwords.
ResourceTables tiny_resources() {
  ResourceTables r;
  for (const char* w : {"a", "b", "p", "q"}) r.lexicon.add(w, 10);
  r.sememes.add("a", "s1");
  r.sememes.add("p", "s1");
  r.sememes.add("b", "s2");
  r.sememes.add("q", "s2");
  r.embeddings.dim = 2;
  return r;
}

AttackConfig hownet_config() {
  AttackConfig cfg;
  cfg.transform.kind = TransformKind::HowNet;
  cfg.constraints.use_similarity = false;
  return cfg;
}

}  // namespace

TEST_CASE("goal_met") {
  CHECK_FALSE(goal_met(Prediction{{0.9, 0.1}}, 0));
  CHECK(goal_met(Prediction{{0.1, 0.9}}, 0));
  // exact tie: argmax = smaller index
  CHECK_FALSE(goal_met(Prediction{{0.5, 0.5}}, 0));
  CHECK(goal_met(Prediction{{0.5, 0.5}}, 1));
}

TEST_CASE("importance_scores: single token and no-effect token") {
  // P(pos | "a") = sigmoid(2); UNK'd text has no known n-grams -> 0.5
  LinearTextModel m = unigram_model({{"a", 2.0}});
  InProcessVictim victim(m);
  Lexicon lex;
  lex.add("a", 10);
  SegmentedText seg = segment("a", lex);
  auto scores = importance_scores(seg, victim, 0, nullptr);
  REQUIRE(scores.size() == 1);
  CHECK(scores[0].first == 0);
  CHECK(scores[0].second == doctest::Approx(1.0 - 0.5).epsilon(1e-12));

  // a token the victim ignores: score = 1 - P(y_orig | original)
  LinearTextModel m2 = unigram_model({{"a", 2.0}});  // "x" carries no weight
  InProcessVictim victim2(m2);
  Lexicon lex2;
  lex2.add("a", 10);
  lex2.add("x", 10);
  SegmentedText seg2 = segment("xa", lex2);
  auto scores2 = importance_scores(seg2, victim2, 0, nullptr);
  REQUIRE(scores2.size() == 2);
  // note: unigram vocab only, so no cross-token bigrams interfere
  double p_orig = sigmoid(2.0);
  for (const auto& [i, s] : scores2)
    if (i == 0) CHECK(s == doctest::Approx(1.0 - p_orig).epsilon(1e-12));
}

TEST_CASE("importance_scores: hand-computed ranking, stopwords excluded") {
  LinearTextModel m = unigram_model({{"a", 2.0}, {"b", 1.0}, {"c", 0.5}});
  InProcessVictim victim(m);
  Lexicon lex;
  for (const char* w : {"a", "b", "c"}) lex.add(w, 10);
  SegmentedText seg = segment("abc", lex);

  auto scores = importance_scores(seg, victim, 0, nullptr);
  REQUIRE(scores.size() == 3);
  // UNK'ing a leaves z = 1.5; b -> 2.5; c -> 3.0. Bigger drop = higher
  // score, so ranking is a (index 0), b, c.
  CHECK(scores[0] == std::pair<std::size_t, double>{0, 1.0 - sigmoid(1.5)});
  CHECK(scores[1].first == 1);
  CHECK(scores[1].second == doctest::Approx(1.0 - sigmoid(2.5)).epsilon(1e-12));
  CHECK(scores[2].first == 2);

  // stopword tokens are excluded from the ranking entirely
  StopwordSet stop;
  stop.words.insert("a");
  auto filtered = importance_scores(seg, victim, 0, &stop);
  REQUIRE(filtered.size() == 2);
  CHECK(filtered[0].first == 1);
  CHECK(filtered[1].first == 2);
}

TEST_CASE("importance_scores: equal scores tie toward the smaller index") {
  LinearTextModel m = unigram_model({{"a", 1.0}, {"b", 1.0}});
  InProcessVictim victim(m);
  Lexicon lex;
  lex.add("a", 10);
  lex.add("b", 10);
  SegmentedText seg = segment("ab", lex);
  auto scores = importance_scores(seg, victim, 0, nullptr);
  REQUIRE(scores.size() == 2);
  CHECK(scores[0].first == 0);
  CHECK(scores[0].second == scores[1].second);
}

TEST_CASE("greedy_attack: skip rule") {
  LinearTextModel m = unigram_model({{"a", 2.0}});
  InProcessVictim victim(m);
  ResourceTables r = tiny_resources();
  SegmentedText seg = segment("a", r.lexicon);
  // victim says pos (label 0); gold label neg (1) -> mispredicted seed
  AttackOutcome o =
      greedy_attack(seg, victim, hownet_config(), r, nullptr, nullptr, 1);
  CHECK(o.status == AttackStatus::Skipped);
  CHECK(o.perturbed_indices.empty());
  CHECK(o.trace.empty());
  CHECK(o.queries_used == 1);
}

TEST_CASE("greedy_attack: minimal one-substitution success") {
  // a -> p flips pos to neg (w(p) < 0)
  LinearTextModel m = unigram_model({{"a", 2.0}, {"p", -1.0}});
  InProcessVictim victim(m);
  ResourceTables r = tiny_resources();
  SegmentedText seg = segment("a", r.lexicon);
  AttackOutcome o =
      greedy_attack(seg, victim, hownet_config(), r, nullptr, nullptr, 0);
  REQUIRE(o.status == AttackStatus::Success);
  CHECK(*o.adversarial_text == "p");
  CHECK(o.perturbed_indices == std::vector<std::size_t>{0});
  CHECK(o.adv_label == 1);
  CHECK(o.y_orig == 0);
  REQUIRE(o.trace.size() == 1);
  CHECK(o.trace[0].chosen.replacement == "p");
  // soundness: re-query flips
  CHECK(victim.predict_one(*o.adversarial_text).argmax() == 1);
}

TEST_CASE("greedy_attack: committed non-flipping swap then success") {
  // ranking puts a first (larger weight); a->p barely reduces the margin
  // (not a flip) but stays committed; b->q then flips.
  LinearTextModel m = unigram_model(
      {{"a", 2.0}, {"b", 1.0}, {"p", 1.9}, {"q", -3.0}});
  InProcessVictim victim(m);
  ResourceTables r = tiny_resources();
  SegmentedText seg = segment("ab", r.lexicon);
  AttackOutcome o =
      greedy_attack(seg, victim, hownet_config(), r, nullptr, nullptr, 0);
  REQUIRE(o.status == AttackStatus::Success);
  CHECK(*o.adversarial_text == "pq");
  REQUIRE(o.trace.size() == 2);
  CHECK(o.trace[0].token_index == 0);
  CHECK(o.trace[1].token_index == 1);
  CHECK(o.perturbed_indices == std::vector<std::size_t>{0, 1});
  // query accounting: 1 seed + 2 ranking + 1 candidate per step
  CHECK(o.queries_used == 5);
  // exhaustive oracle agrees the instance is attackable within 2 swaps
  auto oracle = exhaustive_oracle(seg, victim, hownet_config(), r, nullptr,
                                  nullptr, 2);
  CHECK(oracle.attackable);
}

TEST_CASE("greedy_attack: candidate choice maximizes the confidence drop") {
  // two hownet candidates for one token; greedy must pick the stronger
  ResourceTables r = tiny_resources();
  r.lexicon.add("r", 10);
  r.sememes.add("r", "s1");  // a, p, r share s1
  LinearTextModel m = unigram_model({{"a", 2.0}, {"p", 1.0}, {"r", -4.0}});
  InProcessVictim victim(m);
  SegmentedText seg = segment("a", r.lexicon);
  AttackOutcome o =
      greedy_attack(seg, victim, hownet_config(), r, nullptr, nullptr, 0);
  REQUIRE(o.status == AttackStatus::Success);
  CHECK(*o.adversarial_text == "r");
}

TEST_CASE("greedy_attack: strict Algorithm-1 halt vs default continue") {
  // token x (ranked first, no candidates), token a (flippable via p)
  ResourceTables r = tiny_resources();
  r.lexicon.add("x", 10);  // no sememe annotation -> no candidates
  LinearTextModel m = unigram_model({{"x", 3.0}, {"a", 1.0}, {"p", -5.0}});
  InProcessVictim victim(m);
  SegmentedText seg = segment("xa", r.lexicon);

  AttackConfig cfg = hownet_config();
  AttackOutcome o = greedy_attack(seg, victim, cfg, r, nullptr, nullptr, 0);
  CHECK(o.status == AttackStatus::Success);  // default: continue to next word

  cfg.strict_algorithm1_halt = true;
  AttackOutcome halted =
      greedy_attack(seg, victim, cfg, r, nullptr, nullptr, 0);
  CHECK(halted.status == AttackStatus::Failed);  // literal "end search"
  CHECK(halted.perturbed_indices.empty());
}

TEST_CASE("greedy_attack: query budget exhausts to Failed") {
  LinearTextModel m = unigram_model({{"a", 2.0}, {"b", 1.0}, {"p", 1.9}});
  InProcessVictim victim(m);
  ResourceTables r = tiny_resources();
  SegmentedText seg = segment("ab", r.lexicon);
  AttackConfig cfg = hownet_config();
  cfg.query_budget = 3;  // seed + ranking consume everything
  AttackOutcome o = greedy_attack(seg, victim, cfg, r, nullptr, nullptr, 0);
  CHECK(o.status == AttackStatus::Failed);
  CHECK(o.queries_used <= 3);
}

TEST_CASE("greedy_attack: stopwords never perturbed, no index twice") {
  ResourceTables r = tiny_resources();
  r.stopwords.words.insert("a");
  LinearTextModel m = unigram_model(
      {{"a", 2.0}, {"b", 1.0}, {"p", -9.0}, {"q", 0.5}});
  InProcessVictim victim(m);
  SegmentedText seg = segment("ab", r.lexicon);
  AttackOutcome o =
      greedy_attack(seg, victim, hownet_config(), r, nullptr, nullptr, 0);
  for (std::size_t i : o.perturbed_indices) CHECK(i != 0);  // "a" is a stopword
  std::set<std::size_t> uniq(o.perturbed_indices.begin(),
                             o.perturbed_indices.end());
  CHECK(uniq.size() == o.perturbed_indices.size());
}

TEST_CASE("greedy_attack: encoder failure becomes an Error outcome") {
  class FailingEncoder : public SentenceEncoder {
   public:
    std::vector<double> encode(const std::string&) override {
      throw std::runtime_error("encoder down");
    }
  };
  LinearTextModel m = unigram_model({{"a", 2.0}, {"p", -1.0}});
  InProcessVictim victim(m);
  ResourceTables r = tiny_resources();
  SegmentedText seg = segment("a", r.lexicon);
  AttackConfig cfg = hownet_config();
  cfg.constraints.use_similarity = true;
  FailingEncoder enc;
  AttackOutcome o = greedy_attack(seg, victim, cfg, r, nullptr, &enc, 0);
  CHECK(o.status == AttackStatus::Error);
  CHECK_FALSE(o.error.empty());
}

TEST_CASE("greedy_attack: determinism") {
  ResourceTables r = ResourceTables::load_dir(ZHATTACK_DATA_DIR);
  LabeledDataset ds;
  ds.label_names = {"pos", "neg"};
  ds.records = {{"质量很好，真的不错", 0}, {"物流很慢，真的失望", 1},
                {"态度非常好，点赞", 0},   {"衣服粗糙，后悔", 1}};
  LinearTextModel model = train(ds, TrainConfig{0.5, 60, 1e-4, 0, 1});
  InProcessVictim victim(model);
  StubMlmClient mlm(r.lexicon, r.embeddings);
  MeanEmbeddingEncoder enc(r.embeddings, r.lexicon);
  AttackConfig cfg;
  cfg.rng_seed = 11;
  for (const auto& [text, label] : ds.records) {
    SegmentedText seg = segment(text, r.lexicon);
    AttackOutcome a = greedy_attack(seg, victim, cfg, r, &mlm, &enc, label);
    AttackOutcome b = greedy_attack(seg, victim, cfg, r, &mlm, &enc, label);
    CHECK(a.status == b.status);
    CHECK(a.adversarial_text == b.adversarial_text);
    CHECK(a.perturbed_indices == b.perturbed_indices);
    CHECK(a.queries_used == b.queries_used);
  }
}

TEST_CASE("exhaustive_oracle: trivial directions") {
  ResourceTables r = tiny_resources();
  // no candidate flips: p has the same weight as a
  LinearTextModel stuck = unigram_model({{"a", 2.0}, {"p", 2.0}});
  InProcessVictim v1(stuck);
  SegmentedText seg = segment("a", r.lexicon);
  auto oracle =
      exhaustive_oracle(seg, v1, hownet_config(), r, nullptr, nullptr, 3);
  CHECK_FALSE(oracle.attackable);
  AttackOutcome o = greedy_attack(seg, v1, hownet_config(), r, nullptr,
                                  nullptr, 0);
  CHECK(o.status == AttackStatus::Failed);  // soundness direction

  // a single-substitution flip exists and is found by both
  LinearTextModel weak = unigram_model({{"a", 2.0}, {"p", -1.0}});
  InProcessVictim v2(weak);
  auto oracle2 =
      exhaustive_oracle(seg, v2, hownet_config(), r, nullptr, nullptr, 1);
  CHECK(oracle2.attackable);
  REQUIRE(oracle2.witness.has_value());
  CHECK(v2.predict_one(*oracle2.witness).argmax() != 0);
}

TEST_CASE("greedy soundness vs oracle on randomized tiny instances") {
  ResourceTables r = tiny_resources();
  testutil::Rand rnd(2024);
  int successes = 0, oracle_hits = 0;
  for (int iter = 0; iter < 100; ++iter) {
    // random unigram weights in [-3, 3] for all six letters
    std::vector<std::pair<std::string, double>> ws;
    for (const char* g : {"a", "b", "p", "q"})
      ws.emplace_back(g, (rnd.real() - 0.5) * 6.0);
    LinearTextModel m = unigram_model(ws);
    InProcessVictim victim(m);
    std::string text = rnd.below(2) ? "ab" : (rnd.below(2) ? "a" : "ba");
    SegmentedText seg = segment(text, r.lexicon);
    AttackConfig cfg = hownet_config();
    AttackOutcome o = greedy_attack(seg, victim, cfg, r, nullptr, nullptr,
                                    std::nullopt);
    auto oracle =
        exhaustive_oracle(seg, victim, cfg, r, nullptr, nullptr, 3);
    if (oracle.attackable) ++oracle_hits;
    if (o.status == AttackStatus::Success) {
      ++successes;
      CHECK(oracle.attackable);  // greedy success implies oracle-attackable
      CHECK(victim.predict_one(*o.adversarial_text).argmax() !=
            static_cast<std::size_t>(o.y_orig));
    }
  }
  CHECK(successes > 0);
  CHECK(oracle_hits >= successes);
}
