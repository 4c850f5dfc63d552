#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "zhattack/victim.hpp"

using namespace zhattack;
using testutil::write_temp;

namespace {

LabeledDataset tiny_sentiment() {
  LabeledDataset ds;
  ds.label_names = {"pos", "neg"};
  ds.records = {{"好", 0}, {"棒", 0}, {"好棒", 0},
                {"差", 1}, {"烂", 1}, {"差烂", 1}};
  return ds;
}

void check_normalized(const Prediction& p) {
  double sum = 0.0;
  for (double v : p.probs) {
    CHECK(v >= 0.0);
    sum += v;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
}

}  // namespace

TEST_CASE("load_tsv: labels, comments, paired fields, errors") {
  auto path = write_temp(
      "ds.tsv", "# comment\npos\t好东西\nneg\t太差了\npos\t前提\t假设\n");
  LabeledDataset ds = LabeledDataset::load_tsv(path);
  REQUIRE(ds.records.size() == 3);
  CHECK(ds.label_names == std::vector<std::string>{"pos", "neg"});
  CHECK(ds.records[0] == std::pair<std::string, int>{"好东西", 0});
  CHECK(ds.records[1].second == 1);
  // extra tab-separated fields joined with the separator token
  CHECK(ds.records[2].first == "前提|假设");

  CHECK_THROWS_AS(LabeledDataset::load_tsv(write_temp("bad1.tsv", "no_tab\n")),
                  std::runtime_error);
  CHECK_THROWS_AS(LabeledDataset::load_tsv(write_temp("bad2.tsv", "pos\t\n")),
                  std::runtime_error);
}

TEST_CASE("predict: zero weights give uniform; unknown text is bias-only") {
  auto m = LinearTextModel::from_parameters(
      {"a", "b", "c"}, {{"x", 0}}, {{0.0}, {0.0}, {0.0}}, {0.0, 0.0, 0.0});
  Prediction p = m.predict_one("x");
  check_normalized(p);
  for (double v : p.probs) CHECK(v == doctest::Approx(1.0 / 3));

  auto m2 = LinearTextModel::from_parameters(
      {"a", "b"}, {{"x", 0}}, {{5.0}, {-5.0}}, {std::log(3.0), 0.0});
  // no known n-grams: softmax(bias) = (3/4, 1/4)
  Prediction q = m2.predict_one("ZZ");
  CHECK(q.probs[0] == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(q.probs[1] == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("predict: hand-computed softmax on hand-set weights") {
  // vocab: unigrams a,b and bigram ab; text "ab" -> counts a:1, b:1, ab:1
  auto m = LinearTextModel::from_parameters(
      {"y0", "y1"}, {{"a", 0}, {"b", 1}, {"ab", 2}},
      {{1.0, 0.5, 0.25}, {0.0, 0.0, 0.0}}, {0.1, -0.1});
  Prediction p = m.predict_one("ab");
  double z0 = 1.0 + 0.5 + 0.25 + 0.1, z1 = -0.1;
  double e0 = std::exp(z0), e1 = std::exp(z1);
  CHECK(p.probs[0] == doctest::Approx(e0 / (e0 + e1)).epsilon(1e-12));
  CHECK(p.probs[1] == doctest::Approx(e1 / (e0 + e1)).epsilon(1e-12));
  check_normalized(p);
}

TEST_CASE("argmax ties break toward the smallest index") {
  Prediction p{{0.25, 0.25, 0.5}};
  CHECK(p.argmax() == 2);
  Prediction tie{{0.5, 0.5}};
  CHECK(tie.argmax() == 0);
}

TEST_CASE("train: separable data reaches 100% training accuracy") {
  LabeledDataset ds = tiny_sentiment();
  LinearTextModel m = train(ds, TrainConfig{0.5, 200, 1e-4, 0, 1});
  for (const auto& [text, label] : ds.records)
    CHECK(m.predict_one(text).argmax() == static_cast<std::size_t>(label));
}

TEST_CASE("train: duplicated dataset yields the same model") {
  LabeledDataset ds = tiny_sentiment();
  LabeledDataset doubled = ds;
  for (const auto& rec : ds.records) doubled.records.push_back(rec);
  TrainConfig cfg{0.3, 50, 1e-4, 0, 1};
  LinearTextModel a = train(ds, cfg);
  LinearTextModel b = train(doubled, cfg);
  CHECK(max_param_delta(a, b) < 1e-8);  // full-batch mean-gradient invariance
}

TEST_CASE("train: fixed seed is byte-identical; single label rejected") {
  LabeledDataset ds = tiny_sentiment();
  TrainConfig cfg{0.3, 30, 1e-4, 7, 1};
  CHECK(train(ds, cfg).to_json_string() == train(ds, cfg).to_json_string());

  LabeledDataset mono;
  mono.label_names = {"only"};
  mono.records = {{"好", 0}, {"差", 0}};
  CHECK_THROWS_AS(train(mono, cfg), std::runtime_error);
}

TEST_CASE("train: per-epoch loss non-increasing") {
  LabeledDataset ds = tiny_sentiment();
  double prev = std::numeric_limits<double>::infinity();
  for (int epochs = 0; epochs <= 12; ++epochs) {
    LinearTextModel m = train(ds, TrainConfig{0.1, epochs, 1e-4, 0, 1});
    double loss = dataset_loss(m, ds, 1e-4);
    CHECK(loss <= prev + 1e-9);
    prev = loss;
  }
}

TEST_CASE("fine_tune: empty adversarial set returns the model unchanged") {
  LabeledDataset ds = tiny_sentiment();
  LinearTextModel m = train(ds, TrainConfig{0.3, 30, 1e-4, 0, 1});
  LabeledDataset none;
  none.label_names = ds.label_names;
  LinearTextModel same = fine_tune(m, none, ds, TrainConfig{0.3, 3, 1e-4, 0, 1});
  CHECK(max_param_delta(m, same) == 0.0);
}

TEST_CASE("fine_tune: loss on adversarial examples decreases") {
  LabeledDataset ds = tiny_sentiment();
  LinearTextModel m = train(ds, TrainConfig{0.3, 30, 1e-4, 0, 1});
  LabeledDataset adv;
  adv.label_names = ds.label_names;
  adv.records = {{"好棒", 0}, {"差烂", 1}};  // copies of training points
  LinearTextModel ft = fine_tune(m, adv, ds, TrainConfig{0.3, 3, 1e-4, 0, 1});
  CHECK(dataset_loss(ft, adv, 0.0) < dataset_loss(m, adv, 0.0));
}

TEST_CASE("fine_tune: unseen adversarial n-grams become trainable") {
  LabeledDataset ds = tiny_sentiment();
  LinearTextModel m = train(ds, TrainConfig{0.3, 30, 1e-4, 0, 1});
  LabeledDataset adv;
  adv.label_names = ds.label_names;
  adv.records = {{"毫", 0}};  // character absent from the training corpus
  LinearTextModel ft = fine_tune(m, adv, ds, TrainConfig{0.3, 10, 1e-4, 0, 1});
  CHECK(ft.num_features() > m.num_features());
  CHECK(ft.predict_one("毫").probs[0] > m.predict_one("毫").probs[0]);
}

TEST_CASE("gradient_check against finite differences") {
  LabeledDataset ds = tiny_sentiment();
  LinearTextModel m = train(ds, TrainConfig{0.3, 5, 1e-4, 0, 1});
  CHECK(gradient_check(m, ds, 1e-5) < 1e-4);
  // also with nonzero weights from a different training run; keep the
  // model modest — near a minimum the tiny gradients make the
  // finite-difference quotient ill-conditioned
  LinearTextModel m2 = train(ds, TrainConfig{0.2, 8, 1e-3, 0, 1});
  CHECK(gradient_check(m2, ds, 1e-5, 3) < 1e-4);
}

TEST_CASE("persistence: JSON round trip preserves predictions") {
  LabeledDataset ds = tiny_sentiment();
  LinearTextModel m = train(ds, TrainConfig{0.3, 30, 1e-4, 0, 1});
  auto path = write_temp("model.json", "");
  m.save_json(path);
  LinearTextModel back = LinearTextModel::load_json(path);
  CHECK(max_param_delta(m, back) == 0.0);
  for (const auto& [text, label] : ds.records) {
    auto a = m.predict_one(text), b = back.predict_one(text);
    REQUIRE(a.probs.size() == b.probs.size());
    for (std::size_t i = 0; i < a.probs.size(); ++i)
      CHECK(a.probs[i] == b.probs[i]);
  }
  CHECK(back.label_names() == m.label_names());
}

TEST_CASE("every prediction output is normalized") {
  LabeledDataset ds = tiny_sentiment();
  LinearTextModel m = train(ds, TrainConfig{0.5, 40, 1e-4, 0, 1});
  for (const auto& text : {"好", "差", "完全陌生的字符串", "", "abc123"})
    check_normalized(m.predict_one(text));
}
