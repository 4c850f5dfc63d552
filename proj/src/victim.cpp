#include "zhattack/victim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "zhattack/utf8.hpp"

namespace zhattack {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kModelFormatVersion = 1;

void softmax_inplace(std::vector<double>& logits) {
  double mx = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double& v : logits) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : logits) v /= sum;
}

// Char unigrams and bigrams of a text, in order of appearance.
std::vector<std::string> char_ngrams(const std::string& text) {
  std::u32string cps = utf8_decode(text);
  std::vector<std::string> out;
  out.reserve(cps.size() * 2);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    out.push_back(utf8_encode(cps[i]));
    if (i + 1 < cps.size())
      out.push_back(utf8_encode(std::u32string_view(cps).substr(i, 2)));
  }
  return out;
}

struct FeatRow {
  std::vector<std::pair<std::size_t, double>> feats;
  int label;
};

}  // namespace

std::size_t Prediction::argmax() const {
  return static_cast<std::size_t>(
      std::max_element(probs.begin(), probs.end()) - probs.begin());
}

LabeledDataset LabeledDataset::load_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  LabeledDataset ds;
  std::unordered_map<std::string, int> label_ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'label<TAB>text'");
    std::string label = line.substr(0, tab);
    // Paired tasks keep their extra fields joined by the separator token.
    std::string text = line.substr(tab + 1);
    std::replace(text.begin(), text.end(), '\t', '|');
    if (text.empty())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": empty text");
    auto [it, inserted] =
        label_ids.emplace(label, static_cast<int>(ds.label_names.size()));
    if (inserted) ds.label_names.push_back(label);
    ds.records.emplace_back(std::move(text), it->second);
  }
  return ds;
}

std::vector<std::pair<std::size_t, double>> LinearTextModel::featurize(
    const std::string& text) const {
  std::unordered_map<std::size_t, double> counts;
  for (const auto& g : char_ngrams(text)) {
    auto it = vocab_.find(g);
    if (it != vocab_.end()) counts[it->second] += 1.0;
  }
  std::vector<std::pair<std::size_t, double>> out(counts.begin(), counts.end());
  std::sort(out.begin(), out.end());
  return out;
}

Prediction LinearTextModel::predict_one(const std::string& text) const {
  if (label_names_.empty()) throw std::runtime_error("model not trained");
  std::vector<double> logits = bias_;
  for (const auto& [f, c] : featurize(text))
    for (std::size_t y = 0; y < weights_.size(); ++y)
      logits[y] += weights_[y][f] * c;
  softmax_inplace(logits);
  return Prediction{std::move(logits)};
}

std::vector<Prediction> LinearTextModel::predict(
    const std::vector<std::string>& texts) const {
  std::vector<Prediction> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(predict_one(t));
  return out;
}

LinearTextModel LinearTextModel::from_parameters(
    std::vector<std::string> label_names,
    std::unordered_map<std::string, std::size_t> vocab,
    std::vector<std::vector<double>> weights, std::vector<double> bias) {
  LinearTextModel m;
  m.label_names_ = std::move(label_names);
  m.vocab_ = std::move(vocab);
  m.weights_ = std::move(weights);
  m.bias_ = std::move(bias);
  if (m.weights_.size() != m.label_names_.size() ||
      m.bias_.size() != m.label_names_.size())
    throw std::invalid_argument("parameter shape mismatch");
  return m;
}

namespace {

std::vector<FeatRow> featurize_all(const LinearTextModel& model,
                                   const LabeledDataset& dataset) {
  std::vector<FeatRow> rows;
  rows.reserve(dataset.size());
  for (const auto& [text, label] : dataset.records)
    rows.push_back({model.featurize(text), label});
  return rows;
}

// One full-batch gradient step on mean cross-entropy + (l2/2)||W||^2.
// Bias is not regularized.
void gd_epoch(std::vector<std::vector<double>>& w, std::vector<double>& b,
              const std::vector<FeatRow>& rows, double lr, double l2) {
  const std::size_t L = w.size();
  const std::size_t F = L > 0 ? w[0].size() : 0;
  std::vector<std::vector<double>> gw(L, std::vector<double>(F, 0.0));
  std::vector<double> gb(L, 0.0);
  const double inv_n = rows.empty() ? 0.0 : 1.0 / static_cast<double>(rows.size());
  for (const auto& row : rows) {
    std::vector<double> logits = b;
    for (const auto& [f, c] : row.feats)
      for (std::size_t y = 0; y < L; ++y) logits[y] += w[y][f] * c;
    softmax_inplace(logits);
    for (std::size_t y = 0; y < L; ++y) {
      double err = (logits[y] - (static_cast<int>(y) == row.label ? 1.0 : 0.0)) * inv_n;
      gb[y] += err;
      for (const auto& [f, c] : row.feats) gw[y][f] += err * c;
    }
  }
  for (std::size_t y = 0; y < L; ++y) {
    b[y] -= lr * gb[y];
    for (std::size_t f = 0; f < F; ++f) w[y][f] -= lr * (gw[y][f] + l2 * w[y][f]);
  }
}

}  // namespace

LinearTextModel train(const LabeledDataset& dataset, const TrainConfig& config) {
  std::vector<bool> seen;
  for (const auto& [text, label] : dataset.records) {
    if (label < 0) throw std::invalid_argument("negative label");
    if (static_cast<std::size_t>(label) >= seen.size()) seen.resize(label + 1);
    seen[label] = true;
  }
  std::size_t distinct = std::count(seen.begin(), seen.end(), true);
  if (distinct < 2)
    throw std::runtime_error("training requires at least two distinct labels");

  LinearTextModel m;
  m.label_names_ = dataset.label_names;
  if (m.label_names_.size() < seen.size())
    throw std::runtime_error("label index exceeds label_names");
  m.train_config_ = config;
  for (const auto& [text, label] : dataset.records)
    for (const auto& g : char_ngrams(text))
      m.vocab_.emplace(g, m.vocab_.size());
  m.weights_.assign(m.label_names_.size(),
                    std::vector<double>(m.vocab_.size(), 0.0));
  m.bias_.assign(m.label_names_.size(), 0.0);

  auto rows = featurize_all(m, dataset);
  for (int e = 0; e < config.epochs; ++e)
    gd_epoch(m.weights_, m.bias_, rows, config.learning_rate, config.l2);
  return m;
}

LinearTextModel fine_tune(const LinearTextModel& model,
                          const LabeledDataset& adv_examples,
                          const LabeledDataset& clean_examples,
                          const TrainConfig& config) {
  if (adv_examples.records.empty()) return model;

  LinearTextModel m = model;
  // Adversarial texts carry n-grams the base vocab has never seen; extend
  // the vocab with zero-weight columns so they become trainable.
  for (const auto& [text, label] : adv_examples.records)
    for (const auto& g : char_ngrams(text))
      if (m.vocab_.emplace(g, m.vocab_.size()).second)
        for (auto& row : m.weights_) row.push_back(0.0);

  auto clean_rows = featurize_all(m, clean_examples);
  int clean_epochs = std::min(config.clean_epochs, config.epochs);
  for (int e = 0; e < clean_epochs; ++e)
    gd_epoch(m.weights_, m.bias_, clean_rows, config.learning_rate, config.l2);

  LabeledDataset uni = clean_examples;
  for (const auto& rec : adv_examples.records) uni.records.push_back(rec);
  auto union_rows = featurize_all(m, uni);
  for (int e = clean_epochs; e < config.epochs; ++e)
    gd_epoch(m.weights_, m.bias_, union_rows, config.learning_rate, config.l2);
  return m;
}

double dataset_loss(const LinearTextModel& model, const LabeledDataset& dataset,
                    double l2) {
  auto rows = featurize_all(model, dataset);
  double loss = 0.0;
  for (const auto& row : rows) {
    std::vector<double> logits = model.bias_;
    for (const auto& [f, c] : row.feats)
      for (std::size_t y = 0; y < model.weights_.size(); ++y)
        logits[y] += model.weights_[y][f] * c;
    softmax_inplace(logits);
    loss -= std::log(std::max(logits[row.label], 1e-300));
  }
  if (!rows.empty()) loss /= static_cast<double>(rows.size());
  double penalty = 0.0;
  for (const auto& wy : model.weights_)
    for (double v : wy) penalty += v * v;
  return loss + 0.5 * l2 * penalty;
}

double gradient_check(const LinearTextModel& model, const LabeledDataset& dataset,
                      double epsilon, std::uint64_t seed) {
  const std::size_t L = model.weights_.size();
  const std::size_t F = L > 0 ? model.weights_[0].size() : 0;
  const double l2 = model.train_config_.l2;

  // Analytic gradient via one zero-lr "epoch" trick is opaque; recompute
  // directly here with the same formulas the trainer uses.
  auto rows = featurize_all(model, dataset);
  std::vector<std::vector<double>> gw(L, std::vector<double>(F, 0.0));
  std::vector<double> gb(L, 0.0);
  const double inv_n = rows.empty() ? 0.0 : 1.0 / static_cast<double>(rows.size());
  for (const auto& row : rows) {
    std::vector<double> logits = model.bias_;
    for (const auto& [f, c] : row.feats)
      for (std::size_t y = 0; y < L; ++y) logits[y] += model.weights_[y][f] * c;
    softmax_inplace(logits);
    for (std::size_t y = 0; y < L; ++y) {
      double err = (logits[y] - (static_cast<int>(y) == row.label ? 1.0 : 0.0)) * inv_n;
      gb[y] += err;
      for (const auto& [f, c] : row.feats) gw[y][f] += err * c;
    }
  }
  for (std::size_t y = 0; y < L; ++y)
    for (std::size_t f = 0; f < F; ++f) gw[y][f] += l2 * model.weights_[y][f];

  std::mt19937_64 rng(seed);
  const std::size_t n_params = L * (F + 1);
  const std::size_t n_checks = std::min<std::size_t>(50, n_params);
  double max_rel = 0.0;
  LinearTextModel probe = model;
  for (std::size_t k = 0; k < n_checks; ++k) {
    std::size_t idx = rng() % n_params;
    std::size_t y = idx / (F + 1);
    std::size_t f = idx % (F + 1);
    double* param = (f == F) ? &probe.bias_[y] : &probe.weights_[y][f];
    double analytic = (f == F) ? gb[y] : gw[y][f];
    double saved = *param;
    *param = saved + epsilon;
    double lp = dataset_loss(probe, dataset, l2);
    *param = saved - epsilon;
    double lm = dataset_loss(probe, dataset, l2);
    *param = saved;
    double numeric = (lp - lm) / (2.0 * epsilon);
    // The floor absorbs round-off noise in (lp - lm) on parameters whose
    // true gradient is ~0; genuine gradient bugs sit far above it.
    double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
    max_rel = std::max(max_rel, std::abs(analytic - numeric) / denom);
  }
  return max_rel;
}

double max_param_delta(const LinearTextModel& a, const LinearTextModel& b) {
  if (a.weights_.size() != b.weights_.size() || a.bias_.size() != b.bias_.size())
    return std::numeric_limits<double>::infinity();
  double mx = 0.0;
  for (std::size_t y = 0; y < a.weights_.size(); ++y) {
    if (a.weights_[y].size() != b.weights_[y].size())
      return std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < a.weights_[y].size(); ++f)
      mx = std::max(mx, std::abs(a.weights_[y][f] - b.weights_[y][f]));
    mx = std::max(mx, std::abs(a.bias_[y] - b.bias_[y]));
  }
  return mx;
}

std::string LinearTextModel::to_json_string() const {
  ordered_json j;
  j["format_version"] = kModelFormatVersion;
  j["label_names"] = label_names_;
  // vocab serialized as a dense array ordered by feature index
  std::vector<std::string> grams(vocab_.size());
  for (const auto& [g, idx] : vocab_) grams[idx] = g;
  j["vocab"] = grams;
  j["weights"] = weights_;
  j["bias"] = bias_;
  j["train_config"] = {{"learning_rate", train_config_.learning_rate},
                       {"epochs", train_config_.epochs},
                       {"l2", train_config_.l2},
                       {"seed", train_config_.seed},
                       {"clean_epochs", train_config_.clean_epochs}};
  return j.dump();
}

LinearTextModel LinearTextModel::from_json_string(const std::string& s) {
  ordered_json j = ordered_json::parse(s);
  if (j.at("format_version").get<int>() != kModelFormatVersion)
    throw std::runtime_error("unsupported model format version");
  LinearTextModel m;
  m.label_names_ = j.at("label_names").get<std::vector<std::string>>();
  auto grams = j.at("vocab").get<std::vector<std::string>>();
  for (std::size_t i = 0; i < grams.size(); ++i) m.vocab_.emplace(grams[i], i);
  m.weights_ = j.at("weights").get<std::vector<std::vector<double>>>();
  m.bias_ = j.at("bias").get<std::vector<double>>();
  const auto& tc = j.at("train_config");
  m.train_config_.learning_rate = tc.at("learning_rate").get<double>();
  m.train_config_.epochs = tc.at("epochs").get<int>();
  m.train_config_.l2 = tc.at("l2").get<double>();
  m.train_config_.seed = tc.at("seed").get<std::uint64_t>();
  m.train_config_.clean_epochs = tc.at("clean_epochs").get<int>();
  return m;
}

void LinearTextModel::save_json(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json_string() << "\n";
}

LinearTextModel LinearTextModel::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string s((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
  return from_json_string(s);
}

}  // namespace zhattack
