#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace zhattack {

// Probability distribution over labels.
struct Prediction {
  std::vector<double> probs;

  // Argmax with ties broken toward the smallest label index.
  std::size_t argmax() const;
};

struct LabeledDataset {
  std::vector<std::pair<std::string, int>> records;  // (text, label index)
  std::vector<std::string> label_names;

  std::size_t size() const { return records.size(); }
  static LabeledDataset load_tsv(const std::string& path);
};

struct TrainConfig {
  double learning_rate = 0.1;
  int epochs = 30;
  double l2 = 1e-4;
  std::uint64_t seed = 0;
  int clean_epochs = 1;  // fine-tuning: epochs on clean data before the union
};

// Char n-gram (n = 1, 2) multinomial logistic regression.
class LinearTextModel {
 public:
  LinearTextModel() = default;

  std::vector<Prediction> predict(const std::vector<std::string>& texts) const;
  Prediction predict_one(const std::string& text) const;

  std::size_t num_labels() const { return label_names_.size(); }
  std::size_t num_features() const { return vocab_.size(); }
  const std::vector<std::string>& label_names() const { return label_names_; }

  // n-gram count features in vocab index space; unknown n-grams dropped.
  std::vector<std::pair<std::size_t, double>> featurize(
      const std::string& text) const;

  void save_json(const std::string& path) const;
  static LinearTextModel load_json(const std::string& path);

  std::string to_json_string() const;
  static LinearTextModel from_json_string(const std::string& s);

  friend LinearTextModel train(const LabeledDataset& dataset,
                               const TrainConfig& config);
  friend LinearTextModel fine_tune(const LinearTextModel& model,
                                   const LabeledDataset& adv_examples,
                                   const LabeledDataset& clean_examples,
                                   const TrainConfig& config);
  friend double gradient_check(const LinearTextModel& model,
                               const LabeledDataset& dataset, double epsilon,
                               std::uint64_t seed);
  friend double dataset_loss(const LinearTextModel& model,
                             const LabeledDataset& dataset, double l2);
  friend double max_param_delta(const LinearTextModel& a,
                                const LinearTextModel& b);

  // Direct parameter access for hand-built test fixtures.
  static LinearTextModel from_parameters(
      std::vector<std::string> label_names,
      std::unordered_map<std::string, std::size_t> vocab,
      std::vector<std::vector<double>> weights, std::vector<double> bias);

 private:
  std::vector<std::string> label_names_;
  std::unordered_map<std::string, std::size_t> vocab_;
  std::vector<std::vector<double>> weights_;  // labels x features
  std::vector<double> bias_;
  TrainConfig train_config_;
};

// Full-batch gradient descent on cross-entropy with L2. Throws on a
// dataset with fewer than two distinct labels.
LinearTextModel train(const LabeledDataset& dataset, const TrainConfig& config);

// Clean epochs on clean_examples first, then the remaining epochs on the
// clean+adversarial union. Empty adv_examples returns the model unchanged.
LinearTextModel fine_tune(const LinearTextModel& model,
                          const LabeledDataset& adv_examples,
                          const LabeledDataset& clean_examples,
                          const TrainConfig& config);

// Max relative error between analytic and central finite-difference
// gradients over at most 50 randomly chosen parameters.
double gradient_check(const LinearTextModel& model,
                      const LabeledDataset& dataset, double epsilon,
                      std::uint64_t seed = 0);

// Mean cross-entropy plus L2 penalty; exposed for trainer tests.
double dataset_loss(const LinearTextModel& model, const LabeledDataset& dataset,
                    double l2);

double max_param_delta(const LinearTextModel& a, const LinearTextModel& b);

// The model-under-attack contract: batched probabilistic prediction.
class Victim {
 public:
  virtual ~Victim() = default;
  virtual std::vector<Prediction> predict(
      const std::vector<std::string>& texts) = 0;
  virtual std::size_t num_labels() const = 0;

  Prediction predict_one(const std::string& text) {
    return predict({text}).front();
  }
};

class InProcessVictim : public Victim {
 public:
  explicit InProcessVictim(LinearTextModel model) : model_(std::move(model)) {}

  std::vector<Prediction> predict(
      const std::vector<std::string>& texts) override {
    return model_.predict(texts);
  }
  std::size_t num_labels() const override { return model_.num_labels(); }
  const LinearTextModel& model() const { return model_; }

 private:
  LinearTextModel model_;
};

// Client for the POST /predict JSON contract.
class HttpVictim : public Victim {
 public:
  HttpVictim(const std::string& host, int port);
  ~HttpVictim() override;

  std::vector<Prediction> predict(
      const std::vector<std::string>& texts) override;
  std::size_t num_labels() const override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace zhattack
