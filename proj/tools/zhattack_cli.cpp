// Command-line front end: victim training, attack campaigns, the ablation
// pair, adversarial training, report recomputation, human-eval export and
// the local stub servers.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zhattack/runner.hpp"
#include "zhattack/stubs.hpp"

namespace fs = std::filesystem;
using namespace zhattack;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 0;
  std::string resources_dir = "data";
  std::string out = "out";
};

void require_file(const std::string& path) {
  if (!fs::exists(path)) {
    std::cerr << "error: missing file: " << path << "\n";
    std::exit(2);
  }
}

ResourceTables load_resources_or_die(const std::string& dir) {
  for (const char* name : {"lexicon.tsv", "pinyin.tsv", "components.tsv",
                           "sememes.tsv", "stopwords.tsv", "embeddings.tsv"})
    require_file(dir + "/" + name);
  return ResourceTables::load_dir(dir);
}

ConstraintConfig parse_constraints(const std::string& spec, double threshold) {
  ConstraintConfig c;
  c.use_stopword = c.use_repeat = c.use_similarity = false;
  c.similarity_threshold = threshold;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "stm") c.use_stopword = true;
    else if (item == "rm") c.use_repeat = true;
    else if (item == "muse") c.use_similarity = true;
    else if (item == "none" || item.empty()) continue;
    else throw CLI::ValidationError("--constraints", "unknown constraint '" + item + "'");
  }
  return c;
}

struct Backends {
  std::unique_ptr<Victim> victim;
  std::unique_ptr<MlmClient> mlm;
  std::unique_ptr<SentenceEncoder> encoder;
};

std::pair<std::string, int> parse_host_port(const std::string& url) {
  std::string rest = url;
  auto scheme = rest.find("://");
  if (scheme != std::string::npos) rest = rest.substr(scheme + 3);
  auto colon = rest.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("url", "expected host:port, got '" + url + "'");
  return {rest.substr(0, colon), std::stoi(rest.substr(colon + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word-substitution adversarial attacks on Chinese text classifiers"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "Global RNG seed");
  app.add_option("--resources-dir", g.resources_dir, "Directory with the TSV resource tables");
  app.add_option("--out", g.out, "Output directory");
  app.set_config("--config")->configurable(false);

  // shared attack options
  std::string dataset_path, model_path, transformation = "composite";
  std::string constraints_spec = "stm,rm,muse";
  double threshold = 0.9;
  std::size_t limit = 0, budget = 5000, workers = 1;
  bool strict_halt = false;
  std::string victim_url, mlm_url, encoder_url;

  auto add_attack_opts = [&](CLI::App* cmd) {
    cmd->add_option("--dataset", dataset_path, "TSV dataset: label<TAB>text")->required();
    cmd->add_option("--model", model_path, "Victim model JSON")->required();
    cmd->add_option("--transformation", transformation,
                    "hownet|mlm|homophone|morphonym|composite");
    cmd->add_option("--constraints", constraints_spec,
                    "Comma list of stm,rm,muse (or none)");
    cmd->add_option("--similarity-threshold", threshold, "MUSE cosine threshold");
    cmd->add_option("--limit", limit, "Number of seeds to attack (0 = all)");
    cmd->add_option("--query-budget", budget, "Victim query budget per seed");
    cmd->add_option("--workers", workers, "Parallel workers over seeds");
    cmd->add_flag("--strict-halt", strict_halt,
                  "End the whole search on an empty candidate set");
    cmd->add_option("--victim-url", victim_url, "Attack a remote victim (host:port)");
    cmd->add_option("--mlm-url", mlm_url, "Remote MLM fill endpoint (host:port)");
    cmd->add_option("--encoder-url", encoder_url, "Remote sentence encoder (host:port)");
  };

  // train-victim
  auto* cmd_train = app.add_subcommand("train-victim", "Train the built-in classifier");
  std::string train_dataset, train_out = "model.json";
  double lr = 0.1, l2 = 1e-4;
  int epochs = 30;
  cmd_train->add_option("--dataset", train_dataset)->required();
  cmd_train->add_option("--model-out", train_out, "Where to write the model JSON");
  cmd_train->add_option("--lr", lr);
  cmd_train->add_option("--epochs", epochs);
  cmd_train->add_option("--l2", l2);

  auto* cmd_attack = app.add_subcommand("attack", "Run an attack campaign");
  add_attack_opts(cmd_attack);

  auto* cmd_ablation = app.add_subcommand(
      "ablation", "Same campaign with and without the similarity constraint");
  add_attack_opts(cmd_ablation);

  auto* cmd_advtrain = app.add_subcommand("adv-train", "Adversarial-training pipeline");
  std::string at_train, at_eval;
  std::size_t n_attack = 200, n_eval = 200;
  int at_epochs = 3, at_clean_epochs = 1;
  double at_lr = 0.1;
  cmd_advtrain->add_option("--train", at_train, "Training TSV")->required();
  cmd_advtrain->add_option("--eval", at_eval, "Evaluation TSV")->required();
  cmd_advtrain->add_option("--n-attack", n_attack, "Train seeds to attack");
  cmd_advtrain->add_option("--n-eval", n_eval, "Eval seeds per campaign");
  cmd_advtrain->add_option("--lr", lr);
  cmd_advtrain->add_option("--epochs", epochs, "Base training epochs");
  cmd_advtrain->add_option("--l2", l2);
  cmd_advtrain->add_option("--at-epochs", at_epochs, "Fine-tuning epochs");
  cmd_advtrain->add_option("--at-lr", at_lr, "Fine-tuning learning rate");
  cmd_advtrain->add_option("--at-clean-epochs", at_clean_epochs);
  cmd_advtrain->add_option("--transformation", transformation);
  cmd_advtrain->add_option("--constraints", constraints_spec);
  cmd_advtrain->add_option("--similarity-threshold", threshold);
  cmd_advtrain->add_option("--query-budget", budget);
  cmd_advtrain->add_option("--workers", workers);

  auto* cmd_report = app.add_subcommand("report", "Recompute a campaign report from JSONL");
  std::string results_path, report_path;
  cmd_report->add_option("--results", results_path, "results.jsonl")->required();
  cmd_report->add_option("--report", report_path, "Original report.json (for the config echo)")
      ->required();

  auto* cmd_export = app.add_subcommand("export-eval", "Export successes for blind human scoring");
  std::size_t export_n = 30;
  cmd_export->add_option("--results", results_path, "results.jsonl")->required();
  cmd_export->add_option("-n,--count", export_n, "Examples to sample");

  auto* cmd_serve = app.add_subcommand("serve-stubs",
                                       "Serve local /predict, /fill and /encode stubs");
  int serve_port = 0;
  cmd_serve->add_option("--model", model_path, "Victim model JSON")->required();
  cmd_serve->add_option("--port", serve_port, "Port (0 = pick one)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_train->parsed()) {
      require_file(train_dataset);
      auto ds = LabeledDataset::load_tsv(train_dataset);
      TrainConfig tc{lr, epochs, l2, g.seed, 1};
      auto model = train(ds, tc);
      model.save_json(train_out);
      std::size_t correct = 0;
      auto preds = model.predict([&] {
        std::vector<std::string> t;
        for (const auto& [text, label] : ds.records) t.push_back(text);
        return t;
      }());
      for (std::size_t i = 0; i < ds.size(); ++i)
        if (static_cast<int>(preds[i].argmax()) == ds.records[i].second) ++correct;
      std::cout << "trained on " << ds.size() << " records, train accuracy "
                << (100.0 * correct / ds.size()) << "%, model -> " << train_out
                << "\n";
      return 0;
    }

    if (cmd_attack->parsed() || cmd_ablation->parsed() || cmd_advtrain->parsed()) {
      auto resources = load_resources_or_die(g.resources_dir);
      fs::create_directories(g.out);

      CampaignConfig cc;
      cc.attack.transform.kind = transform_kind_from_string(transformation);
      cc.attack.constraints = parse_constraints(constraints_spec, threshold);
      cc.attack.query_budget = budget;
      cc.attack.strict_algorithm1_halt = strict_halt;
      cc.attack.rng_seed = g.seed;
      cc.campaign_seed = g.seed;
      cc.limit = limit;
      cc.workers = workers;

      if (cmd_advtrain->parsed()) {
        require_file(at_train);
        require_file(at_eval);
        auto train_ds = LabeledDataset::load_tsv(at_train);
        auto eval_ds = LabeledDataset::load_tsv(at_eval);
        TrainConfig base_tc{lr, epochs, l2, g.seed, 1};
        TrainConfig ft_tc{at_lr, at_epochs, l2, g.seed, at_clean_epochs};
        StubMlmClient mlm(resources.lexicon, resources.embeddings);
        MeanEmbeddingEncoder encoder(resources.embeddings, resources.lexicon);
        auto result = adversarial_training_pipeline(
            train_ds, eval_ds, base_tc, ft_tc, cc, n_attack, n_eval, resources,
            &mlm, &encoder);
        result.base_model.save_json(g.out + "/model_base.json");
        result.hardened_model.save_json(g.out + "/model_hardened.json");
        const auto& rep = result.report;
        nlohmann::ordered_json j = {
            {"adversarial_examples", rep.adversarial_examples},
            {"no_adversarial_data", rep.no_adversarial_data},
            {"pre_success_rate",
             rep.pre.success_rate ? nlohmann::ordered_json(*rep.pre.success_rate)
                                  : nlohmann::ordered_json(nullptr)},
            {"post_success_rate",
             rep.post.success_rate ? nlohmann::ordered_json(*rep.post.success_rate)
                                   : nlohmann::ordered_json(nullptr)},
            {"delta_pct", rep.delta_pct ? nlohmann::ordered_json(*rep.delta_pct)
                                        : nlohmann::ordered_json(nullptr)}};
        std::ofstream(g.out + "/at_report.json") << j.dump(2) << "\n";
        std::cout << j.dump(2) << "\n";
        return rep.no_adversarial_data ? 3 : 0;
      }

      require_file(dataset_path);
      require_file(model_path);
      auto ds = LabeledDataset::load_tsv(dataset_path);

      Backends b;
      if (!victim_url.empty()) {
        auto [host, port] = parse_host_port(victim_url);
        b.victim = std::make_unique<HttpVictim>(host, port);
      } else {
        b.victim = std::make_unique<InProcessVictim>(
            LinearTextModel::load_json(model_path));
      }
      if (!mlm_url.empty()) {
        auto [host, port] = parse_host_port(mlm_url);
        b.mlm = std::make_unique<HttpMlmClient>(host, port);
      } else {
        b.mlm = std::make_unique<StubMlmClient>(resources.lexicon, resources.embeddings);
      }
      if (!encoder_url.empty()) {
        auto [host, port] = parse_host_port(encoder_url);
        b.encoder = std::make_unique<HttpEncoderClient>(host, port);
      } else {
        b.encoder = std::make_unique<MeanEmbeddingEncoder>(resources.embeddings,
                                                           resources.lexicon);
      }

      if (cmd_ablation->parsed()) {
        auto rep = ablation_pair(ds, *b.victim, cc, resources, b.mlm.get(),
                                 b.encoder.get());
        nlohmann::ordered_json j = {
            {"stm_rm", nlohmann::ordered_json::parse(report_to_json(rep.without_similarity))},
            {"stm_rm_muse", nlohmann::ordered_json::parse(report_to_json(rep.with_similarity))}};
        std::ofstream(g.out + "/ablation.json") << j.dump(2) << "\n";
        std::cout << j.dump(2) << "\n";
        return 0;
      }

      auto [rep, records] = run_campaign(ds, *b.victim, cc, resources,
                                         b.mlm.get(), b.encoder.get());
      write_results_jsonl(records, g.out + "/results.jsonl");
      write_report_json(rep, g.out + "/report.json");
      std::cout << report_to_json(rep) << "\n";
      return rep.aborted_error.empty() ? 0 : 1;
    }

    if (cmd_report->parsed()) {
      require_file(results_path);
      require_file(report_path);
      auto records = read_results_jsonl(results_path);
      auto original = read_report_json(report_path);
      auto rep = compute_report(records, original.config_echo);
      std::cout << report_to_json(rep) << "\n";
      return 0;
    }

    if (cmd_export->parsed()) {
      require_file(results_path);
      auto records = read_results_jsonl(results_path);
      fs::create_directories(g.out);
      std::string path = g.out + "/human_eval.tsv";
      std::size_t written =
          export_human_eval(records, export_n, g.seed, path, path + ".key");
      std::cout << "exported " << written << " examples -> " << path;
      if (written < export_n)
        std::cout << " (only " << written << " successes available)";
      std::cout << "\n";
      return 0;
    }

    if (cmd_serve->parsed()) {
      require_file(model_path);
      auto resources = load_resources_or_die(g.resources_dir);
      auto model = LinearTextModel::load_json(model_path);
      StubMlmClient mlm(resources.lexicon, resources.embeddings);
      MeanEmbeddingEncoder encoder(resources.embeddings, resources.lexicon);
      StubServer server;
      server.serve_victim(&model);
      server.serve_mlm(&mlm);
      server.serve_encoder(&encoder);
      server.run(serve_port);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
