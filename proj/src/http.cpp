// HTTP adapters (clients) and the local stub server for the /predict,
// /fill and /encode JSON contracts.

#include <atomic>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "zhattack/stubs.hpp"

namespace zhattack {

using nlohmann::json;

// ---------------------------------------------------------------------------
// clients

struct HttpVictim::Impl {
  httplib::Client cli;
  std::vector<std::string> labels;
  std::mutex mu;

  Impl(const std::string& host, int port) : cli(host, port) {
    cli.set_read_timeout(30, 0);
  }
};

HttpVictim::HttpVictim(const std::string& host, int port)
    : impl_(std::make_unique<Impl>(host, port)) {}

HttpVictim::~HttpVictim() = default;

std::vector<Prediction> HttpVictim::predict(
    const std::vector<std::string>& texts) {
  json body = {{"texts", texts}};
  auto res = impl_->cli.Post("/predict", body.dump(), "application/json");
  if (!res || res->status != 200)
    throw std::runtime_error("victim adapter: transport failure on /predict");
  json j;
  std::vector<Prediction> out;
  try {
    j = json::parse(res->body);
    for (const auto& row : j.at("probs"))
      out.push_back(Prediction{row.get<std::vector<double>>()});
    auto labels = j.at("labels").get<std::vector<std::string>>();
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->labels = std::move(labels);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("victim adapter: malformed response: ") +
                             e.what());
  }
  for (const auto& p : out)
    if (p.probs.size() != impl_->labels.size())
      throw std::runtime_error("victim adapter: label-count mismatch");
  return out;
}

std::size_t HttpVictim::num_labels() const {
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    if (!impl_->labels.empty()) return impl_->labels.size();
  }
  // label names ride on every /predict response; probe with an empty batch
  const_cast<HttpVictim*>(this)->predict({});
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->labels.size();
}

struct HttpMlmClient::Impl {
  httplib::Client cli;
  Impl(const std::string& host, int port) : cli(host, port) {
    cli.set_read_timeout(30, 0);
  }
};

HttpMlmClient::HttpMlmClient(const std::string& host, int port)
    : impl_(std::make_unique<Impl>(host, port)) {}

HttpMlmClient::~HttpMlmClient() = default;

std::vector<MlmFill> HttpMlmClient::fill(const std::string& masked_text, int k) {
  json body = {{"text", masked_text}, {"k", k}};
  auto res = impl_->cli.Post("/fill", body.dump(), "application/json");
  if (!res || res->status != 200)
    throw MlmUnavailableError("MLM client: transport failure on /fill");
  std::vector<MlmFill> fills;
  try {
    json j = json::parse(res->body);
    for (const auto& f : j.at("fills"))
      fills.push_back({f.at("token").get<std::string>(),
                       f.at("prob").get<double>()});
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("MLM client: malformed response: ") +
                             e.what());
  }
  return fills;
}

struct HttpEncoderClient::Impl {
  httplib::Client cli;
  Impl(const std::string& host, int port) : cli(host, port) {
    cli.set_read_timeout(30, 0);
  }
};

HttpEncoderClient::HttpEncoderClient(const std::string& host, int port)
    : impl_(std::make_unique<Impl>(host, port)) {}

HttpEncoderClient::~HttpEncoderClient() = default;

std::vector<double> HttpEncoderClient::encode(const std::string& text) {
  json body = {{"texts", json::array({text})}};
  auto res = impl_->cli.Post("/encode", body.dump(), "application/json");
  if (!res || res->status != 200)
    throw std::runtime_error("encoder client: transport failure on /encode");
  try {
    json j = json::parse(res->body);
    return j.at("vectors").at(0).get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("encoder client: malformed response: ") +
                             e.what());
  }
}

// ---------------------------------------------------------------------------
// stub server

struct StubServer::Impl {
  httplib::Server svr;
  std::thread thread;
  const LinearTextModel* model = nullptr;
  MlmClient* mlm = nullptr;
  SentenceEncoder* encoder = nullptr;
  std::mutex mlm_mu, enc_mu;
};

StubServer::StubServer() : impl_(std::make_unique<Impl>()) {}

StubServer::~StubServer() { stop(); }

void StubServer::serve_victim(const LinearTextModel* model) {
  impl_->model = model;
  impl_->svr.Post("/predict", [this](const httplib::Request& req,
                                     httplib::Response& res) {
    try {
      json j = json::parse(req.body);
      auto texts = j.at("texts").get<std::vector<std::string>>();
      auto preds = impl_->model->predict(texts);
      json probs = json::array();
      for (const auto& p : preds) probs.push_back(p.probs);
      json out = {{"probs", probs}, {"labels", impl_->model->label_names()}};
      res.set_content(out.dump(), "application/json");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
    }
  });
}

void StubServer::serve_mlm(MlmClient* mlm) {
  impl_->mlm = mlm;
  impl_->svr.Post("/fill", [this](const httplib::Request& req,
                                  httplib::Response& res) {
    try {
      json j = json::parse(req.body);
      std::string text = j.at("text").get<std::string>();
      int k = j.at("k").get<int>();
      std::vector<MlmFill> fills;
      {
        std::lock_guard<std::mutex> lock(impl_->mlm_mu);
        fills = impl_->mlm->fill(text, k);
      }
      json out_fills = json::array();
      for (const auto& f : fills)
        out_fills.push_back({{"token", f.token}, {"prob", f.prob}});
      res.set_content(json{{"fills", out_fills}}.dump(), "application/json");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
    }
  });
}

void StubServer::serve_encoder(SentenceEncoder* encoder) {
  impl_->encoder = encoder;
  impl_->svr.Post("/encode", [this](const httplib::Request& req,
                                    httplib::Response& res) {
    try {
      json j = json::parse(req.body);
      auto texts = j.at("texts").get<std::vector<std::string>>();
      json vectors = json::array();
      {
        std::lock_guard<std::mutex> lock(impl_->enc_mu);
        for (const auto& t : texts) vectors.push_back(impl_->encoder->encode(t));
      }
      res.set_content(json{{"vectors", vectors}}.dump(), "application/json");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
    }
  });
}

int StubServer::start() {
  int port = impl_->svr.bind_to_any_port("127.0.0.1");
  if (port <= 0) throw std::runtime_error("stub server: bind failed");
  impl_->thread = std::thread([this] { impl_->svr.listen_after_bind(); });
  impl_->svr.wait_until_ready();
  return port;
}

void StubServer::run(int port) {
  if (port == 0) {
    port = impl_->svr.bind_to_any_port("127.0.0.1");
    if (port <= 0) throw std::runtime_error("stub server: bind failed");
    std::cout << "serving stubs on 127.0.0.1:" << port << std::endl;
    impl_->svr.listen_after_bind();
  } else {
    std::cout << "serving stubs on 127.0.0.1:" << port << std::endl;
    if (!impl_->svr.listen("127.0.0.1", port))
      throw std::runtime_error("stub server: listen failed");
  }
}

void StubServer::stop() {
  impl_->svr.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace zhattack
