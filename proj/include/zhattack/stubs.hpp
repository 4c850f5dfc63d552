#pragma once

#include <memory>
#include <string>

#include "zhattack/constraints.hpp"
#include "zhattack/transforms.hpp"
#include "zhattack/victim.hpp"

namespace zhattack {

// Local HTTP server exposing any of the three wire contracts:
//   POST /predict  {"texts":[...]}        -> {"probs":[[...],...],"labels":[...]}
//   POST /fill     {"text":"...","k":n}   -> {"fills":[{"token":..,"prob":..},..]}
//   POST /encode   {"texts":[...]}        -> {"vectors":[[...],...]}
// Backends are borrowed and must outlive the server.
class StubServer {
 public:
  StubServer();
  ~StubServer();

  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  void serve_victim(const LinearTextModel* model);
  void serve_mlm(MlmClient* mlm);
  void serve_encoder(SentenceEncoder* encoder);

  // Binds 127.0.0.1 on an OS-chosen port, serves on a background thread,
  // returns the port.
  int start();

  // Blocking variant for the CLI; port 0 picks one and prints it.
  void run(int port);

  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace zhattack
