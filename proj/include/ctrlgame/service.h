// Copyright 2026 The ctrlgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CTRLGAME_SERVICE_H_
#define CTRLGAME_SERVICE_H_

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "json.hpp"

#include "ctrlgame/model.h"

namespace httplib {
class Server;
}

namespace ctrlgame {

struct ServiceOptions {
  // When set, PUT /api/model writes the accepted model to <dir>/model.json.
  std::optional<std::string> model_dir;
  // Workbench bundle served under "/"; a placeholder page when unset.
  std::optional<std::string> static_dir;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

// Single-model JSON service. Every request works on an immutable snapshot of
// the current model; PUT swaps the snapshot atomically.
//
//   GET  /api/model        current model document
//   PUT  /api/model        replace (JSON document, or DSL text)
//   POST /api/expand       {budget?}
//   POST /api/matrix       {budget?}
//   POST /api/play         {profile, budget?}
//   POST /api/sweep        {profile, budgets: [..]}
//   POST /api/sensitivity  {profile, delta, budget?, include_zero_entries?}
//   POST /api/residual     {combination, threshold, budget?}
//
// 400 carries diagnostics, 409 means the strategy space is empty.
class Service {
 public:
  explicit Service(ModelSpec model, ServiceOptions options = {});
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Transport-independent request handling; the HTTP routes forward here.
  ApiResponse Handle(const std::string& method, const std::string& path,
                     const std::string& body, const std::string& content_type = "");

  std::shared_ptr<const ModelSpec> snapshot() const;

  // Blocking. Returns false if the socket could not be bound.
  bool Listen(const std::string& host, int port);
  // Binds an ephemeral port and serves on a background thread; returns the port.
  int ListenInBackground(const std::string& host);
  void Stop();

 private:
  ApiResponse PutModel(const std::string& body, const std::string& content_type);
  void Persist(const ModelSpec& model) const;
  void InstallRoutes();

  mutable std::mutex mu_;
  std::shared_ptr<const ModelSpec> model_;
  ServiceOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::unique_ptr<std::thread> background_;
};

// Port from CTRLGAME_PORT, else 8080.
int DefaultPort();

}  // namespace ctrlgame

#endif  // CTRLGAME_SERVICE_H_
