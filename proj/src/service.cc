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

#include "ctrlgame/service.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "httplib.h"

#include "ctrlgame/error.h"
#include "ctrlgame/json_io.h"
#include "ctrlgame/render.h"

namespace ctrlgame {

using nlohmann::json;

namespace {

constexpr const char* kPlaceholderPage = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>ctrlgame</title></head>
<body>
<h1>ctrlgame</h1>
<p>The workbench bundle is not installed. Start the server with
<code>--static-dir</code> pointing at a built workbench, or use the JSON API
under <code>/api/</code>.</p>
</body></html>
)";

ApiResponse Fail(int status, const std::string& code, const std::string& message,
                 const std::vector<Diagnostic>& diags = {}) {
  return {status, render::ErrorPayload(code, message, diags)};
}

std::optional<double> OptionalNumber(const json& body, const char* key) {
  if (!body.contains(key) || body[key].is_null()) return std::nullopt;
  if (!body[key].is_number()) throw ModelError("type", std::string("'") + key + "' expected number");
  return body[key].get<double>();
}

std::optional<std::string> OptionalString(const json& body, const char* key) {
  if (!body.contains(key) || body[key].is_null()) return std::nullopt;
  if (!body[key].is_string()) throw ModelError("type", std::string("'") + key + "' expected string");
  return body[key].get<std::string>();
}

}  // namespace

int DefaultPort() {
  if (const char* env = std::getenv("CTRLGAME_PORT")) {
    char* end = nullptr;
    const long port = std::strtol(env, &end, 10);
    if (end && *end == '\0' && port > 0 && port < 65536) return static_cast<int>(port);
  }
  return 8080;
}

Service::Service(ModelSpec model, ServiceOptions options)
    : model_(std::make_shared<const ModelSpec>(std::move(model))),
      options_(std::move(options)) {}

Service::~Service() { Stop(); }

std::shared_ptr<const ModelSpec> Service::snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return model_;
}

void Service::Persist(const ModelSpec& model) const {
  if (!options_.model_dir) return;
  namespace fs = std::filesystem;
  const fs::path dir(*options_.model_dir);
  fs::create_directories(dir);
  const fs::path tmp = dir / "model.json.tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << render::DumpJson(ModelToJson(model));
    if (!out) throw Error("io-error", "cannot write " + tmp.string());
  }
  fs::rename(tmp, dir / "model.json");
}

ApiResponse Service::PutModel(const std::string& body, const std::string& content_type) {
  const auto first = body.find_first_not_of(" \t\r\n");
  const bool json_body = content_type.find("json") != std::string::npos ||
                         (first != std::string::npos && body[first] == '{');
  LoadResult loaded = LoadModelText(body, json_body);
  if (!loaded.ok()) {
    std::string code = "invalid-model";
    std::string message = "model rejected";
    for (const auto& d : loaded.diagnostics) {
      if (d.severity == Severity::kError) {
        code = d.code;
        message = d.message;
        break;
      }
    }
    return Fail(400, code, message, loaded.diagnostics);
  }
  auto next = std::make_shared<const ModelSpec>(std::move(*loaded.model));
  try {
    Persist(*next);
  } catch (const std::exception& e) {
    return Fail(500, "io-error", e.what());
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    model_ = next;
  }
  json out = {{"schema_version", kSchemaVersion}, {"model", ModelToJson(*next)}};
  json warnings = json::array();
  for (const auto& d : loaded.diagnostics) warnings.push_back(render::DiagnosticJson(d));
  out["diagnostics"] = std::move(warnings);
  return {200, std::move(out)};
}

ApiResponse Service::Handle(const std::string& method, const std::string& path,
                            const std::string& body, const std::string& content_type) {
  const auto model = snapshot();
  if (path == "/api/model") {
    if (method == "GET") {
      return {200, {{"schema_version", kSchemaVersion}, {"model", ModelToJson(*model)}}};
    }
    if (method == "PUT") return PutModel(body, content_type);
    return Fail(405, "method-not-allowed", method + " not allowed on " + path);
  }

  static const std::set<std::string> kPostRoutes = {"/api/expand", "/api/matrix", "/api/play",
                                                     "/api/sweep", "/api/sensitivity",
                                                     "/api/residual"};
  if (!kPostRoutes.count(path)) return Fail(404, "not-found", "no route " + path);
  if (method != "POST") return Fail(405, "method-not-allowed", method + " not allowed on " + path);

  json request = json::object();
  if (body.find_first_not_of(" \t\r\n") != std::string::npos) {
    try {
      request = json::parse(body);
    } catch (const json::parse_error& e) {
      return Fail(400, "syntax", e.what());
    }
    if (!request.is_object()) return Fail(400, "type", "request body must be a JSON object");
  }

  try {
    render::Overrides o;
    o.budget = OptionalNumber(request, "budget");
    o.profile = OptionalString(request, "profile");
    if (path == "/api/expand") return {200, render::ExpandPayload(*model, o)};
    if (path == "/api/matrix") return {200, render::MatrixPayload(*model, o)};
    if (path == "/api/play") return {200, render::PlayPayload(*model, o)};
    if (path == "/api/sweep") {
      if (!request.contains("budgets") || !request["budgets"].is_array()) {
        return Fail(400, "missing-budgets", "'budgets' must be an array of numbers");
      }
      std::vector<double> budgets;
      for (const auto& b : request["budgets"]) {
        if (!b.is_number()) return Fail(400, "type", "'budgets' expected numbers");
        budgets.push_back(b.get<double>());
      }
      return {200, render::SweepPayload(*model, o, budgets)};
    }
    if (path == "/api/sensitivity") {
      const auto delta = OptionalNumber(request, "delta");
      if (!delta) return Fail(400, "missing-delta", "'delta' is required");
      bool include_zero = false;
      if (request.contains("include_zero_entries")) {
        if (!request["include_zero_entries"].is_boolean()) {
          return Fail(400, "type", "'include_zero_entries' expected boolean");
        }
        include_zero = request["include_zero_entries"].get<bool>();
      }
      return {200, render::SensitivityPayload(*model, o, *delta, include_zero)};
    }
    // /api/residual
    const auto combination = OptionalString(request, "combination");
    const auto threshold = OptionalNumber(request, "threshold");
    if (!combination || !threshold) {
      return Fail(400, "missing-field", "'combination' and 'threshold' are required");
    }
    return {200, render::ResidualPayload(*model, o, *combination, *threshold)};
  } catch (const NoStrategiesError& e) {
    return Fail(409, "no-strategies", e.what());
  } catch (const Error& e) {
    return Fail(400, e.code(), e.what());
  }
}

void Service::InstallRoutes() {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse r = Handle(req.method, req.path, req.body,
                                 req.get_header_value("Content-Type"));
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server_->Get("/api/model", forward);
  server_->Put("/api/model", forward);
  server_->Post(R"(/api/.*)", forward);
  if (options_.static_dir) {
    server_->set_mount_point("/", *options_.static_dir);
  } else {
    server_->Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderPage, "text/html");
    });
  }
}

bool Service::Listen(const std::string& host, int port) {
  server_ = std::make_unique<httplib::Server>();
  InstallRoutes();
  return server_->listen(host, port);
}

int Service::ListenInBackground(const std::string& host) {
  server_ = std::make_unique<httplib::Server>();
  InstallRoutes();
  const int port = server_->bind_to_any_port(host);
  if (port < 0) return -1;
  background_ = std::make_unique<std::thread>([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port;
}

void Service::Stop() {
  if (server_) server_->stop();
  if (background_ && background_->joinable()) background_->join();
  background_.reset();
}

}  // namespace ctrlgame
