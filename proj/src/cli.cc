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

#include "ctrlgame/cli.h"

#include <filesystem>
#include <map>
#include <ostream>

#include "CLI11.hpp"

#include "ctrlgame/dsl.h"
#include "ctrlgame/error.h"
#include "ctrlgame/json_io.h"
#include "ctrlgame/render.h"
#include "ctrlgame/service.h"

namespace ctrlgame {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitUsage = 2;

void PrintDiagnostics(const std::string& file, const std::vector<Diagnostic>& diags,
                      std::ostream& err) {
  for (const auto& d : diags) err << file << ":" << d.to_string() << "\n";
}

struct Options {
  std::string file;
  std::optional<double> budget;
  std::optional<std::string> profile;
  std::string format = "table";
  std::vector<double> budgets;
  double delta = 0.05;
  bool include_zero = false;
  std::string combination;
  double threshold = 0.9;
  std::string to = "json";
  std::optional<std::string> model_dir;
  std::optional<std::string> static_dir;
  std::string host = "127.0.0.1";
  int port = 0;
};

render::Format ParseFormat(const std::string& f) {
  if (f == "csv") return render::Format::kCsv;
  if (f == "json") return render::Format::kJson;
  return render::Format::kTable;
}

int Serve(const Options& o, std::ostream& out, std::ostream& err) {
  std::string source = o.file;
  if (source.empty()) {
    if (!o.model_dir) {
      err << "serve: need a model file or --model-dir\n";
      return kExitUsage;
    }
    source = (std::filesystem::path(*o.model_dir) / "model.json").string();
  }
  LoadResult loaded = LoadModelFile(source);
  PrintDiagnostics(source, loaded.diagnostics, err);
  if (!loaded.ok()) return kExitDiagnostics;
  Service service(std::move(*loaded.model), {o.model_dir, o.static_dir});
  const int port = o.port > 0 ? o.port : DefaultPort();
  out << "serving " << source << " on http://" << o.host << ":" << port << "\n" << std::flush;
  if (!service.Listen(o.host, port)) {
    err << "serve: cannot listen on " << o.host << ":" << port << "\n";
    return kExitDiagnostics;
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Game-theoretic security control selection"};
  app.name("ctrlgame");
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
  };
  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "Model file (.scm DSL or .json)")->required();
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", o.budget, "Override the model budget");
  };
  auto add_profile = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--profile", o.profile, "Attacker profile name");
    if (required) opt->required();
  };

  auto* validate = app.add_subcommand("validate", "Check a model and report diagnostics");
  add_file(validate);
  add_format(validate);

  auto* expand = app.add_subcommand("expand", "List combinations with costs and validity");
  add_file(expand);
  add_budget(expand);
  add_format(expand);

  auto* matrix = app.add_subcommand("matrix", "Print the game matrix");
  add_file(matrix);
  add_budget(matrix);
  add_format(matrix);

  auto* play = app.add_subcommand("play", "Play an attacker profile");
  add_file(play);
  add_profile(play, true);
  add_budget(play);
  add_format(play);

  auto* sweep = app.add_subcommand("sweep", "Play a profile at several budgets");
  add_file(sweep);
  add_profile(sweep, true);
  sweep->add_option("--budgets", o.budgets, "Comma-separated budgets")
      ->required()
      ->delimiter(',');
  add_format(sweep);

  auto* sensitivity = app.add_subcommand("sensitivity", "Perturb effectiveness entries and replay");
  add_file(sensitivity);
  add_profile(sensitivity, true);
  sensitivity->add_option("--delta", o.delta, "Perturbation size in (0,1]")->required();
  sensitivity->add_flag("--include-zero", o.include_zero, "Also perturb zero entries");
  add_budget(sensitivity);
  add_format(sensitivity);

  auto* residual = app.add_subcommand("residual", "Cells left weakly protected by a combination");
  add_file(residual);
  residual->add_option("--combination", o.combination, "Row id, e.g. \"Combo 5\"")->required();
  residual->add_option("--threshold", o.threshold, "Effectiveness threshold in [0,1]");
  add_budget(residual);
  add_format(residual);

  auto* convert = app.add_subcommand("convert", "Rewrite a model as JSON or DSL");
  add_file(convert);
  convert->add_option("--to", o.to, "Target format")->check(CLI::IsMember({"json", "dsl"}));

  auto* serve = app.add_subcommand("serve", "Serve the JSON API and the workbench");
  serve->add_option("file", o.file, "Model file");
  serve->add_option("--model-dir", o.model_dir, "Directory holding model.json; PUTs persist here");
  serve->add_option("--static-dir", o.static_dir, "Workbench bundle to serve at /");
  serve->add_option("--port", o.port, "Port (default $CTRLGAME_PORT or 8080)");
  serve->add_option("--host", o.host, "Bind address");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  if (serve->parsed()) return Serve(o, out, err);

  LoadResult loaded = LoadModelFile(o.file);
  const auto format = ParseFormat(o.format);

  if (validate->parsed()) {
    const auto payload = render::ValidatePayload(o.file, loaded.diagnostics);
    if (format == render::Format::kTable) {
      PrintDiagnostics(o.file, loaded.diagnostics, err);
      out << (loaded.ok() ? "ok\n" : "invalid\n");
    } else {
      out << render::FormatPayload(payload, format);
    }
    return loaded.ok() ? kExitOk : kExitDiagnostics;
  }

  PrintDiagnostics(o.file, loaded.diagnostics, err);
  if (!loaded.ok()) return kExitDiagnostics;
  const ModelSpec& spec = *loaded.model;

  if (convert->parsed()) {
    out << (o.to == "json" ? render::DumpJson(ModelToJson(spec)) : PrintModel(spec));
    return kExitOk;
  }

  render::Overrides overrides{o.budget, o.profile};
  try {
    nlohmann::json payload;
    if (expand->parsed()) {
      payload = render::ExpandPayload(spec, overrides);
    } else if (matrix->parsed()) {
      payload = render::MatrixPayload(spec, overrides);
    } else if (play->parsed()) {
      payload = render::PlayPayload(spec, overrides);
    } else if (sweep->parsed()) {
      payload = render::SweepPayload(spec, overrides, o.budgets);
    } else if (sensitivity->parsed()) {
      payload = render::SensitivityPayload(spec, overrides, o.delta, o.include_zero);
    } else if (residual->parsed()) {
      payload = render::ResidualPayload(spec, overrides, o.combination, o.threshold);
    }
    out << render::FormatPayload(payload, format);
  } catch (const Error& e) {
    err << o.file << ": error: " << e.what() << " [" << e.code() << "]\n";
    return kExitDiagnostics;
  }
  return kExitOk;
}

}  // namespace ctrlgame
