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

#ifndef CTRLGAME_RENDER_H_
#define CTRLGAME_RENDER_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ctrlgame/model.h"
#include "ctrlgame/whatif.h"

// Payload builders shared by the CLI and the HTTP service. Each operation
// produces one JSON payload; the table and CSV views are formatted from that
// payload, so every output format shows the same numbers.
namespace ctrlgame::render {

enum class Format { kTable, kCsv, kJson };

// Overrides accepted by every read operation.
struct Overrides {
  std::optional<double> budget;
  std::optional<std::string> profile;
};

// Throws ModelError("negative-budget") for a bad override.
Budget EffectiveBudget(const ModelSpec& spec, const Overrides& o);
// Throws ModelError("missing-profile") / ModelError("unknown-profile").
const AttackerProfile& RequireProfile(const ModelSpec& spec, const Overrides& o);

nlohmann::json DiagnosticJson(const Diagnostic& d);
nlohmann::json ValidatePayload(const std::string& source, const std::vector<Diagnostic>& diags);
nlohmann::json ErrorPayload(const std::string& code, const std::string& message,
                            const std::vector<Diagnostic>& diags = {});

nlohmann::json ExpandPayload(const ModelSpec& spec, const Overrides& o);
// These throw NoStrategiesError when nothing fits the budget.
nlohmann::json MatrixPayload(const ModelSpec& spec, const Overrides& o);
nlohmann::json PlayPayload(const ModelSpec& spec, const Overrides& o);
nlohmann::json SensitivityPayload(const ModelSpec& spec, const Overrides& o, double delta,
                                  bool include_zero_entries = false);
nlohmann::json ResidualPayload(const ModelSpec& spec, const Overrides& o,
                               const std::string& combination_id, double threshold);
// Per-budget failures stay inline; never throws NoStrategiesError.
nlohmann::json SweepPayload(const ModelSpec& spec, const Overrides& o,
                            const std::vector<double>& budgets);

// Table or CSV view chosen by the payload's "command" field; JSON is the
// payload itself, indented.
std::string FormatPayload(const nlohmann::json& payload, Format format);

std::string DumpJson(const nlohmann::json& payload);

}  // namespace ctrlgame::render

#endif  // CTRLGAME_RENDER_H_
