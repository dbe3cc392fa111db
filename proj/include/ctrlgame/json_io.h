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

#ifndef CTRLGAME_JSON_IO_H_
#define CTRLGAME_JSON_IO_H_

#include <string>

#include "json.hpp"

#include "ctrlgame/model.h"

namespace ctrlgame {

inline constexpr int kSchemaVersion = 1;

// Document layout (keys in canonical order):
//
//   { "assets": [...], "budget": 15,
//     "controls": [{"cost": 5, "id": "SI-10", "name": "...",
//                   "payoff": [{"asset": "database", "label": "Medium",
//                               "objective": "C"}, ...]}],
//     "family": "SI-10 . opt[AC-3, AC-4, AC-6]",
//     "name": "...", "objectives": [...],
//     "profiles": [{"name": "scenario3",
//                   "objectives": [["user_interface.C"], ["user_interface.I"]]}],
//     "requirements": [{"antecedent": "AC-3", "consequent": "AC-6"}],
//     "scale": [{"label": "None", "value": 0}, ...],
//     "schema_version": 1 }
//
// A payoff entry carries exactly one of "label" or "value". Terms use the
// textual term syntax.
nlohmann::json ModelToJson(const ModelSpec& spec);

// Schema violations are reported with JSON-path locations; on success the
// model is also run through Validate.
LoadResult ModelFromJson(const nlohmann::json& doc);
LoadResult ModelFromJsonText(const std::string& text);

}  // namespace ctrlgame

#endif  // CTRLGAME_JSON_IO_H_
